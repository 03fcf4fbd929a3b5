//! Line-wrapped two-color gradients for the paragraph view.
//!
//! Words are wrapped greedily at a character width and each line is shaded
//! from one endpoint color to the other. In serpentine mode every line starts
//! with the color the previous line ended on, so the eye can follow the color
//! across a line break.

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::ingest::TokenizedDocument;

pub const MIN_WIDTH_CPL: usize = 20;
pub const MAX_WIDTH_CPL: usize = 120;
pub const DEFAULT_WIDTH_CPL: usize = 55;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rgb(pub u8, pub u8, pub u8);

impl Rgb {
    pub fn to_hex(self) -> String {
        format!("#{:02x}{:02x}{:02x}", self.0, self.1, self.2)
    }

    /// Exact component-wise interpolation at `step / steps`, rounding halves up.
    pub fn lerp(self, other: Rgb, step: usize, steps: usize) -> Rgb {
        if steps == 0 {
            return self;
        }
        let den = steps as i64;
        let k = step as i64;
        let mix = |a: u8, b: u8| -> u8 {
            let (a, b) = (i64::from(a), i64::from(b));
            let num = a * den + (b - a) * k;
            (2 * num + den).div_euclid(2 * den) as u8
        };
        Rgb(mix(self.0, other.0), mix(self.1, other.1), mix(self.2, other.2))
    }
}

impl fmt::Display for Rgb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GradientError {
    #[error("invalid color {0:?}: expected #rrggbb")]
    InvalidColor(String),
    #[error("line width {0} is outside [{MIN_WIDTH_CPL}, {MAX_WIDTH_CPL}]")]
    WidthOutOfRange(usize),
}

impl FromStr for Rgb {
    type Err = GradientError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || GradientError::InvalidColor(s.to_owned());
        let hex = s.strip_prefix('#').ok_or_else(bad)?;
        if hex.len() != 6 || !hex.bytes().all(|b| b.is_ascii_hexdigit()) {
            return Err(bad());
        }
        let part = |i: usize| u8::from_str_radix(&hex[i..i + 2], 16).map_err(|_| bad());
        Ok(Rgb(part(0)?, part(2)?, part(4)?))
    }
}

impl Serialize for Rgb {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_hex())
    }
}

impl<'de> Deserialize<'de> for Rgb {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GradientConfig {
    pub line_width_cpl: usize,
    pub color_a: Rgb,
    pub color_b: Rgb,
    pub serpentine: bool,
}

impl Default for GradientConfig {
    fn default() -> Self {
        GradientConfig {
            line_width_cpl: DEFAULT_WIDTH_CPL,
            color_a: Rgb(0x00, 0x42, 0x9d),
            color_b: Rgb(0xd1, 0x49, 0x5b),
            serpentine: true,
        }
    }
}

impl GradientConfig {
    pub fn with_width(self, line_width_cpl: usize) -> Result<Self, GradientError> {
        let config = GradientConfig {
            line_width_cpl,
            ..self
        };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<(), GradientError> {
        if (MIN_WIDTH_CPL..=MAX_WIDTH_CPL).contains(&self.line_width_cpl) {
            Ok(())
        } else {
            Err(GradientError::WidthOutOfRange(self.line_width_cpl))
        }
    }
}

/// Greedy wrap over word lengths (in characters). A word joins the current
/// line when `line + 1 + word <= width`; a word wider than the line sits alone.
pub fn wrap_lengths(lengths: &[usize], width: usize) -> Vec<Range<usize>> {
    let mut lines = Vec::new();
    let mut start = 0;
    let mut used = 0;
    for (i, &len) in lengths.iter().enumerate() {
        if i > start && used + 1 + len > width {
            lines.push(start..i);
            start = i;
            used = 0;
        }
        used = if i == start { len } else { used + 1 + len };
    }
    if start < lengths.len() {
        lines.push(start..lengths.len());
    }
    lines
}

/// Wraps the document's Word/Number tokens; ranges index the word sequence.
pub fn wrap_lines(doc: &TokenizedDocument, width_cpl: usize) -> Vec<Range<usize>> {
    let lengths: Vec<usize> = doc.words().map(|(_, t)| t.char_len()).collect();
    wrap_lengths(&lengths, width_cpl)
}

/// One color per word, in word order.
pub fn assign_colors(lines: &[Range<usize>], config: &GradientConfig) -> Vec<Rgb> {
    let mut colors = Vec::with_capacity(lines.last().map_or(0, |l| l.end));
    let mut forward = true;
    for line in lines {
        let (from, to) = if forward {
            (config.color_a, config.color_b)
        } else {
            (config.color_b, config.color_a)
        };
        let steps = line.len().saturating_sub(1);
        colors.extend((0..line.len()).map(|k| from.lerp(to, k, steps)));
        // a one-word line ends where it started, so the direction carries over
        if config.serpentine && line.len() > 1 {
            forward = !forward;
        }
    }
    colors
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradientWord {
    /// Index of the word's token in the document.
    pub i: usize,
    pub text: String,
    pub color: Rgb,
}

/// Paragraph-view payload: wrapped lines (half-open word ranges) and colored words.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradientView {
    pub width: usize,
    pub serpentine: bool,
    #[serde(serialize_with = "ranges_as_pairs")]
    pub lines: Vec<Range<usize>>,
    pub words: Vec<GradientWord>,
}

fn ranges_as_pairs<S: Serializer>(ranges: &[Range<usize>], serializer: S) -> Result<S::Ok, S::Error> {
    serializer.collect_seq(ranges.iter().map(|r| [r.start, r.end]))
}

pub fn gradient_view(doc: &TokenizedDocument, config: &GradientConfig) -> GradientView {
    let lines = wrap_lines(doc, config.line_width_cpl);
    let colors = assign_colors(&lines, config);
    let words = doc
        .words()
        .zip(colors)
        .map(|((i, t), color)| GradientWord {
            i,
            text: t.text.clone(),
            color,
        })
        .collect();
    GradientView {
        width: config.line_width_cpl,
        serpentine: config.serpentine,
        lines,
        words,
    }
}
