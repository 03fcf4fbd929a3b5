//! Per-word display schedules.
//!
//! Each Word/Number token gets one frame. Its duration starts from the base
//! frame time `60000 / effective_wpm` and is scaled by the length modifier,
//! the punctuation pause and, last, the unfamiliar-word multiplier. All
//! modifiers compose multiplicatively.

use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::familiarity::{FamiliarityLexicon, LexiconName};
use crate::gradient::{assign_colors, wrap_lines, GradientConfig, Rgb};
use crate::ingest::{normalize_word, TokenKind, TokenizedDocument};
use crate::readability::ReadabilityReport;

pub const SCHEDULE_VERSION: u32 = 1;
pub const MIN_WPM: f64 = 60.0;
pub const MAX_WPM: f64 = 1500.0;
pub const MIN_MULTIPLIER: f64 = 1.0;
pub const MAX_MULTIPLIER: f64 = 4.0;

const CLAUSE_MARKS: &[&str] = &[",", ";", ":"];

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ScheduleError {
    #[error("base_wpm {0} is outside [{MIN_WPM}, {MAX_WPM}]")]
    WpmOutOfRange(f64),
    #[error("unfamiliar_multiplier {0} is outside [{MIN_MULTIPLIER}, {MAX_MULTIPLIER}]")]
    MultiplierOutOfRange(f64),
    #[error("reader_age {0} must be a positive number of years")]
    InvalidAge(f64),
    #[error("words per minute must be positive, got {0}")]
    NonPositiveWpm(f64),
    #[error("cannot compute a recognition point for an empty word")]
    EmptyWord,
    #[error("document has no words to schedule")]
    InsufficientText,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ReaderProfile {
    pub base_wpm: f64,
    pub reader_age: Option<f64>,
    pub unfamiliar_multiplier: f64,
    pub lexicon: LexiconName,
    pub length_modifier_enabled: bool,
    pub punctuation_pauses_enabled: bool,
}

impl Default for ReaderProfile {
    fn default() -> Self {
        ReaderProfile {
            base_wpm: 300.0,
            reader_age: None,
            unfamiliar_multiplier: 1.5,
            lexicon: LexiconName::DaleChall,
            length_modifier_enabled: true,
            punctuation_pauses_enabled: true,
        }
    }
}

impl ReaderProfile {
    pub fn validate(&self) -> Result<(), ScheduleError> {
        if !(MIN_WPM..=MAX_WPM).contains(&self.base_wpm) {
            return Err(ScheduleError::WpmOutOfRange(self.base_wpm));
        }
        if !(MIN_MULTIPLIER..=MAX_MULTIPLIER).contains(&self.unfamiliar_multiplier) {
            return Err(ScheduleError::MultiplierOutOfRange(self.unfamiliar_multiplier));
        }
        if let Some(age) = self.reader_age {
            if !(age.is_finite() && age > 0.0) {
                return Err(ScheduleError::InvalidAge(age));
            }
        }
        Ok(())
    }
}

/// Tunable constants of the timing model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimingModel {
    /// Words longer than this many characters are slowed down.
    pub length_threshold: usize,
    pub length_step: f64,
    pub length_cap: f64,
    pub sentence_pause: f64,
    pub clause_pause: f64,
    pub age_factor_min: f64,
    pub age_factor_max: f64,
}

impl Default for TimingModel {
    fn default() -> Self {
        TimingModel {
            length_threshold: 8,
            length_step: 0.1,
            length_cap: 2.0,
            sentence_pause: 2.0,
            clause_pause: 1.5,
            age_factor_min: 0.5,
            age_factor_max: 2.0,
        }
    }
}

impl TimingModel {
    pub fn length_factor(&self, char_len: usize) -> f64 {
        if char_len > self.length_threshold {
            (1.0 + self.length_step * (char_len - self.length_threshold) as f64).min(self.length_cap)
        } else {
            1.0
        }
    }
}

pub fn base_duration_ms(effective_wpm: f64) -> Result<f64, ScheduleError> {
    if effective_wpm > 0.0 && effective_wpm.is_finite() {
        Ok(60_000.0 / effective_wpm)
    } else {
        Err(ScheduleError::NonPositiveWpm(effective_wpm))
    }
}

pub fn age_factor(profile: &ReaderProfile, estimated_text_age: f64) -> f64 {
    age_factor_with(profile, estimated_text_age, &TimingModel::default())
}

pub fn age_factor_with(profile: &ReaderProfile, estimated_text_age: f64, timing: &TimingModel) -> f64 {
    match profile.reader_age {
        None => 1.0,
        Some(age) => (age / estimated_text_age).clamp(timing.age_factor_min, timing.age_factor_max),
    }
}

/// Optimal recognition point: the character index the reader should fixate.
pub fn orp_index(word: &str) -> Result<usize, ScheduleError> {
    Ok(match word.chars().count() {
        0 => return Err(ScheduleError::EmptyWord),
        1 => 0,
        2..=5 => 1,
        6..=9 => 2,
        10..=13 => 3,
        _ => 4,
    })
}

/// What the duration of one word depends on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WordCues {
    pub char_len: usize,
    pub unfamiliar: bool,
    /// Last word before a sentence terminator.
    pub sentence_final: bool,
    /// Followed by `,`, `;` or `:`.
    pub clause_break: bool,
}

/// Derives the cues for the word at `token_index`.
pub fn word_cues(doc: &TokenizedDocument, token_index: usize, lexicon: &FamiliarityLexicon) -> WordCues {
    let tokens = doc.tokens();
    let token = &tokens[token_index];
    let unfamiliar = token.kind == TokenKind::Number || !lexicon.is_familiar(&normalize_word(&token.text));
    let mut sentence_final = false;
    let mut clause_break = false;
    for next in tokens[token_index + 1..].iter().take_while(|t| !t.is_word_like()) {
        if next.kind == TokenKind::Punctuation {
            sentence_final |= next.sentence_final;
            clause_break |= CLAUSE_MARKS.contains(&next.text.as_str());
        }
    }
    WordCues {
        char_len: token.char_len(),
        unfamiliar,
        sentence_final,
        clause_break,
    }
}

pub fn word_duration(cues: &WordCues, base_ms: f64, profile: &ReaderProfile) -> f64 {
    word_duration_with(cues, base_ms, profile, &TimingModel::default())
}

pub fn word_duration_with(cues: &WordCues, base_ms: f64, profile: &ReaderProfile, timing: &TimingModel) -> f64 {
    let mut d = base_ms;
    if profile.length_modifier_enabled {
        d *= timing.length_factor(cues.char_len);
    }
    if profile.punctuation_pauses_enabled {
        if cues.sentence_final {
            d *= timing.sentence_pause;
        }
        if cues.clause_break {
            d *= timing.clause_pause;
        }
    }
    // applied last so a multiplier change rescales the duration exactly
    if cues.unfamiliar {
        d *= profile.unfamiliar_multiplier;
    }
    d
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScheduleEntry {
    pub token_index: usize,
    pub text: String,
    pub duration_ms: f64,
    pub orp_index: usize,
    pub unfamiliar: bool,
    pub color: Option<Rgb>,
}

impl Serialize for ScheduleEntry {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let fields = if self.color.is_some() { 6 } else { 5 };
        let mut s = serializer.serialize_struct("ScheduleEntry", fields)?;
        s.serialize_field("i", &self.token_index)?;
        s.serialize_field("text", &self.text)?;
        s.serialize_field("ms", &self.duration_ms)?;
        s.serialize_field("orp", &self.orp_index)?;
        s.serialize_field("unfamiliar", &self.unfamiliar)?;
        if let Some(color) = &self.color {
            s.serialize_field("color", color)?;
        }
        s.end()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DisplaySchedule {
    pub entries: Vec<ScheduleEntry>,
    pub profile: ReaderProfile,
    pub effective_wpm: f64,
    pub total_ms: f64,
}

impl Serialize for DisplaySchedule {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("DisplaySchedule", 4)?;
        s.serialize_field("version", &SCHEDULE_VERSION)?;
        s.serialize_field("effective_wpm", &self.effective_wpm)?;
        s.serialize_field("total_ms", &self.total_ms)?;
        s.serialize_field("entries", &self.entries)?;
        s.end()
    }
}

impl DisplaySchedule {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("schedule serialization is infallible")
    }

    /// Presented words per second over the whole schedule.
    pub fn words_per_second(&self) -> f64 {
        self.entries.len() as f64 / (self.total_ms / 1000.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ScheduleOptions {
    pub timing: TimingModel,
    /// Colors frames with the paragraph gradient when set.
    pub gradient: Option<GradientConfig>,
}

impl ScheduleOptions {
    pub fn colored() -> Self {
        ScheduleOptions {
            timing: TimingModel::default(),
            gradient: Some(GradientConfig::default()),
        }
    }
}

/// Builds the schedule with default timing and the default paragraph gradient.
pub fn build_schedule(
    doc: &TokenizedDocument,
    report: &ReadabilityReport,
    profile: &ReaderProfile,
    lexicon: &FamiliarityLexicon,
) -> Result<DisplaySchedule, ScheduleError> {
    build_schedule_with(doc, report, profile, lexicon, &ScheduleOptions::colored())
}

pub fn build_schedule_with(
    doc: &TokenizedDocument,
    report: &ReadabilityReport,
    profile: &ReaderProfile,
    lexicon: &FamiliarityLexicon,
    options: &ScheduleOptions,
) -> Result<DisplaySchedule, ScheduleError> {
    profile.validate()?;
    let timing = &options.timing;
    let effective_wpm = profile.base_wpm * age_factor_with(profile, report.estimated_age, timing);
    let base_ms = base_duration_ms(effective_wpm)?;
    let colors = options
        .gradient
        .map(|g| assign_colors(&wrap_lines(doc, g.line_width_cpl), &g));

    let mut entries = Vec::new();
    for (ordinal, (token_index, token)) in doc.words().enumerate() {
        let cues = word_cues(doc, token_index, lexicon);
        entries.push(ScheduleEntry {
            token_index,
            text: token.text.clone(),
            duration_ms: word_duration_with(&cues, base_ms, profile, timing),
            orp_index: orp_index(&token.text)?,
            unfamiliar: cues.unfamiliar,
            color: colors.as_ref().map(|c| c[ordinal]),
        });
    }
    if entries.is_empty() {
        return Err(ScheduleError::InsufficientText);
    }
    let total_ms = entries.iter().map(|e| e.duration_ms).sum();
    Ok(DisplaySchedule {
        entries,
        profile: *profile,
        effective_wpm,
        total_ms,
    })
}
