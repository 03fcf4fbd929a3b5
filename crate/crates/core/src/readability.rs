//! Readability formulas and their consensus grade.
//!
//! Every formula is a pure function of [`TextStatistics`] (plus the unfamiliar
//! word fraction for the two list-based formulas). Grade-bearing scores are
//! clamped to [`GRADE_MIN`, `GRADE_MAX`]; raw scores are reported unclamped.

use std::collections::BTreeMap;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::ingest::{count_syllables, TextStatistics};

pub const GRADE_MIN: f64 = 0.0;
pub const GRADE_MAX: f64 = 22.0;
/// Reader age is grade plus the age at which US schooling starts.
pub const SCHOOL_ENTRY_AGE: f64 = 5.0;
/// SMOG was normed on 30-sentence samples.
pub const SMOG_MIN_SENTENCES: usize = 30;
/// Difficult-word share above which Dale–Chall adds its adjustment.
pub const DALE_CHALL_THRESHOLD: f64 = 0.05;
pub const DALE_CHALL_ADJUSTMENT: f64 = 3.6365;

/// Revised (1974) Spache coefficients.
pub mod spache {
    pub const SENTENCE_LENGTH: f64 = 0.121;
    pub const UNFAMILIAR_PERCENT: f64 = 0.082;
    pub const CONSTANT: f64 = 0.659;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    Ari,
    FleschReadingEase,
    FleschKincaidGrade,
    GunningFog,
    Smog,
    ColemanLiau,
    DaleChall,
    Spache,
}

impl Metric {
    pub const ALL: [Metric; 8] = [
        Metric::Ari,
        Metric::FleschReadingEase,
        Metric::FleschKincaidGrade,
        Metric::GunningFog,
        Metric::Smog,
        Metric::ColemanLiau,
        Metric::DaleChall,
        Metric::Spache,
    ];

    /// Metrics whose grade feeds the consensus. Reading Ease is an ease
    /// score, so its band grade is reported but never averaged in.
    pub fn in_consensus(self) -> bool {
        self != Metric::FleschReadingEase
    }

    pub fn key(self) -> &'static str {
        match self {
            Metric::Ari => "ari",
            Metric::FleschReadingEase => "flesch_reading_ease",
            Metric::FleschKincaidGrade => "flesch_kincaid_grade",
            Metric::GunningFog => "gunning_fog",
            Metric::Smog => "smog",
            Metric::ColemanLiau => "coleman_liau",
            Metric::DaleChall => "dale_chall",
            Metric::Spache => "spache",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, thiserror::Error)]
pub enum ReadabilityError {
    #[error("not enough text: need at least one word and one sentence")]
    InsufficientText,
    #[error("fraction {0} is outside [0, 1]")]
    FractionOutOfRange(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricScore {
    pub metric: Metric,
    pub raw_score: f64,
    pub grade_level: Option<f64>,
    pub reliable: bool,
}

impl Serialize for MetricScore {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("MetricScore", 3)?;
        s.serialize_field("raw", &self.raw_score)?;
        s.serialize_field("grade", &self.grade_level)?;
        s.serialize_field("reliable", &self.reliable)?;
        s.end()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReadabilityReport {
    pub scores: BTreeMap<Metric, MetricScore>,
    pub consensus_grade: f64,
    pub estimated_age: f64,
    pub difficult_word_fraction: f64,
}

impl ReadabilityReport {
    pub fn score(&self, metric: Metric) -> Option<&MetricScore> {
        self.scores.get(&metric)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serialization is infallible")
    }
}

pub fn clamp_grade(raw: f64) -> f64 {
    raw.clamp(GRADE_MIN, GRADE_MAX)
}

fn ratios(stats: &TextStatistics) -> Result<(f64, f64), ReadabilityError> {
    if stats.word_count == 0 || stats.sentence_count == 0 {
        return Err(ReadabilityError::InsufficientText);
    }
    Ok((stats.word_count as f64, stats.sentence_count as f64))
}

fn check_fraction(f: f64) -> Result<f64, ReadabilityError> {
    if (0.0..=1.0).contains(&f) {
        Ok(f)
    } else {
        Err(ReadabilityError::FractionOutOfRange(f))
    }
}

fn graded(metric: Metric, raw: f64) -> MetricScore {
    MetricScore {
        metric,
        raw_score: raw,
        grade_level: Some(clamp_grade(raw)),
        reliable: true,
    }
}

pub fn score_ari(stats: &TextStatistics) -> Result<MetricScore, ReadabilityError> {
    let (words, sentences) = ratios(stats)?;
    let raw = 4.71 * (stats.char_count as f64 / words) + 0.5 * (words / sentences) - 21.43;
    Ok(graded(Metric::Ari, raw))
}

/// Reading Ease and Kincaid Grade, in that order.
pub fn score_flesch(stats: &TextStatistics) -> Result<(MetricScore, MetricScore), ReadabilityError> {
    let (words, sentences) = ratios(stats)?;
    let wps = words / sentences;
    let spw = stats.syllable_count as f64 / words;
    let ease = 206.835 - 1.015 * wps - 84.6 * spw;
    let kincaid = 0.39 * wps + 11.8 * spw - 15.59;
    let ease_score = MetricScore {
        metric: Metric::FleschReadingEase,
        raw_score: ease,
        grade_level: Some(reading_ease_band(ease)),
        reliable: true,
    };
    Ok((ease_score, graded(Metric::FleschKincaidGrade, kincaid)))
}

/// Report-only grade for a Reading Ease score.
pub fn reading_ease_band(ease: f64) -> f64 {
    match ease {
        e if e >= 90.0 => 5.0,
        e if e >= 80.0 => 6.0,
        e if e >= 70.0 => 7.0,
        e if e >= 60.0 => 8.5,
        e if e >= 50.0 => 11.0,
        e if e >= 30.0 => 14.0,
        _ => 17.0,
    }
}

pub fn score_fog(stats: &TextStatistics) -> Result<MetricScore, ReadabilityError> {
    let (words, sentences) = ratios(stats)?;
    let raw = 0.4 * (words / sentences + 100.0 * (stats.complex_word_count as f64 / words));
    Ok(graded(Metric::GunningFog, raw))
}

/// Gunning Fog complexity: three or more syllables once one of `-es`, `-ed`
/// or `-ing` is removed. Capitalized words that do not start a sentence are
/// taken as proper nouns; hyphenated compounds never count.
pub fn is_complex_word(word: &str, starts_sentence: bool) -> bool {
    if word.contains(['-', '\u{2010}', '\u{2011}']) {
        return false;
    }
    if !starts_sentence && word.chars().next().is_some_and(char::is_uppercase) {
        return false;
    }
    let lower = word.to_lowercase();
    let stem = ["ing", "es", "ed"]
        .iter()
        .find_map(|s| lower.strip_suffix(s))
        .filter(|s| s.chars().any(char::is_alphabetic))
        .unwrap_or(&lower);
    count_syllables(stem).is_ok_and(|n| n >= 3)
}

pub fn score_smog(stats: &TextStatistics) -> Result<MetricScore, ReadabilityError> {
    let (_, sentences) = ratios(stats)?;
    let raw = 1.0430 * (stats.polysyllable_count as f64 * 30.0 / sentences).sqrt() + 3.1291;
    Ok(MetricScore {
        reliable: stats.sentence_count >= SMOG_MIN_SENTENCES,
        ..graded(Metric::Smog, raw)
    })
}

pub fn score_coleman_liau(stats: &TextStatistics) -> Result<MetricScore, ReadabilityError> {
    let (words, sentences) = ratios(stats)?;
    let letters_per_100 = 100.0 * stats.letter_count as f64 / words;
    let sentences_per_100 = 100.0 * sentences / words;
    let raw = 0.0588 * letters_per_100 - 0.296 * sentences_per_100 - 15.8;
    Ok(graded(Metric::ColemanLiau, raw))
}

pub fn score_dale_chall(stats: &TextStatistics, difficult_fraction: f64) -> Result<MetricScore, ReadabilityError> {
    let (words, sentences) = ratios(stats)?;
    let fraction = check_fraction(difficult_fraction)?;
    let mut raw = 0.1579 * (100.0 * fraction) + 0.0496 * (words / sentences);
    if fraction > DALE_CHALL_THRESHOLD {
        raw += DALE_CHALL_ADJUSTMENT;
    }
    Ok(MetricScore {
        metric: Metric::DaleChall,
        raw_score: raw,
        grade_level: Some(dale_chall_band(raw)),
        reliable: true,
    })
}

/// Conventional Dale–Chall score bands, mapped to their grade midpoints.
pub fn dale_chall_band(score: f64) -> f64 {
    match score {
        s if s < 5.0 => 4.0,
        s if s < 6.0 => 5.5,
        s if s < 7.0 => 7.5,
        s if s < 8.0 => 9.5,
        s if s < 9.0 => 11.5,
        s if s < 10.0 => 14.0,
        _ => 16.0,
    }
}

pub fn score_spache(stats: &TextStatistics, unfamiliar_fraction: f64) -> Result<MetricScore, ReadabilityError> {
    let (words, sentences) = ratios(stats)?;
    let fraction = check_fraction(unfamiliar_fraction)?;
    let raw = spache::SENTENCE_LENGTH * (words / sentences)
        + spache::UNFAMILIAR_PERCENT * (100.0 * fraction)
        + spache::CONSTANT;
    Ok(graded(Metric::Spache, raw))
}

/// Median of the grade-bearing consensus metrics, and the matching reader age.
pub fn consensus(scores: &[MetricScore]) -> Result<(f64, f64), ReadabilityError> {
    let mut grades: Vec<f64> = scores
        .iter()
        .filter(|s| s.metric.in_consensus())
        .filter_map(|s| s.grade_level)
        .collect();
    if grades.is_empty() {
        return Err(ReadabilityError::InsufficientText);
    }
    grades.sort_by(f64::total_cmp);
    let mid = grades.len() / 2;
    let grade = if grades.len() % 2 == 1 {
        grades[mid]
    } else {
        (grades[mid - 1] + grades[mid]) / 2.0
    };
    Ok((grade, grade + SCHOOL_ENTRY_AGE))
}

/// Scores all eight metrics and fuses them.
pub fn build_report(
    stats: &TextStatistics,
    difficult_fraction: f64,
    spache_unfamiliar_fraction: f64,
) -> Result<ReadabilityReport, ReadabilityError> {
    let (ease, kincaid) = score_flesch(stats)?;
    let all = [
        score_ari(stats)?,
        ease,
        kincaid,
        score_fog(stats)?,
        score_smog(stats)?,
        score_coleman_liau(stats)?,
        score_dale_chall(stats, difficult_fraction)?,
        score_spache(stats, spache_unfamiliar_fraction)?,
    ];
    let (consensus_grade, estimated_age) = consensus(&all)?;
    Ok(ReadabilityReport {
        scores: all.iter().map(|s| (s.metric, *s)).collect(),
        consensus_grade,
        estimated_age,
        difficult_word_fraction: difficult_fraction,
    })
}
