//! One-call pipelines used by the CLI, the service and the Python bindings.

use std::collections::HashMap;

use crate::familiarity::{difficult_fraction, FamiliarityLexicon, LexiconName};
use crate::gradient::{gradient_view, GradientConfig, GradientView};
use crate::ingest::{compute_statistics, tokenize, TextStatistics, TokenizedDocument};
use crate::readability::{build_report, ReadabilityError, ReadabilityReport};
use crate::scheduler::{build_schedule_with, DisplaySchedule, ReaderProfile, ScheduleOptions};
use crate::Error;

#[derive(Debug, Clone)]
pub struct Analysis {
    pub document: TokenizedDocument,
    pub statistics: TextStatistics,
    pub report: ReadabilityReport,
}

/// Holds the built-in lexicons so repeated calls don't re-parse them.
#[derive(Debug, Clone)]
pub struct Engine {
    lexicons: HashMap<LexiconName, FamiliarityLexicon>,
}

impl Default for Engine {
    fn default() -> Self {
        Engine::new()
    }
}

impl Engine {
    pub fn new() -> Self {
        let lexicons = LexiconName::ALL
            .iter()
            .map(|&name| (name, FamiliarityLexicon::builtin(name)))
            .collect();
        Engine { lexicons }
    }

    /// Replaces a built-in lexicon, e.g. with one loaded from disk.
    pub fn with_lexicon(mut self, lexicon: FamiliarityLexicon) -> Self {
        self.lexicons.insert(lexicon.name(), lexicon);
        self
    }

    pub fn lexicon(&self, name: LexiconName) -> &FamiliarityLexicon {
        &self.lexicons[&name]
    }

    pub fn analyze(&self, text: &str, lexicon: LexiconName) -> Result<Analysis, Error> {
        self.analyze_document(tokenize(text), lexicon)
    }

    pub fn analyze_document(&self, document: TokenizedDocument, lexicon: LexiconName) -> Result<Analysis, Error> {
        let selected = self.lexicon(lexicon);
        let difficult = difficult_fraction(&document, selected).ok_or(ReadabilityError::InsufficientText)?;
        let spache = difficult_fraction(&document, self.lexicon(LexiconName::Spache))
            .ok_or(ReadabilityError::InsufficientText)?;
        let statistics = compute_statistics(&document, selected);
        let report = build_report(&statistics, difficult, spache)?;
        Ok(Analysis {
            document,
            statistics,
            report,
        })
    }

    pub fn schedule(&self, text: &str, profile: &ReaderProfile) -> Result<DisplaySchedule, Error> {
        self.schedule_with(text, profile, &ScheduleOptions::colored())
    }

    pub fn schedule_with(
        &self,
        text: &str,
        profile: &ReaderProfile,
        options: &ScheduleOptions,
    ) -> Result<DisplaySchedule, Error> {
        profile.validate()?;
        let analysis = self.analyze(text, profile.lexicon)?;
        let schedule = build_schedule_with(
            &analysis.document,
            &analysis.report,
            profile,
            self.lexicon(profile.lexicon),
            options,
        )?;
        Ok(schedule)
    }

    pub fn gradient(&self, text: &str, config: &GradientConfig) -> Result<GradientView, Error> {
        config.validate()?;
        Ok(gradient_view(&tokenize(text), config))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::readability::Metric;

    #[test]
    fn analyze_the_cat_sat() {
        let a = Engine::new().analyze("The cat sat.", LexiconName::DaleChall).unwrap();
        assert_eq!(a.statistics.word_count, 3);
        assert_eq!(a.report.scores.len(), 8);
        assert_eq!(a.report.difficult_word_fraction, 0.0);
        assert!(a.report.score(Metric::Smog).is_some_and(|s| !s.reliable));
    }

    #[test]
    fn empty_text_is_insufficient() {
        let e = Engine::new();
        for text in ["", "   ", "!!"] {
            assert!(matches!(
                e.analyze(text, LexiconName::DaleChall),
                Err(Error::Readability(ReadabilityError::InsufficientText))
            ));
        }
    }

    #[test]
    fn lexicon_only_moves_familiarity_outputs() {
        let e = Engine::new();
        let text = "The physician prescribed an unusual remedy. Patients recovered quickly.";
        let a = e.analyze(text, LexiconName::DaleChall).unwrap();
        let b = e.analyze(text, LexiconName::Top1000).unwrap();
        for m in [Metric::Ari, Metric::FleschKincaidGrade, Metric::GunningFog, Metric::ColemanLiau, Metric::Spache] {
            assert_eq!(a.report.score(m), b.report.score(m), "{m:?}");
        }
        assert_ne!(a.report.difficult_word_fraction, b.report.difficult_word_fraction);
    }

    #[test]
    fn schedule_rejects_bad_profile() {
        let p = ReaderProfile {
            base_wpm: 10.0,
            ..ReaderProfile::default()
        };
        assert!(matches!(Engine::new().schedule("x", &p), Err(Error::Schedule(_))));
    }
}
