//! Readability analysis and per-word display scheduling for rapid serial
//! visual presentation.

pub mod engine;
pub mod familiarity;
pub mod gradient;
pub mod ingest;
pub mod readability;
pub mod scheduler;

pub use engine::{Analysis, Engine};
pub use familiarity::{FamiliarityLexicon, LexiconError, LexiconName, Match};
pub use gradient::{GradientConfig, GradientError, GradientView, Rgb};
pub use ingest::{tokenize, IngestError, PdfError, PdfErrorKind, TextStatistics, Token, TokenKind, TokenizedDocument};
pub use readability::{Metric, MetricScore, ReadabilityError, ReadabilityReport};
pub use scheduler::{DisplaySchedule, ReaderProfile, ScheduleEntry, ScheduleError, TimingModel};

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Ingest(#[from] IngestError),
    #[error(transparent)]
    Lexicon(#[from] LexiconError),
    #[error(transparent)]
    Readability(#[from] ReadabilityError),
    #[error(transparent)]
    Schedule(#[from] ScheduleError),
    #[error(transparent)]
    Gradient(#[from] GradientError),
    #[error(transparent)]
    Pdf(#[from] PdfError),
}
