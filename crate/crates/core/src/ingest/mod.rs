//! Text ingestion: tokenization, syllables, normalization, counts and PDF text.

mod normalize;
mod pdf;
mod stats;
mod syllables;
mod tokenize;

pub use normalize::normalize_word;
pub use pdf::{extract_pdf_text, PdfError, PdfErrorKind, PdfExtractTextAdapter, PdfTextExtractor};
pub use stats::{compute_statistics, TextStatistics};
pub use syllables::{count_syllables, number_syllables, parse_exception_table};
pub use tokenize::{
    tokenize, tokenize_bytes, Span, Token, TokenKind, TokenizedDocument, ABBREVIATIONS,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IngestError {
    #[error("input is not valid UTF-8 (first invalid byte at offset {offset})")]
    InvalidUtf8 { offset: usize },
    #[error("word {0:?} contains no letters")]
    NoLetters(String),
    #[error("malformed syllable exception table at line {line}")]
    ExceptionTable { line: usize },
}

/// Syllables for a Word or Number token.
pub fn token_syllables(token: &Token) -> u32 {
    match token.kind {
        TokenKind::Number => number_syllables(&token.text),
        // Word tokens always hold at least one letter
        _ => count_syllables(&token.text).unwrap_or(1),
    }
}
