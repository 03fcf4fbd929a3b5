//! PDF text-layer extraction behind a small adapter trait.

use std::fmt;
use std::panic::{catch_unwind, AssertUnwindSafe};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PdfErrorKind {
    Corrupt,
    Encrypted,
    ImageOnly,
}

impl PdfErrorKind {
    /// Stable reason code used in error bodies.
    pub fn code(self) -> &'static str {
        match self {
            PdfErrorKind::Corrupt => "corrupt",
            PdfErrorKind::Encrypted => "encrypted",
            PdfErrorKind::ImageOnly => "image_only",
        }
    }
}

impl fmt::Display for PdfErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("PDF extraction failed ({kind}): {message}")]
pub struct PdfError {
    pub kind: PdfErrorKind,
    pub message: String,
}

impl PdfError {
    fn new(kind: PdfErrorKind, message: impl Into<String>) -> Self {
        PdfError {
            kind,
            message: message.into(),
        }
    }
}

pub trait PdfTextExtractor: Send + Sync {
    /// Returns the text layer in reading order, paragraphs separated by a blank line.
    fn extract(&self, pdf_bytes: &[u8]) -> Result<String, PdfError>;
}

/// Default extractor backed by the `pdf-extract` crate.
#[derive(Debug, Default, Clone, Copy)]
pub struct PdfExtractTextAdapter;

impl PdfTextExtractor for PdfExtractTextAdapter {
    fn extract(&self, pdf_bytes: &[u8]) -> Result<String, PdfError> {
        if !pdf_bytes.starts_with(b"%PDF-") {
            return Err(PdfError::new(PdfErrorKind::Corrupt, "missing %PDF- header"));
        }
        // pdf-extract can panic on malformed content streams
        let result = catch_unwind(AssertUnwindSafe(|| pdf_extract::extract_text_from_mem(pdf_bytes)))
            .map_err(|_| PdfError::new(PdfErrorKind::Corrupt, "parser aborted on malformed content"))?;
        let raw = result.map_err(|e| match e {
            pdf_extract::OutputError::PdfError(pdf_extract::Error::Decryption(d)) => {
                PdfError::new(PdfErrorKind::Encrypted, format!("document is encrypted: {d}"))
            }
            other => PdfError::new(PdfErrorKind::Corrupt, other.to_string()),
        })?;
        let text = tidy_paragraphs(&raw);
        if text.is_empty() {
            return Err(PdfError::new(PdfErrorKind::ImageOnly, "no text layer found"));
        }
        Ok(text)
    }
}

pub fn extract_pdf_text(pdf_bytes: &[u8]) -> Result<String, PdfError> {
    PdfExtractTextAdapter.extract(pdf_bytes)
}

/// Trims each line, joins lines within a paragraph with a space and separates
/// paragraphs (one or more blank lines in the raw output) with exactly one blank line.
fn tidy_paragraphs(raw: &str) -> String {
    let mut paragraphs: Vec<String> = Vec::new();
    let mut current = String::new();
    for line in raw.lines() {
        let line = line.trim();
        if line.is_empty() {
            if !current.is_empty() {
                paragraphs.push(std::mem::take(&mut current));
            }
            continue;
        }
        if !current.is_empty() {
            current.push(' ');
        }
        current.push_str(line);
    }
    if !current.is_empty() {
        paragraphs.push(current);
    }
    paragraphs.join("\n\n")
}
