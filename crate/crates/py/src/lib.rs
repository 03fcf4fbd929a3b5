//! Python bindings: tokenization, lexicons, readability reports, display
//! schedules and gradients. Reports and schedules come back as plain dicts
//! with the same shape as the HTTP service's JSON.

use std::sync::LazyLock;

use pyo3::exceptions::{PyOSError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use thoth_core::familiarity::{load_lexicon, FamiliarityLexicon, LexiconName};
use thoth_core::gradient::GradientConfig;
use thoth_core::{Engine, ReaderProfile, TokenKind};

static ENGINE: LazyLock<Engine> = LazyLock::new(Engine::new);

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn lexicon_name(name: &str) -> PyResult<LexiconName> {
    name.parse().map_err(value_error)
}

fn json_to_py<'py>(py: Python<'py>, json: &str) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (json,))
}

fn kind_name(kind: TokenKind) -> &'static str {
    match kind {
        TokenKind::Word => "word",
        TokenKind::Number => "number",
        TokenKind::Punctuation => "punctuation",
        TokenKind::Whitespace => "whitespace",
    }
}

/// Splits text into tokens; joining their `text` fields gives back the input.
#[pyfunction]
fn tokenize<'py>(py: Python<'py>, text: &str) -> PyResult<Bound<'py, PyList>> {
    let doc = thoth_core::tokenize(text);
    let list = PyList::empty(py);
    for t in doc.tokens() {
        let d = PyDict::new(py);
        d.set_item("kind", kind_name(t.kind))?;
        d.set_item("text", &t.text)?;
        d.set_item("start", t.span.start)?;
        d.set_item("end", t.span.end)?;
        d.set_item("sentence_index", t.sentence_index)?;
        d.set_item("sentence_final", t.sentence_final)?;
        list.append(d)?;
    }
    Ok(list)
}

#[pyfunction]
fn count_syllables(word: &str) -> PyResult<u32> {
    thoth_core::ingest::count_syllables(word).map_err(value_error)
}

#[pyfunction]
fn normalize_word(word: &str) -> String {
    thoth_core::ingest::normalize_word(word)
}

/// A familiarity word list: `Lexicon("dale-chall")`, or a file with `path=`.
#[pyclass(name = "Lexicon", frozen)]
struct Lexicon {
    inner: FamiliarityLexicon,
}

#[pymethods]
impl Lexicon {
    #[new]
    #[pyo3(signature = (name = "dale-chall", path = None, allow_inflections = true))]
    fn new(name: &str, path: Option<std::path::PathBuf>, allow_inflections: bool) -> PyResult<Self> {
        let name = lexicon_name(name)?;
        let inner = match path {
            Some(p) => load_lexicon(name, p).map_err(|e| PyOSError::new_err(e.to_string()))?,
            None => FamiliarityLexicon::builtin(name),
        };
        Ok(Lexicon {
            inner: inner.with_inflections(allow_inflections),
        })
    }

    #[getter]
    fn name(&self) -> &'static str {
        self.inner.name().as_str()
    }

    /// Normalizes `word` and checks it, allowing one regular inflection.
    fn is_familiar(&self, word: &str) -> bool {
        self.inner.is_familiar(&thoth_core::ingest::normalize_word(word))
    }

    /// `(base, inflected)` for a familiar word, `None` otherwise.
    fn lookup(&self, word: &str) -> Option<(String, bool)> {
        self.inner
            .lookup(&thoth_core::ingest::normalize_word(word))
            .map(|m| (m.base, m.inflected))
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __contains__(&self, word: &str) -> bool {
        self.inner.contains(word)
    }

    fn __repr__(&self) -> String {
        format!("Lexicon({:?}, {} words)", self.inner.name().as_str(), self.inner.len())
    }
}

/// Readability report as a dict.
#[pyfunction]
#[pyo3(signature = (text, lexicon = "dale-chall"))]
fn analyze<'py>(py: Python<'py>, text: &str, lexicon: &str) -> PyResult<Bound<'py, PyAny>> {
    let name = lexicon_name(lexicon)?;
    let analysis = py
        .detach(|| ENGINE.analyze(text, name))
        .map_err(value_error)?;
    json_to_py(py, &analysis.report.to_json())
}

/// Raw counts behind the report.
#[pyfunction]
#[pyo3(signature = (text, lexicon = "dale-chall"))]
fn statistics<'py>(py: Python<'py>, text: &str, lexicon: &str) -> PyResult<Bound<'py, PyAny>> {
    let name = lexicon_name(lexicon)?;
    let analysis = ENGINE.analyze(text, name).map_err(value_error)?;
    let json = serde_json::to_string(&analysis.statistics).map_err(value_error)?;
    json_to_py(py, &json)
}

/// Display schedule as a dict.
#[pyfunction]
#[pyo3(signature = (
    text,
    base_wpm = 300.0,
    reader_age = None,
    unfamiliar_multiplier = 1.5,
    lexicon = "dale-chall",
    length_modifier_enabled = true,
    punctuation_pauses_enabled = true,
))]
#[allow(clippy::too_many_arguments)]
fn schedule<'py>(
    py: Python<'py>,
    text: &str,
    base_wpm: f64,
    reader_age: Option<f64>,
    unfamiliar_multiplier: f64,
    lexicon: &str,
    length_modifier_enabled: bool,
    punctuation_pauses_enabled: bool,
) -> PyResult<Bound<'py, PyAny>> {
    let profile = ReaderProfile {
        base_wpm,
        reader_age,
        unfamiliar_multiplier,
        lexicon: lexicon_name(lexicon)?,
        length_modifier_enabled,
        punctuation_pauses_enabled,
    };
    let schedule = py
        .detach(|| ENGINE.schedule(text, &profile))
        .map_err(value_error)?;
    json_to_py(py, &schedule.to_json())
}

/// Wrapped lines and per-word colors for the paragraph view.
#[pyfunction]
#[pyo3(signature = (text, width = 55))]
fn gradient<'py>(py: Python<'py>, text: &str, width: usize) -> PyResult<Bound<'py, PyAny>> {
    let config = GradientConfig::default().with_width(width).map_err(value_error)?;
    let view = ENGINE.gradient(text, &config).map_err(value_error)?;
    let json = serde_json::to_string(&view).map_err(value_error)?;
    json_to_py(py, &json)
}

#[pymodule]
mod thoth {
    #[pymodule_export]
    use super::{analyze, count_syllables, gradient, normalize_word, schedule, statistics, tokenize, Lexicon};
}
