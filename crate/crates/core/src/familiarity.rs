//! Word-familiarity lexicons and inflection-aware lookup.
//!
//! A lexicon is a set of lowercase words. Lookup first tries the normalized
//! word itself and, when inflections are allowed, then removes one regular
//! inflection (`-'s`, `-ies`, `-s`, `-es`, `-ed`, `-ing`) and tries the base,
//! restoring a dropped final `e` or undoubling a final consonant where the
//! spelling rules call for it.

use std::collections::HashSet;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::ingest::{normalize_word, TokenizedDocument};

const DALE_CHALL: &str = include_str!("../../../data/dale_chall.txt");
const SPACHE: &str = include_str!("../../../data/spache.txt");
const TOP1000: &str = include_str!("../../../data/top1000.txt");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub enum LexiconName {
    #[default]
    #[serde(rename = "dale-chall", alias = "dale_chall")]
    DaleChall,
    #[serde(rename = "spache")]
    Spache,
    #[serde(rename = "top1000")]
    Top1000,
}

impl LexiconName {
    pub const ALL: [LexiconName; 3] = [LexiconName::DaleChall, LexiconName::Spache, LexiconName::Top1000];

    pub fn as_str(self) -> &'static str {
        match self {
            LexiconName::DaleChall => "dale-chall",
            LexiconName::Spache => "spache",
            LexiconName::Top1000 => "top1000",
        }
    }
}

impl fmt::Display for LexiconName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for LexiconName {
    type Err = LexiconError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "dale-chall" | "dale_chall" | "dalechall" => Ok(LexiconName::DaleChall),
            "spache" => Ok(LexiconName::Spache),
            "top1000" | "top-1000" | "top_1000" => Ok(LexiconName::Top1000),
            _ => Err(LexiconError::UnknownName(s.to_owned())),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum LexiconError {
    #[error("unknown lexicon {0:?} (expected dale-chall, spache or top1000)")]
    UnknownName(String),
    #[error("cannot read lexicon {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("lexicon {path} is not valid UTF-8")]
    NotUtf8 { path: PathBuf },
    #[error("lexicon {0} contains no words")]
    Empty(String),
}

/// How a word was found in a lexicon.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Match {
    /// The list entry that matched.
    pub base: String,
    /// True when a suffix had to be removed to find `base`.
    pub inflected: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamiliarityLexicon {
    name: LexiconName,
    words: HashSet<String>,
    allow_inflections: bool,
}

impl FamiliarityLexicon {
    /// Builds a lexicon from file contents: one word per line, `#` comment
    /// lines and blank lines ignored, entries lowercased and deduplicated.
    pub fn parse(name: LexiconName, text: &str) -> Result<Self, LexiconError> {
        let words: HashSet<String> = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(str::to_lowercase)
            .collect();
        if words.is_empty() {
            return Err(LexiconError::Empty(name.to_string()));
        }
        Ok(FamiliarityLexicon {
            name,
            words,
            allow_inflections: true,
        })
    }

    /// One of the lexicons compiled into the crate.
    pub fn builtin(name: LexiconName) -> Self {
        let text = match name {
            LexiconName::DaleChall => DALE_CHALL,
            LexiconName::Spache => SPACHE,
            LexiconName::Top1000 => TOP1000,
        };
        Self::parse(name, text).expect("shipped lexicons are non-empty")
    }

    pub fn with_inflections(mut self, allow: bool) -> Self {
        self.allow_inflections = allow;
        self
    }

    pub fn name(&self) -> LexiconName {
        self.name
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn allows_inflections(&self) -> bool {
        self.allow_inflections
    }

    pub fn contains(&self, word: &str) -> bool {
        self.words.contains(word)
    }

    /// Adds a word (lowercased). Lexicons only grow.
    pub fn insert(&mut self, word: &str) {
        let w = word.trim().to_lowercase();
        if !w.is_empty() {
            self.words.insert(w);
        }
    }

    /// Finds the entry that makes `normalized_word` familiar, if any.
    /// Words without letters (numbers) are never familiar.
    pub fn lookup(&self, normalized_word: &str) -> Option<Match> {
        if !normalized_word.chars().any(char::is_alphabetic) {
            return None;
        }
        if self.words.contains(normalized_word) {
            return Some(Match {
                base: normalized_word.to_owned(),
                inflected: false,
            });
        }
        if !self.allow_inflections {
            return None;
        }
        inflection_bases(normalized_word)
            .into_iter()
            .find(|b| self.words.contains(b))
            .map(|base| Match {
                base,
                inflected: true,
            })
    }

    pub fn is_familiar(&self, normalized_word: &str) -> bool {
        self.lookup(normalized_word).is_some()
    }

    pub fn lexicon_words(&self) -> impl Iterator<Item = &str> {
        self.words.iter().map(String::as_str)
    }
}

pub fn load_lexicon(name: LexiconName, path: impl AsRef<Path>) -> Result<FamiliarityLexicon, LexiconError> {
    let path = path.as_ref();
    let bytes = std::fs::read(path).map_err(|source| LexiconError::Io {
        path: path.to_owned(),
        source,
    })?;
    let text = String::from_utf8(bytes).map_err(|_| LexiconError::NotUtf8 {
        path: path.to_owned(),
    })?;
    FamiliarityLexicon::parse(name, &text).map_err(|e| match e {
        LexiconError::Empty(_) => LexiconError::Empty(path.display().to_string()),
        other => other,
    })
}

/// Fraction of Word/Number tokens whose normalized form is unfamiliar.
pub fn difficult_fraction(doc: &TokenizedDocument, lexicon: &FamiliarityLexicon) -> Option<f64> {
    let mut total = 0usize;
    let mut difficult = 0usize;
    for (_, token) in doc.words() {
        total += 1;
        if !lexicon.is_familiar(&normalize_word(&token.text)) {
            difficult += 1;
        }
    }
    (total > 0).then(|| difficult as f64 / total as f64)
}

fn is_vowel(c: char) -> bool {
    matches!(c, 'a' | 'e' | 'i' | 'o' | 'u')
}

fn is_consonant(c: char) -> bool {
    c.is_ascii_lowercase() && !is_vowel(c)
}

/// Single vowel between two consonants at the end ("hop", "rat"); such stems
/// usually lost a final `e` before `-ed`/`-ing`.
fn ends_cvc(stem: &[char]) -> bool {
    match stem {
        [.., a, b, c] => {
            is_consonant(*a) && is_vowel(*b) && is_consonant(*c) && !matches!(c, 'w' | 'x' | 'y')
        }
        _ => false,
    }
}

/// Candidate bases for a word carrying one regular inflection, in the order
/// they should be tried.
fn inflection_bases(word: &str) -> Vec<String> {
    const MIN_STEM: usize = 2;
    let mut out = Vec::new();
    let stem_ok = |s: &str| s.chars().count() >= MIN_STEM;

    if let Some(stem) = word.strip_suffix("'s") {
        if stem_ok(stem) {
            out.push(stem.to_owned());
        }
    }
    if let Some(stem) = word.strip_suffix("ies") {
        if stem_ok(stem) {
            out.push(format!("{stem}y"));
        }
    }
    if let Some(stem) = word.strip_suffix('s') {
        if stem_ok(stem) && !stem.ends_with('s') && !stem.ends_with('\'') {
            out.push(stem.to_owned());
        }
    }
    if let Some(stem) = word.strip_suffix("es") {
        if stem_ok(stem) {
            out.push(stem.to_owned());
        }
    }
    for suffix in ["ed", "ing"] {
        let Some(stem) = word.strip_suffix(suffix) else {
            continue;
        };
        if !stem_ok(stem) {
            continue;
        }
        let chars: Vec<char> = stem.chars().collect();
        let restored = format!("{stem}e");
        if ends_cvc(&chars) {
            out.push(restored);
            out.push(stem.to_owned());
        } else {
            out.push(stem.to_owned());
            out.push(restored);
        }
        if let [.., a, b] = chars.as_slice() {
            if a == b && is_consonant(*b) {
                out.push(chars[..chars.len() - 1].iter().collect());
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lex(words: &[&str]) -> FamiliarityLexicon {
        FamiliarityLexicon::parse(LexiconName::DaleChall, &words.join("\n")).unwrap()
    }

    #[test]
    fn parse_dedups_and_skips_comments() {
        let l = FamiliarityLexicon::parse(LexiconName::Top1000, "the\nThe\n# c\n\n").unwrap();
        assert_eq!(l.len(), 1);
        assert!(l.contains("the"));
    }

    #[test]
    fn empty_lexicon_is_an_error() {
        assert!(matches!(
            FamiliarityLexicon::parse(LexiconName::Spache, "# nothing\n\n"),
            Err(LexiconError::Empty(_))
        ));
    }

    #[test]
    fn missing_file() {
        let err = load_lexicon(LexiconName::DaleChall, "/nonexistent/words.txt").unwrap_err();
        assert!(matches!(err, LexiconError::Io { .. }));
    }

    #[test]
    fn names_round_trip() {
        for name in LexiconName::ALL {
            assert_eq!(name.as_str().parse::<LexiconName>().unwrap(), name);
        }
        assert!("klingon".parse::<LexiconName>().is_err());
    }

    #[test]
    fn running_via_undoubling() {
        let l = lex(&["run"]);
        let m = l.lookup("running").unwrap();
        assert_eq!(m.base, "run");
        assert!(m.inflected);
    }

    #[test]
    fn restores_final_e() {
        let l = lex(&["hope", "hop", "walk"]);
        assert_eq!(l.lookup("hoping").unwrap().base, "hope");
        assert_eq!(l.lookup("hoped").unwrap().base, "hope");
        assert_eq!(l.lookup("walked").unwrap().base, "walk");
        assert_eq!(l.lookup("hopping").unwrap().base, "hop");
    }

    #[test]
    fn plural_forms() {
        let l = lex(&["baby", "box", "cat", "hope", "hop"]);
        assert_eq!(l.lookup("hopes").unwrap().base, "hope");
        assert_eq!(l.lookup("babies").unwrap().base, "baby");
        assert_eq!(l.lookup("boxes").unwrap().base, "box");
        assert_eq!(l.lookup("cats").unwrap().base, "cat");
        assert_eq!(l.lookup("cat's").unwrap().base, "cat");
        assert!(l.lookup("catss").is_none());
    }

    #[test]
    fn only_one_suffix() {
        let l = lex(&["walk"]);
        assert!(l.lookup("walkings").is_none());
    }

    #[test]
    fn inflections_can_be_disabled() {
        let l = lex(&["run"]).with_inflections(false);
        assert!(!l.is_familiar("running"));
        assert!(l.is_familiar("run"));
    }

    #[test]
    fn numbers_are_unfamiliar() {
        let mut l = lex(&["the"]);
        l.insert("42");
        assert!(!l.is_familiar("42"));
    }

    #[test]
    fn shipped_dale_chall() {
        let l = FamiliarityLexicon::builtin(LexiconName::DaleChall);
        assert!(l.is_familiar("about"));
        assert!(!l.is_familiar("hagiography"));
        assert!(l.is_familiar("running"));
        assert!(l.is_familiar("hoping"));
    }

    #[test]
    fn shipped_entries_are_clean() {
        for name in LexiconName::ALL {
            let l = FamiliarityLexicon::builtin(name);
            for w in l.lexicon_words() {
                assert!(!w.is_empty());
                assert_eq!(w, w.trim());
                assert_eq!(w, w.to_lowercase());
            }
        }
    }

    #[test]
    fn fraction_extremes() {
        let doc = crate::ingest::tokenize("The cat sat.");
        assert_eq!(difficult_fraction(&doc, &lex(&["the", "cat", "sat"])), Some(0.0));
        assert_eq!(difficult_fraction(&doc, &lex(&["zebra"])), Some(1.0));
        assert_eq!(difficult_fraction(&crate::ingest::tokenize("..."), &lex(&["a"])), None);
    }
}
