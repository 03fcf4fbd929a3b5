//! Vowel-group syllable heuristic with an exception table.

use std::collections::HashMap;
use std::sync::LazyLock;

use super::IngestError;

const EXCEPTIONS_TSV: &str = include_str!("../../../../data/syllable_exceptions.tsv");

static EXCEPTIONS: LazyLock<HashMap<String, u32>> = LazyLock::new(|| {
    parse_exception_table(EXCEPTIONS_TSV).expect("shipped syllable exception table is well-formed")
});

/// Parses `word<TAB>count` lines; `#` starts a comment line, blank lines are skipped.
pub fn parse_exception_table(text: &str) -> Result<HashMap<String, u32>, IngestError> {
    let mut table = HashMap::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = || IngestError::ExceptionTable { line: n + 1 };
        let (word, count) = line.split_once('\t').ok_or_else(bad)?;
        let count: u32 = count.trim().parse().map_err(|_| bad())?;
        if count == 0 || word.is_empty() {
            return Err(bad());
        }
        table.insert(word.trim().to_lowercase(), count);
    }
    Ok(table)
}

fn is_vowel(c: char) -> bool {
    matches!(
        c,
        'a' | 'e' | 'i' | 'o' | 'u' | 'à' | 'á' | 'â' | 'ä' | 'è' | 'é' | 'ê' | 'ë' | 'ì' | 'í' | 'î'
            | 'ï' | 'ò' | 'ó' | 'ô' | 'ö' | 'ù' | 'ú' | 'û' | 'ü'
    )
}

/// `y` is a vowel everywhere except word-initially.
fn vocalic(letters: &[char], i: usize) -> bool {
    is_vowel(letters[i]) || (letters[i] == 'y' && i > 0)
}

/// Heuristic count for a lowercase run of letters, floored at 1.
fn heuristic(letters: &[char]) -> u32 {
    let mut groups = 0u32;
    let mut in_group = false;
    for i in 0..letters.len() {
        let v = vocalic(letters, i);
        if v && !in_group {
            groups += 1;
        }
        in_group = v;
    }
    let n = letters.len();
    if n >= 2 && letters[n - 1] == 'e' && !vocalic(letters, n - 2) {
        // consonant + "le" keeps its syllable ("table"), other final e is silent
        let consonant_le = letters[n - 2] == 'l' && n >= 3 && !vocalic(letters, n - 3);
        if !consonant_le {
            groups = groups.saturating_sub(1);
        }
    }
    groups.max(1)
}

fn part_syllables(part: &str) -> Option<u32> {
    let letters: String = part
        .chars()
        .filter(|c| c.is_alphabetic())
        .flat_map(char::to_lowercase)
        .collect();
    if letters.is_empty() {
        return None;
    }
    if let Some(&n) = EXCEPTIONS.get(&letters) {
        return Some(n);
    }
    // a listed word followed by any run of "s" keeps the listed count
    let stem = letters.trim_end_matches('s');
    if let Some(&n) = EXCEPTIONS.get(stem).filter(|_| !stem.is_empty()) {
        return Some(n);
    }
    let chars: Vec<char> = letters.chars().collect();
    Some(heuristic(&chars))
}

/// Counts syllables in a word. Hyphenated compounds sum over their parts;
/// non-letter characters are ignored.
pub fn count_syllables(word: &str) -> Result<u32, IngestError> {
    let mut total = 0;
    let mut any = false;
    for part in word.split(['-', '\u{2010}', '\u{2011}']) {
        if let Some(n) = part_syllables(part) {
            total += n;
            any = true;
        }
    }
    if any {
        Ok(total)
    } else {
        Err(IngestError::NoLetters(word.to_owned()))
    }
}

/// Numbers are read digit by digit.
pub fn number_syllables(number: &str) -> u32 {
    number.chars().filter(|c| c.is_numeric()).count().max(1) as u32
}
