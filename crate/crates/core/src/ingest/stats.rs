use serde::Serialize;

use super::{normalize_word, token_syllables, TokenKind, TokenizedDocument};
use crate::familiarity::FamiliarityLexicon;
use crate::readability::is_complex_word;

/// Aggregate counts consumed by the readability formulas.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct TextStatistics {
    /// Non-whitespace characters inside Word and Number tokens.
    pub char_count: usize,
    /// Alphabetic characters inside Word tokens.
    pub letter_count: usize,
    pub word_count: usize,
    pub sentence_count: usize,
    pub syllable_count: usize,
    /// Words with three or more syllables.
    pub polysyllable_count: usize,
    /// Gunning Fog complex words.
    pub complex_word_count: usize,
    /// Words not familiar to the lexicon the statistics were computed against.
    pub difficult_word_count: usize,
    pub per_word_syllables: Vec<u32>,
}

pub fn compute_statistics(doc: &TokenizedDocument, lexicon: &FamiliarityLexicon) -> TextStatistics {
    let mut stats = TextStatistics {
        sentence_count: doc.sentence_count(),
        ..TextStatistics::default()
    };
    let mut last_sentence = None;
    for (_, token) in doc.words() {
        let starts_sentence = last_sentence != Some(token.sentence_index);
        last_sentence = Some(token.sentence_index);

        let syllables = token_syllables(token);
        stats.word_count += 1;
        stats.char_count += token.text.chars().filter(|c| !c.is_whitespace()).count();
        stats.syllable_count += syllables as usize;
        stats.per_word_syllables.push(syllables);
        if syllables >= 3 {
            stats.polysyllable_count += 1;
        }
        if token.kind == TokenKind::Word {
            stats.letter_count += token.text.chars().filter(|c| c.is_alphabetic()).count();
            if is_complex_word(&token.text, starts_sentence) {
                stats.complex_word_count += 1;
            }
        }
        if !lexicon.is_familiar(&normalize_word(&token.text)) {
            stats.difficult_word_count += 1;
        }
    }
    stats
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::familiarity::LexiconName;
    use crate::ingest::tokenize;

    fn dale() -> FamiliarityLexicon {
        FamiliarityLexicon::builtin(LexiconName::DaleChall)
    }

    #[test]
    fn empty_doc() {
        let stats = compute_statistics(&tokenize(""), &dale());
        assert_eq!(stats, TextStatistics::default());
    }

    #[test]
    fn the_cat_sat() {
        let stats = compute_statistics(&tokenize("The cat sat."), &dale());
        assert_eq!(stats.word_count, 3);
        assert_eq!(stats.sentence_count, 1);
        assert_eq!(stats.syllable_count, 3);
        assert_eq!(stats.char_count, 9);
        assert_eq!(stats.letter_count, 9);
        assert_eq!(stats.per_word_syllables, vec![1, 1, 1]);
        assert_eq!(stats.difficult_word_count, 0);
    }

    #[test]
    fn numbers_count_digits() {
        let stats = compute_statistics(&tokenize("In 2024 we met."), &dale());
        assert_eq!(stats.word_count, 4);
        assert_eq!(stats.per_word_syllables, vec![1, 4, 1, 1]);
        assert_eq!(stats.polysyllable_count, 1);
        assert_eq!(stats.complex_word_count, 0);
        assert_eq!(stats.letter_count, 7);
        assert_eq!(stats.char_count, 11);
        assert_eq!(stats.difficult_word_count, 1);
    }

    #[test]
    fn proper_nouns_mid_sentence_are_not_complex() {
        let stats = compute_statistics(&tokenize("Yesterday Anderson visited."), &dale());
        // "Yesterday" starts the sentence, "Anderson" is a proper noun,
        // "visited" strips to "visit" (2 syllables)
        assert_eq!(stats.complex_word_count, 1);
    }
}
