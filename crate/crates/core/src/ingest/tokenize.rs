//! Lossless tokenization with sentence segmentation.
//!
//! Every byte of the source lands in exactly one token, so concatenating the
//! token texts reproduces the input. Sentence boundaries are attached to the
//! terminating punctuation token (`sentence_final`) and every token carries
//! the index of the sentence it belongs to.

use super::IngestError;

/// Lowercased words that never end a sentence when followed by a period.
pub const ABBREVIATIONS: &[&str] = &[
    "mr", "mrs", "ms", "dr", "prof", "sr", "jr", "st", "vs", "etc", "e.g", "i.e", "fig", "al",
];

const TERMINATORS: &[char] = &['.', '!', '?'];
const CLOSERS: &[char] = &['"', '\'', '\u{201D}', '\u{2019}', ')', ']', '}', '\u{BB}'];
const OPENERS: &[char] = &['"', '\'', '\u{201C}', '\u{2018}', '(', '[', '{', '\u{AB}'];
const JOINERS: &[char] = &['\'', '\u{2019}', '-', '\u{2010}', '\u{2011}'];
const DIGIT_SEPARATORS: &[char] = &[',', '.'];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TokenKind {
    Word,
    Number,
    Punctuation,
    Whitespace,
}

/// Half-open byte range into the source text.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.start == self.end
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub text: String,
    pub span: Span,
    pub sentence_index: usize,
    pub sentence_final: bool,
}

impl Token {
    /// Word and Number tokens are the units that get scheduled and counted.
    pub fn is_word_like(&self) -> bool {
        matches!(self.kind, TokenKind::Word | TokenKind::Number)
    }

    pub fn char_len(&self) -> usize {
        self.text.chars().count()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TokenizedDocument {
    source_text: String,
    tokens: Vec<Token>,
    sentence_count: usize,
}

impl TokenizedDocument {
    pub fn source_text(&self) -> &str {
        &self.source_text
    }

    pub fn tokens(&self) -> &[Token] {
        &self.tokens
    }

    pub fn sentence_count(&self) -> usize {
        self.sentence_count
    }

    /// Word and Number tokens paired with their index in [`Self::tokens`].
    pub fn words(&self) -> impl Iterator<Item = (usize, &Token)> + '_ {
        self.tokens.iter().enumerate().filter(|(_, t)| t.is_word_like())
    }

    pub fn word_count(&self) -> usize {
        self.words().count()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }
}

/// Tokenizes raw bytes, rejecting invalid UTF-8 with the offending offset.
pub fn tokenize_bytes(bytes: &[u8]) -> Result<TokenizedDocument, IngestError> {
    match std::str::from_utf8(bytes) {
        Ok(text) => Ok(tokenize(text)),
        Err(e) => Err(IngestError::InvalidUtf8 {
            offset: e.valid_up_to(),
        }),
    }
}

pub fn tokenize(source_text: &str) -> TokenizedDocument {
    let mut tokens = lex(source_text);
    assign_sentences(source_text, &mut tokens);
    let sentence_count = tokens
        .iter()
        .filter(|t| t.kind != TokenKind::Whitespace)
        .map(|t| t.sentence_index + 1)
        .max()
        .unwrap_or(0);
    TokenizedDocument {
        source_text: source_text.to_owned(),
        tokens,
        sentence_count,
    }
}

fn lex(src: &str) -> Vec<Token> {
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let byte_at = |i: usize| chars.get(i).map_or(src.len(), |&(b, _)| b);
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let start = i;
        let c = chars[i].1;
        let kind = if c.is_whitespace() {
            while i < chars.len() && chars[i].1.is_whitespace() {
                i += 1;
            }
            TokenKind::Whitespace
        } else if c.is_alphanumeric() {
            i += 1;
            let mut has_letter = c.is_alphabetic();
            while i < chars.len() {
                let next = chars[i].1;
                if next.is_alphanumeric() {
                    has_letter |= next.is_alphabetic();
                    i += 1;
                    continue;
                }
                let prev = chars[i - 1].1;
                let after = chars.get(i + 1).map(|&(_, ch)| ch);
                let joins = match after {
                    Some(a) if JOINERS.contains(&next) => prev.is_alphabetic() && a.is_alphabetic(),
                    Some(a) if DIGIT_SEPARATORS.contains(&next) => {
                        prev.is_numeric() && a.is_numeric()
                    }
                    _ => false,
                };
                if !joins {
                    break;
                }
                i += 2;
            }
            if has_letter {
                TokenKind::Word
            } else {
                TokenKind::Number
            }
        } else {
            i += 1;
            TokenKind::Punctuation
        };
        let span = Span {
            start: byte_at(start),
            end: byte_at(i),
        };
        tokens.push(Token {
            kind,
            text: src[span.start..span.end].to_owned(),
            span,
            sentence_index: 0,
            sentence_final: false,
        });
    }
    tokens
}

fn is_punct(token: &Token, set: &[char]) -> bool {
    token.kind == TokenKind::Punctuation && token.text.chars().next().is_some_and(|c| set.contains(&c))
}

/// Returns the index of the last token belonging to the sentence that the
/// terminator at `at` closes, or `None` when it does not close one.
fn sentence_end(src: &str, tokens: &[Token], at: usize) -> Option<usize> {
    if preceding_word_is_abbreviation(src, tokens[at].span.start) {
        return None;
    }
    let mut last = at;
    while last + 1 < tokens.len() && is_punct(&tokens[last + 1], CLOSERS) {
        last += 1;
    }
    let Some(next) = tokens.get(last + 1) else {
        return Some(last);
    };
    if next.kind != TokenKind::Whitespace {
        return None;
    }
    let mut j = last + 2;
    while j < tokens.len() && is_punct(&tokens[j], OPENERS) {
        j += 1;
    }
    match tokens.get(j) {
        None => Some(last),
        Some(t) if t.kind == TokenKind::Number => Some(last),
        Some(t) if t.kind == TokenKind::Word && t.text.chars().next().is_some_and(char::is_uppercase) => {
            Some(last)
        }
        _ => None,
    }
}

/// Looks at the letters-and-dots run directly before `end` ("Dr", "e.g").
fn preceding_word_is_abbreviation(src: &str, end: usize) -> bool {
    let head = &src[..end];
    let start = head
        .char_indices()
        .rev()
        .take_while(|&(_, c)| c.is_alphabetic() || c == '.')
        .last()
        .map_or(end, |(i, _)| i);
    let word = head[start..].trim_start_matches('.').to_lowercase();
    !word.is_empty() && ABBREVIATIONS.contains(&word.as_str())
}

fn assign_sentences(src: &str, tokens: &mut [Token]) {
    let mut break_after = vec![false; tokens.len()];
    for i in 0..tokens.len() {
        if !is_punct(&tokens[i], TERMINATORS) {
            continue;
        }
        if let Some(last) = sentence_end(src, tokens, i) {
            tokens[i].sentence_final = true;
            break_after[last] = true;
        }
    }

    let mut current = 0;
    let mut pending = false;
    for (token, brk) in tokens.iter_mut().zip(break_after) {
        if token.kind != TokenKind::Whitespace && pending {
            current += 1;
            pending = false;
        }
        token.sentence_index = current;
        pending |= brk;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(doc: &TokenizedDocument) -> Vec<(TokenKind, &str)> {
        doc.tokens().iter().map(|t| (t.kind, t.text.as_str())).collect()
    }

    #[test]
    fn empty_input() {
        let doc = tokenize("");
        assert!(doc.tokens().is_empty());
        assert_eq!(doc.sentence_count(), 0);
    }

    #[test]
    fn whitespace_only_has_no_sentences() {
        let doc = tokenize(" \n\t ");
        assert_eq!(doc.tokens().len(), 1);
        assert_eq!(doc.sentence_count(), 0);
    }

    #[test]
    fn hi_there() {
        let doc = tokenize("Hi there.");
        use TokenKind::*;
        assert_eq!(
            kinds(&doc),
            vec![(Word, "Hi"), (Whitespace, " "), (Word, "there"), (Punctuation, ".")]
        );
        assert!(doc.tokens()[3].sentence_final);
        assert_eq!(doc.sentence_count(), 1);
    }

    #[test]
    fn abbreviation_does_not_split() {
        let doc = tokenize("Dr. Smith reads. He runs.");
        assert_eq!(doc.sentence_count(), 2);
        assert!(!doc.tokens()[1].sentence_final);
        let he = doc.tokens().iter().find(|t| t.text == "He").unwrap();
        assert_eq!(he.sentence_index, 1);
    }

    #[test]
    fn dotted_abbreviations() {
        let doc = tokenize("Use tools, e.g. Hammers and saws. Then rest.");
        assert_eq!(doc.sentence_count(), 2);
        let doc = tokenize("Some fruit, i.e. Apples. Done.");
        assert_eq!(doc.sentence_count(), 2);
    }

    #[test]
    fn lowercase_continuation_is_not_a_boundary() {
        let doc = tokenize("It cost 3 dollars. then it rose.");
        assert_eq!(doc.sentence_count(), 1);
    }

    #[test]
    fn digit_after_terminator_is_a_boundary() {
        let doc = tokenize("Count them. 42 were found.");
        assert_eq!(doc.sentence_count(), 2);
    }

    #[test]
    fn quotes_around_boundaries() {
        let doc = tokenize("He said \"Stop.\" \"Why?\" she asked.");
        assert_eq!(doc.sentence_count(), 2);
        let quote = &doc.tokens()[7];
        assert_eq!(quote.text, "\"");
        assert_eq!(quote.sentence_index, 0);
    }

    #[test]
    fn stacked_terminators_mark_the_last() {
        let doc = tokenize("Really?! Yes.");
        let finals: Vec<&str> = doc
            .tokens()
            .iter()
            .filter(|t| t.sentence_final)
            .map(|t| t.text.as_str())
            .collect();
        assert_eq!(finals, vec!["!", "."]);
        assert_eq!(doc.sentence_count(), 2);
    }

    #[test]
    fn numbers_and_joiners() {
        use TokenKind::*;
        let doc = tokenize("well-known don't 3.14 1,000 x-2");
        assert_eq!(
            kinds(&doc),
            vec![
                (Word, "well-known"),
                (Whitespace, " "),
                (Word, "don't"),
                (Whitespace, " "),
                (Number, "3.14"),
                (Whitespace, " "),
                (Number, "1,000"),
                (Whitespace, " "),
                (Word, "x"),
                (Punctuation, "-"),
                (Number, "2"),
            ]
        );
    }

    #[test]
    fn trailing_hyphen_and_apostrophe_are_punctuation() {
        use TokenKind::*;
        let doc = tokenize("dogs' end-");
        assert_eq!(
            kinds(&doc),
            vec![
                (Word, "dogs"),
                (Punctuation, "'"),
                (Whitespace, " "),
                (Word, "end"),
                (Punctuation, "-")
            ]
        );
    }

    #[test]
    fn trailing_whitespace_stays_in_last_sentence() {
        let doc = tokenize("One. Two.\n");
        assert_eq!(doc.sentence_count(), 2);
        assert_eq!(doc.tokens().last().unwrap().sentence_index, 1);
    }

    #[test]
    fn leading_whitespace_is_sentence_zero() {
        let doc = tokenize("  Hi. Yo.");
        assert_eq!(doc.tokens()[0].sentence_index, 0);
        assert_eq!(doc.sentence_count(), 2);
    }

    #[test]
    fn invalid_utf8_reports_offset() {
        let err = tokenize_bytes(b"abc\xffdef").unwrap_err();
        assert_eq!(err, IngestError::InvalidUtf8 { offset: 3 });
    }

    #[test]
    fn spans_index_the_source() {
        let src = "naïve café \u{2014} ok";
        let doc = tokenize(src);
        for t in doc.tokens() {
            assert_eq!(&src[t.span.start..t.span.end], t.text);
        }
    }
}
