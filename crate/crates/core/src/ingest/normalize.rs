/// Lowercases a word, folds curly apostrophes to `'` and strips leading and
/// trailing non-alphanumeric characters. Internal punctuation is kept.
pub fn normalize_word(word: &str) -> String {
    let lowered: String = word
        .chars()
        .flat_map(char::to_lowercase)
        .map(|c| if c == '\u{2019}' { '\'' } else { c })
        .collect();
    lowered
        .trim_matches(|c: char| !c.is_alphanumeric())
        .to_owned()
}
