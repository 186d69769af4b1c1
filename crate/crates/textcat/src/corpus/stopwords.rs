//! Stopword list handling.
//!
//! File format: UTF-8, one lowercase word per line; blank lines and lines
//! starting with `#` are ignored.

use std::collections::HashSet;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

const SMART_LIST: &str = include_str!("../../assets/stopwords_smart.txt");

/// The SMART system English stopword list, the default for preprocessing.
///
/// Entries are normalized with the same token splitter used by
/// [`preprocess`](crate::corpus::preprocess), so contractions such as
/// `don't` contribute their fragments (`don`, `t`) and match what the
/// tokenizer actually produces.
pub fn smart_stopwords() -> HashSet<String> {
    parse_stopwords(SMART_LIST)
}

/// Load a stopword file.
pub fn load_stopwords(path: &Path) -> Result<HashSet<String>> {
    let content = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    Ok(parse_stopwords(&content))
}

/// Parse stopword file content into the normalized lookup set.
pub fn parse_stopwords(content: &str) -> HashSet<String> {
    let mut set = HashSet::new();
    for line in content.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let word = line.to_lowercase();
        // Split exactly like the tokenizer so every entry can match a token.
        for fragment in word.split(|c: char| !c.is_alphanumeric()) {
            if !fragment.is_empty() {
                set.insert(fragment.to_string());
            }
        }
        set.insert(word);
    }
    set
}
