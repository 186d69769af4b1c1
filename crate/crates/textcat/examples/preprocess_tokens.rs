//! Text normalization walkthrough: lowercasing, tokenization, stopword
//! removal and Porter stemming.
//!
//! Run: cargo run -p textcat --example preprocess_tokens

use std::collections::HashSet;

use textcat::corpus::{preprocess, stem, PreprocessConfig};

fn main() {
    let text = "Computers are computing: 3 firms acquired stakes, \
                boosting quarterly earnings by 12%!";

    let config = PreprocessConfig::default();
    println!("input:  {text}");
    println!("tokens: {:?}", preprocess(text, &config));
    println!();

    // Each knob in isolation.
    let no_stem = PreprocessConfig {
        stemming: false,
        ..PreprocessConfig::default()
    };
    println!("without stemming:   {:?}", preprocess(text, &no_stem));

    let keep_numbers = PreprocessConfig {
        drop_numeric_tokens: false,
        stemming: false,
        ..PreprocessConfig::default()
    };
    println!("numeric kept:       {:?}", preprocess(text, &keep_numbers));

    let no_stopwords = PreprocessConfig {
        stopwords: HashSet::new(),
        stemming: false,
        ..PreprocessConfig::default()
    };
    println!("without stopwords:  {:?}", preprocess(text, &no_stopwords));

    println!();
    println!("stemmer samples:");
    for word in ["acquisition", "acquired", "dividends", "payouts", "relational"] {
        println!("  {word:<12} -> {}", stem(word));
    }
}
