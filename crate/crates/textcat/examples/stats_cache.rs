//! The versioned binary cache for training statistics, keyed by a
//! content hash of (corpus, preprocessing config): a changed corpus or
//! config misses the cache instead of serving stale statistics.
//!
//! Run: cargo run -p textcat --example stats_cache

use std::time::Instant;

use textcat::corpus::PreprocessConfig;
use textcat::synth::skewed_corpus;
use textcat::termstats::{build_stats, cache};

fn main() -> anyhow::Result<()> {
    let corpus = skewed_corpus(8, 150, 300, 60, 0.5, 13);
    let config = PreprocessConfig::default();

    let start = Instant::now();
    let stats = build_stats(&corpus)?;
    println!(
        "built statistics for {} docs / {} terms in {:?}",
        stats.n_docs(),
        stats.vocab_size(),
        start.elapsed()
    );

    let dir = std::env::temp_dir().join("textcat_cache_example");
    std::fs::create_dir_all(&dir)?;
    let path = dir.join("stats.bin");
    let key = cache::cache_key(&corpus, &config);
    cache::save(&path, &stats, &key)?;
    println!(
        "cached to {} ({} bytes)",
        path.display(),
        std::fs::metadata(&path)?.len()
    );

    let start = Instant::now();
    let loaded = cache::load(&path, &key)?.expect("same corpus and config");
    println!(
        "cache hit in {:?}; vocabulary matches: {}",
        start.elapsed(),
        loaded.vocab() == stats.vocab()
    );

    // A different preprocessing config changes the key: clean miss.
    let other_config = PreprocessConfig {
        stemming: false,
        ..PreprocessConfig::default()
    };
    let other_key = cache::cache_key(&corpus, &other_config);
    match cache::load(&path, &other_key)? {
        None => println!("different config -> cache miss, as intended"),
        Some(_) => println!("unexpected cache hit"),
    }
    Ok(())
}
