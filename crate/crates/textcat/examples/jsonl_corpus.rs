//! The normalized JSONL interchange format: one object per line with
//! `id`, `label`, `text` and `split`. Every ingester can re-emit it, so
//! it is the canonical way to snapshot a corpus.
//!
//! Run: cargo run -p textcat --example jsonl_corpus

use textcat::corpus::{ingest_jsonl, write_jsonl, Corpus, Document, PreprocessConfig, Split};

fn main() -> anyhow::Result<()> {
    let documents = vec![
        Document {
            id: "r-001".into(),
            label: "acq".into(),
            split: Split::Train,
            text: "Firm acquires a controlling stake in its rival.".into(),
            tokens: Vec::new(),
        },
        Document {
            id: "r-002".into(),
            label: "earn".into(),
            split: Split::Train,
            text: "Earnings rise and the dividend payout is confirmed.".into(),
            tokens: Vec::new(),
        },
        Document {
            id: "r-003".into(),
            label: "acq".into(),
            split: Split::Test,
            text: "Another acquisition: the stake changes hands.".into(),
            tokens: Vec::new(),
        },
    ];
    let corpus = Corpus::new(documents)?;

    let dir = std::env::temp_dir().join("textcat_jsonl_example");
    std::fs::create_dir_all(&dir)?;
    let path = dir.join("corpus.jsonl");
    write_jsonl(&corpus, std::fs::File::create(&path)?)?;

    println!("wrote {}:", path.display());
    for line in std::fs::read_to_string(&path)?.lines() {
        println!("  {line}");
    }

    let mut reread = ingest_jsonl(&path)?;
    reread.preprocess_all(&PreprocessConfig::default());
    println!("\nreingested {} documents, categories {:?}", reread.len(), reread.categories());
    println!("train/test: {}/{}", reread.train().count(), reread.test().count());
    for doc in reread.documents() {
        println!("  {} [{}] -> {:?}", doc.id, doc.label, doc.tokens);
    }
    Ok(())
}
