//! Corpus ingestion, preprocessing and train/test splits.
//!
//! Three sources are supported:
//!
//! - normalized JSONL (the toolkit's canonical interchange format): one
//!   object per line with keys `id`, `label`, `text`, `split`;
//! - a Reuters-21578 ModApte directory of preprocessed text files;
//! - a 20 Newsgroups directory (one subdirectory per group), with a
//!   seeded stratified random split.
//!
//! Ingestion keeps the raw text; call [`Corpus::preprocess_all`] (or
//! [`preprocess`] per document) to fill in normalized tokens.

mod porter;
mod stopwords;

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use porter::stem;
pub use stopwords::{load_stopwords, parse_stopwords, smart_stopwords};

/// Which partition a document belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Split {
    Train,
    Test,
}

impl fmt::Display for Split {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Split::Train => "train",
            Split::Test => "test",
        })
    }
}

impl FromStr for Split {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "train" => Ok(Split::Train),
            "test" => Ok(Split::Test),
            other => Err(Error::validation(format!(
                "unknown split {other:?} (expected \"train\" or \"test\")"
            ))),
        }
    }
}

/// One labeled text unit. Exactly one label per document; multi-label
/// sources drop such documents at ingestion.
#[derive(Debug, Clone)]
pub struct Document {
    pub id: String,
    pub label: String,
    pub split: Split,
    /// Raw text as ingested; kept so the corpus can be re-emitted as JSONL.
    pub text: String,
    /// Normalized tokens; empty until preprocessing is applied.
    pub tokens: Vec<String>,
}

/// An immutable collection of documents with a sorted category list.
#[derive(Debug, Clone)]
pub struct Corpus {
    documents: Vec<Document>,
    categories: Vec<String>,
}

impl Corpus {
    /// Build a corpus from documents. Categories are derived from the
    /// labels present, in ascending lexicographic order.
    pub fn new(documents: Vec<Document>) -> Result<Self> {
        let mut seen = HashSet::with_capacity(documents.len());
        for doc in &documents {
            if !seen.insert(doc.id.as_str()) {
                return Err(Error::validation(format!(
                    "duplicate document id {:?}",
                    doc.id
                )));
            }
        }
        let mut categories: Vec<String> = documents
            .iter()
            .map(|d| d.label.clone())
            .collect::<HashSet<_>>()
            .into_iter()
            .collect();
        categories.sort_unstable();
        Ok(Corpus {
            documents,
            categories,
        })
    }

    pub fn documents(&self) -> &[Document] {
        &self.documents
    }

    /// Category identifiers, ascending lexicographic. Category indices used
    /// throughout the toolkit (statistics, classifiers, reports) refer to
    /// positions in this list.
    pub fn categories(&self) -> &[String] {
        &self.categories
    }

    pub fn category_index(&self, label: &str) -> Option<usize> {
        self.categories.binary_search_by(|c| c.as_str().cmp(label)).ok()
    }

    pub fn len(&self) -> usize {
        self.documents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.documents.is_empty()
    }

    pub fn train(&self) -> impl Iterator<Item = &Document> {
        self.documents.iter().filter(|d| d.split == Split::Train)
    }

    pub fn test(&self) -> impl Iterator<Item = &Document> {
        self.documents.iter().filter(|d| d.split == Split::Test)
    }

    /// Tokenize every document with `config`, replacing existing tokens.
    pub fn preprocess_all(&mut self, config: &PreprocessConfig) {
        for doc in &mut self.documents {
            doc.tokens = preprocess(&doc.text, config);
        }
    }

    /// Reassign splits with a seeded uniform random partition per category
    /// at `ratio` (train:test). Deterministic in (content, ratio, seed):
    /// documents are ordered by id within each category before shuffling,
    /// so the result does not depend on input order.
    pub fn reassign_split_stratified(&mut self, ratio: (u32, u32), seed: u64) -> Result<()> {
        let (a, b) = ratio;
        if a == 0 || b == 0 {
            return Err(Error::validation(format!(
                "split ratio {a}:{b} must have nonzero parts"
            )));
        }
        let mut by_label: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
        for (i, doc) in self.documents.iter().enumerate() {
            by_label.entry(doc.label.as_str()).or_default().push(i);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut assign: Vec<Split> = vec![Split::Train; self.documents.len()];
        for (_, mut idx) in by_label {
            idx.sort_by(|&x, &y| self.documents[x].id.cmp(&self.documents[y].id));
            idx.shuffle(&mut rng);
            let n = idx.len();
            let n_train =
                ((n as f64) * (a as f64) / ((a + b) as f64)).round() as usize;
            for (pos, &doc_i) in idx.iter().enumerate() {
                assign[doc_i] = if pos < n_train {
                    Split::Train
                } else {
                    Split::Test
                };
            }
        }
        for (doc, split) in self.documents.iter_mut().zip(assign) {
            doc.split = split;
        }
        Ok(())
    }
}

/// Text normalization settings.
///
/// The pipeline: lowercase, split on any non-alphanumeric character,
/// drop tokens containing digits, drop tokens shorter than
/// `min_token_length`, remove stopwords, stem. Stopwords are filtered
/// again after stemming so no final token is ever a stopword.
#[derive(Debug, Clone)]
pub struct PreprocessConfig {
    pub stopwords: HashSet<String>,
    pub stemming: bool,
    pub drop_numeric_tokens: bool,
    pub lowercase: bool,
    pub min_token_length: usize,
}

impl Default for PreprocessConfig {
    fn default() -> Self {
        PreprocessConfig {
            stopwords: smart_stopwords(),
            stemming: true,
            drop_numeric_tokens: true,
            lowercase: true,
            min_token_length: 2,
        }
    }
}

impl PreprocessConfig {
    /// Default settings with the stopword list read from `path`.
    pub fn with_stopword_file(path: &Path) -> Result<Self> {
        Ok(PreprocessConfig {
            stopwords: load_stopwords(path)?,
            ..Self::default()
        })
    }
}

/// Normalize raw text into a token stream, preserving order.
pub fn preprocess(raw_text: &str, config: &PreprocessConfig) -> Vec<String> {
    let lowered;
    let text: &str = if config.lowercase {
        lowered = raw_text.to_lowercase();
        &lowered
    } else {
        raw_text
    };
    let mut out = Vec::new();
    for token in text.split(|c: char| !c.is_alphanumeric()) {
        if token.is_empty() {
            continue;
        }
        if config.drop_numeric_tokens && token.chars().any(|c| c.is_numeric()) {
            continue;
        }
        if token.chars().count() < config.min_token_length {
            continue;
        }
        if config.stopwords.contains(token) {
            continue;
        }
        let token = if config.stemming {
            let stemmed = stem(token);
            if config.stopwords.contains(&stemmed) {
                continue;
            }
            stemmed
        } else {
            token.to_string()
        };
        out.push(token);
    }
    out
}

#[derive(Serialize, Deserialize)]
struct JsonlRecord {
    id: String,
    label: String,
    text: String,
    split: Split,
}

/// Read a normalized JSONL corpus. Preprocessing is not applied; raw text
/// is retained.
pub fn ingest_jsonl(path: &Path) -> Result<Corpus> {
    let file = fs::File::open(path).map_err(|e| Error::io(path, e))?;
    let reader = BufReader::new(file);
    let mut documents = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| Error::io(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        let record: JsonlRecord = serde_json::from_str(&line).map_err(|e| Error::Parse {
            path: path.display().to_string(),
            line: i + 1,
            msg: e.to_string(),
        })?;
        documents.push(Document {
            id: record.id,
            label: record.label,
            split: record.split,
            text: record.text,
            tokens: Vec::new(),
        });
    }
    Corpus::new(documents)
}

/// Write a corpus in the normalized JSONL interchange format.
pub fn write_jsonl<W: Write>(corpus: &Corpus, mut w: W) -> Result<()> {
    for doc in corpus.documents() {
        let record = JsonlRecord {
            id: doc.id.clone(),
            label: doc.label.clone(),
            text: doc.text.clone(),
            split: doc.split,
        };
        let line = serde_json::to_string(&record)
            .map_err(|e| Error::validation(format!("serialize {}: {e}", doc.id)))?;
        writeln!(w, "{line}").map_err(|e| Error::Io {
            path: "<writer>".into(),
            source: e,
        })?;
    }
    Ok(())
}

/// Read file content as UTF-8, falling back to Latin-1.
fn read_text_lossy(path: &Path) -> Result<String> {
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    Ok(match String::from_utf8(bytes) {
        Ok(s) => s,
        Err(e) => e.into_bytes().iter().map(|&b| b as char).collect(),
    })
}

fn sorted_dir_entries(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut entries: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| Error::io(dir, e))?
        .collect::<std::io::Result<Vec<_>>>()
        .map_err(|e| Error::io(dir, e))?
        .into_iter()
        .map(|e| e.path())
        .collect();
    entries.sort();
    Ok(entries)
}

fn file_name(path: &Path) -> String {
    path.file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_default()
}

/// Ingest a preprocessed Reuters-21578 ModApte distribution.
///
/// Two directory layouts are accepted:
///
/// - `dir/<category>/{train,test}/<file>` — train/test subdirectories
///   per category;
/// - `dir/{train|training,test}/<category>/<file>` — the common
///   "Apte" layout with top-level split directories.
///
/// One file per document; the file name is the document id. A file name
/// that appears under more than one category is a multi-label document
/// and is excluded. The split comes from the directory structure.
/// Category directories with no readable documents are omitted.
pub fn ingest_reuters_modapte(dir: &Path) -> Result<Corpus> {
    if !dir.is_dir() {
        return Err(Error::io(
            dir,
            std::io::Error::new(std::io::ErrorKind::NotFound, "not a directory"),
        ));
    }
    // (category, split, path) for every document file found.
    let mut found: Vec<(String, Split, PathBuf)> = Vec::new();
    let top_split = |name: &str| match name {
        "train" | "training" => Some(Split::Train),
        "test" => Some(Split::Test),
        _ => None,
    };
    let top = sorted_dir_entries(dir)?;
    let is_split_layout = top
        .iter()
        .any(|p| p.is_dir() && top_split(&file_name(p)).is_some());
    if is_split_layout {
        for split_dir in top.iter().filter(|p| p.is_dir()) {
            let Some(split) = top_split(&file_name(split_dir)) else {
                continue;
            };
            for cat_dir in sorted_dir_entries(split_dir)?.iter().filter(|p| p.is_dir()) {
                let category = file_name(cat_dir);
                for file in sorted_dir_entries(cat_dir)?.iter().filter(|p| p.is_file()) {
                    found.push((category.clone(), split, file.clone()));
                }
            }
        }
    } else {
        for cat_dir in top.iter().filter(|p| p.is_dir()) {
            let category = file_name(cat_dir);
            for split_dir in sorted_dir_entries(cat_dir)?.iter().filter(|p| p.is_dir()) {
                let Some(split) = top_split(&file_name(split_dir)) else {
                    continue;
                };
                for file in sorted_dir_entries(split_dir)?.iter().filter(|p| p.is_file()) {
                    found.push((category.clone(), split, file.clone()));
                }
            }
        }
    }

    // Group by document id (file name); keep only single-label documents.
    let mut by_id: BTreeMap<String, Vec<(String, Split, PathBuf)>> = BTreeMap::new();
    for (category, split, path) in found {
        by_id
            .entry(file_name(&path))
            .or_default()
            .push((category, split, path));
    }
    let mut documents = Vec::new();
    for (id, mut entries) in by_id {
        let labels: HashSet<&str> = entries.iter().map(|(c, _, _)| c.as_str()).collect();
        if labels.len() != 1 || entries.len() != 1 {
            continue; // multi-label or ambiguous split
        }
        let (category, split, path) = entries.pop().expect("one entry");
        let text = read_text_lossy(&path)?;
        documents.push(Document {
            id,
            label: category,
            split,
            text,
            tokens: Vec::new(),
        });
    }
    if documents.is_empty() {
        return Err(Error::validation(format!(
            "no readable documents under {}",
            dir.display()
        )));
    }
    Corpus::new(documents)
}

/// Ingest a 20 Newsgroups distribution: one subdirectory per category,
/// one file per document. Only the `Subject:` and `Keywords:` header
/// values and the message body are retained. The train/test split is a
/// seeded stratified random partition at `split_ratio` (train:test).
pub fn ingest_20newsgroups(dir: &Path, split_ratio: (u32, u32), seed: u64) -> Result<Corpus> {
    if !dir.is_dir() {
        return Err(Error::io(
            dir,
            std::io::Error::new(std::io::ErrorKind::NotFound, "not a directory"),
        ));
    }
    let mut documents = Vec::new();
    for cat_dir in sorted_dir_entries(dir)?.iter().filter(|p| p.is_dir()) {
        let category = file_name(cat_dir);
        for file in sorted_dir_entries(cat_dir)?.iter().filter(|p| p.is_file()) {
            let raw = read_text_lossy(file)?;
            documents.push(Document {
                id: format!("{category}/{}", file_name(file)),
                label: category.clone(),
                split: Split::Train, // reassigned below
                text: extract_news_text(&raw),
                tokens: Vec::new(),
            });
        }
    }
    let mut corpus = Corpus::new(documents)?;
    corpus.reassign_split_stratified(split_ratio, seed)?;
    Ok(corpus)
}

/// Keep only the Subject and Keywords header values plus the body of a
/// news message. Header continuation lines (leading whitespace) are
/// folded into the preceding header.
fn extract_news_text(raw: &str) -> String {
    let mut kept = String::new();
    let mut body = String::new();
    let mut header_value: Option<String> = None;
    let mut in_headers = true;
    let flush = |value: &mut Option<String>, kept: &mut String| {
        if let Some(v) = value.take() {
            kept.push_str(&v);
            kept.push('\n');
        }
    };
    for line in raw.lines() {
        if in_headers {
            if line.trim().is_empty() {
                flush(&mut header_value, &mut kept);
                in_headers = false;
                continue;
            }
            if line.starts_with(' ') || line.starts_with('\t') {
                if let Some(v) = header_value.as_mut() {
                    v.push(' ');
                    v.push_str(line.trim());
                }
                continue;
            }
            flush(&mut header_value, &mut kept);
            if let Some(colon) = line.find(':') {
                let name = line[..colon].trim().to_ascii_lowercase();
                if name == "subject" || name == "keywords" || name == "keyword" {
                    header_value = Some(line[colon + 1..].trim().to_string());
                }
            } else {
                // Malformed header line: treat as start of body.
                in_headers = false;
                body.push_str(line);
                body.push('\n');
            }
        } else {
            body.push_str(line);
            body.push('\n');
        }
    }
    flush(&mut header_value, &mut kept);
    kept.push_str(&body);
    kept
}
