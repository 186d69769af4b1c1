//! `textcat` — term-frequency feature selection and text categorization.
//!
//! The toolkit scores vocabulary terms for multi-class text
//! categorization and runs corpus-to-F1 experiments. Its centerpiece is
//! a t-test scorer driven by term frequencies: a term whose mean
//! frequency inside one category differs sharply from its mean over the
//! whole collection (relative to the pooled within-class deviation, and
//! scaled by `m_k = sqrt(1/N_k - 1/N)`) is a strong discriminator for
//! that category, even when document-frequency methods overlook it. The
//! classical baselines — chi-square, information gain, mutual
//! information, expected cross-entropy, document frequency, term
//! frequency — are implemented alongside for comparison.
//!
//! # Pipeline
//!
//! ```text
//! corpus  ->  termstats  ->  fsel  ->  weighting  ->  classify  ->  eval
//! ingest      N, N_k, tf     score     ltc unit       kNN /         F1
//! preprocess  df, means, s   rank      vectors        centroid      report
//! ```
//!
//! - [`corpus`]: JSONL / Reuters ModApte / 20 Newsgroups ingestion,
//!   tokenization, stopwords, Porter stemming, train/test splits.
//! - [`termstats`]: sparse term-document matrix and per-class aggregates
//!   over the training split.
//! - [`fsel`]: the seven scorers, avg/max combiners, top-N selection.
//! - [`weighting`]: ltc (log-tf, idf, cosine-normalized) vectors.
//! - [`classify`]: similarity-weighted kNN and centroid classifiers,
//!   plus sparse-vector adapter files for external classifiers.
//! - [`eval`]: per-class precision/recall/F1, macro-F1, micro-F1.
//! - [`experiment`]: end-to-end sweeps over (method, feature count)
//!   grids with JSON/CSV reporting.
//! - [`synth`]: synthetic corpora for demos and selection-quality checks.
//!
//! # Examples
//!
//! Each major capability has a runnable example:
//!
//! ```bash
//! cargo run -p textcat --example preprocess_tokens
//! cargo run -p textcat --example score_terms
//! cargo run -p textcat --example select_features
//! cargo run -p textcat --example classify_knn
//! cargo run -p textcat --example classify_centroid
//! cargo run -p textcat --example evaluate_predictions
//! cargo run -p textcat --example sweep_experiment
//! cargo run -p textcat --example export_svmlight
//! cargo run -p textcat --example jsonl_corpus
//! ```
//!
//! A thin `textcat` binary exposes the same pipeline as subcommands
//! (`ingest`, `score`, `select`, `run`, `sweep`); see the repository
//! README.

pub mod classify;
pub mod corpus;
pub mod error;
pub mod eval;
pub mod experiment;
pub mod fsel;
pub mod synth;
pub mod termstats;
pub mod weighting;

pub use error::{Error, Result};
