//! End-to-end experiment orchestration: ingest, preprocess, build
//! statistics, select features, weight, classify, evaluate.
//!
//! A sweep runs the full (method x feature-count) grid, writes one JSON
//! report per cell plus an aggregate CSV
//! (`method,n_features,macro_f1,micro_f1`), and is fully deterministic
//! given the seed: given the same config, reruns produce byte-identical
//! outputs.

use std::collections::HashMap;
use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::classify::{fit, Classifier, ClassifierConfig, ClassifierKind};
use crate::corpus::{
    ingest_20newsgroups, ingest_jsonl, ingest_reuters_modapte, Corpus, PreprocessConfig,
};
use crate::error::{Error, Result};
use crate::eval::{evaluate_indices, EvalReport};
use crate::fsel::{
    rank, score_term, select_features, Combiner, FeatureCount, FeatureScore, Method,
};
use crate::termstats::{build_stats, TermStats};
use crate::weighting::Vectorizer;

/// Feature-count grid used for Reuters-21578 sweeps when none is given.
pub const REUTERS_GRID: [FeatureCount; 10] = [
    FeatureCount::All,
    FeatureCount::Top(17000),
    FeatureCount::Top(15000),
    FeatureCount::Top(13000),
    FeatureCount::Top(11000),
    FeatureCount::Top(10000),
    FeatureCount::Top(8000),
    FeatureCount::Top(6000),
    FeatureCount::Top(4000),
    FeatureCount::Top(2000),
];

/// Feature-count grid used for 20 Newsgroups sweeps when none is given.
pub const NEWS20_GRID: [FeatureCount; 6] = [
    FeatureCount::All,
    FeatureCount::Top(2000),
    FeatureCount::Top(1500),
    FeatureCount::Top(1000),
    FeatureCount::Top(500),
    FeatureCount::Top(200),
];

/// Corpus location and on-disk format.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CorpusSource {
    Jsonl(PathBuf),
    Reuters(PathBuf),
    News20(PathBuf),
}

impl CorpusSource {
    pub fn from_format(format: &str, path: PathBuf) -> Result<Self> {
        match format {
            "jsonl" => Ok(CorpusSource::Jsonl(path)),
            "reuters" => Ok(CorpusSource::Reuters(path)),
            "20ng" | "20news" | "newsgroups" => Ok(CorpusSource::News20(path)),
            other => Err(Error::validation(format!(
                "unknown corpus format {other:?} (expected jsonl, reuters or 20ng)"
            ))),
        }
    }

    pub fn path(&self) -> &Path {
        match self {
            CorpusSource::Jsonl(p) | CorpusSource::Reuters(p) | CorpusSource::News20(p) => p,
        }
    }

    /// The default sweep grid for this corpus family.
    pub fn default_grid(&self) -> Vec<FeatureCount> {
        match self {
            CorpusSource::News20(_) => NEWS20_GRID.to_vec(),
            _ => REUTERS_GRID.to_vec(),
        }
    }
}

/// Everything one experiment needs.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub source: CorpusSource,
    pub preprocess: PreprocessConfig,
    pub methods: Vec<Method>,
    pub combiner: Combiner,
    pub feature_counts: Vec<FeatureCount>,
    pub classifier: ClassifierKind,
    pub knn_k: usize,
    /// Train:test ratio, used where the source has no inherent split.
    pub split_ratio: (u32, u32),
    pub seed: u64,
    pub out_dir: PathBuf,
}

impl ExperimentConfig {
    pub fn new(source: CorpusSource, out_dir: PathBuf) -> Self {
        ExperimentConfig {
            source,
            preprocess: PreprocessConfig::default(),
            methods: vec![Method::TTest],
            combiner: Combiner::Avg,
            feature_counts: vec![FeatureCount::All],
            classifier: ClassifierKind::Knn,
            knn_k: ClassifierConfig::DEFAULT_KNN_K,
            split_ratio: (2, 1),
            seed: 42,
            out_dir,
        }
    }

    /// Check everything that can fail before any work is done.
    pub fn validate(&self) -> Result<()> {
        if self.methods.is_empty() {
            return Err(Error::validation("at least one method is required"));
        }
        if self.feature_counts.is_empty() {
            return Err(Error::validation("at least one feature count is required"));
        }
        if self.knn_k == 0 {
            return Err(Error::validation("knn k must be at least 1"));
        }
        if self.split_ratio.0 == 0 || self.split_ratio.1 == 0 {
            return Err(Error::validation("split ratio parts must be nonzero"));
        }
        if self.preprocess.min_token_length == 0 {
            return Err(Error::validation("min token length must be at least 1"));
        }
        Ok(())
    }
}

/// Result of one (method, feature count) cell.
#[derive(Debug, Clone, Serialize)]
pub struct CellResult {
    pub method: String,
    pub combiner: String,
    pub requested: String,
    pub n_features: usize,
    pub classifier: String,
    pub report: EvalReport,
}

impl CellResult {
    fn cell_name(&self) -> String {
        format!("{}_{}", self.method, self.requested)
    }
}

/// Load and preprocess the configured corpus.
pub fn load_corpus(config: &ExperimentConfig) -> Result<Corpus> {
    let mut corpus = match &config.source {
        CorpusSource::Jsonl(path) => ingest_jsonl(path)?,
        CorpusSource::Reuters(dir) => ingest_reuters_modapte(dir)?,
        CorpusSource::News20(dir) => {
            ingest_20newsgroups(dir, config.split_ratio, config.seed)?
        }
    };
    corpus.preprocess_all(&config.preprocess);
    Ok(corpus)
}

/// Run the full grid. Writes `report_<method>_<count>.json` per cell and
/// `sweep.csv` with one row per cell, and returns the cell results in
/// grid order (methods outer, counts inner).
pub fn run_experiment(config: &ExperimentConfig) -> Result<Vec<CellResult>> {
    config.validate()?;
    let corpus = load_corpus(config)?;
    let stats = build_stats(&corpus)?;
    let results = run_cells(config, &corpus, &stats)?;

    fs::create_dir_all(&config.out_dir).map_err(|e| Error::io(&config.out_dir, e))?;
    for cell in &results {
        let path = config.out_dir.join(format!("report_{}.json", cell.cell_name()));
        let json = serde_json::to_string_pretty(cell)
            .map_err(|e| Error::validation(format!("serialize report: {e}")))?;
        fs::write(&path, json).map_err(|e| Error::io(&path, e))?;
    }
    let csv_path = config.out_dir.join("sweep.csv");
    let mut csv = Vec::new();
    write_aggregate_csv(&mut csv, &results).map_err(|e| Error::io(&csv_path, e))?;
    fs::write(&csv_path, csv).map_err(|e| Error::io(&csv_path, e))?;
    Ok(results)
}

/// The aggregate CSV: `method,n_features,macro_f1,micro_f1`.
pub fn write_aggregate_csv<W: Write>(w: &mut W, results: &[CellResult]) -> std::io::Result<()> {
    writeln!(w, "method,n_features,macro_f1,micro_f1")?;
    for cell in results {
        writeln!(
            w,
            "{},{},{:.6},{:.6}",
            cell.method, cell.n_features, cell.report.macro_f1, cell.report.micro_f1
        )?;
    }
    Ok(())
}

/// Run every (method, feature count) cell against prebuilt statistics.
/// Cells are independent and run in parallel; results keep grid order.
pub fn run_cells(
    config: &ExperimentConfig,
    corpus: &Corpus,
    stats: &TermStats,
) -> Result<Vec<CellResult>> {
    let train_docs: Vec<_> = corpus.train().collect();
    let test_docs: Vec<_> = corpus.test().collect();
    if test_docs.is_empty() {
        return Err(Error::validation("no test documents to evaluate"));
    }
    let label_of = |doc: &crate::corpus::Document| -> Result<usize> {
        corpus
            .category_index(&doc.label)
            .ok_or_else(|| Error::validation(format!("label {:?} not in categories", doc.label)))
    };
    let train_labels = train_docs
        .iter()
        .map(|d| label_of(d))
        .collect::<Result<Vec<_>>>()?;
    let test_labels = test_docs
        .iter()
        .map(|d| label_of(d))
        .collect::<Result<Vec<_>>>()?;

    let cells: Vec<(Method, FeatureCount)> = config
        .methods
        .iter()
        .flat_map(|&m| config.feature_counts.iter().map(move |&n| (m, n)))
        .collect();

    cells
        .par_iter()
        .map(|&(method, count)| {
            run_cell(
                config,
                corpus,
                stats,
                &train_docs,
                &train_labels,
                &test_docs,
                &test_labels,
                method,
                count,
            )
            .map_err(|e| {
                Error::validation(format!("cell {method}/{count} failed: {e}"))
            })
        })
        .collect()
}

#[allow(clippy::too_many_arguments)]
fn run_cell(
    config: &ExperimentConfig,
    corpus: &Corpus,
    stats: &TermStats,
    train_docs: &[&crate::corpus::Document],
    train_labels: &[usize],
    test_docs: &[&crate::corpus::Document],
    test_labels: &[usize],
    method: Method,
    count: FeatureCount,
) -> Result<CellResult> {
    let features = select_features(stats, method, config.combiner, count);
    let vectorizer = Vectorizer::new(&features, stats);
    let train: Vec<_> = train_docs
        .par_iter()
        .zip(train_labels.par_iter())
        .map(|(doc, &label)| (vectorizer.vectorize(doc), label))
        .collect();
    let classifier_config = match config.classifier {
        ClassifierKind::Knn => ClassifierConfig::Knn { k: config.knn_k },
        ClassifierKind::Centroid => ClassifierConfig::Centroid,
    };
    let model = fit(train, corpus.categories().len(), classifier_config)?;
    let predicted: Vec<usize> = test_docs
        .par_iter()
        .map(|doc| model.predict(&vectorizer.vectorize(doc)))
        .collect();
    let report = evaluate_indices(test_labels, &predicted, corpus.categories())?;
    Ok(CellResult {
        method: method.tag().to_string(),
        combiner: config.combiner.tag().to_string(),
        requested: count.to_string(),
        n_features: features.size(),
        classifier: config.classifier.tag().to_string(),
        report,
    })
}

/// One row of a term-score dump.
#[derive(Debug, Clone)]
pub struct ScoreRow {
    pub term: String,
    pub method: Method,
    /// None when the term is not in the training vocabulary.
    pub score: Option<FeatureScore>,
}

/// Score the requested terms under the requested methods against
/// prebuilt statistics. Unknown terms produce rows with empty scores and
/// a warning on the `warnings` sink. Rows are grouped by method in
/// request order; within a method they are ordered by descending
/// combined score, ties by ascending term.
pub fn dump_scores(
    stats: &TermStats,
    terms: &[String],
    methods: &[Method],
    combiner: Combiner,
    warnings: &mut Vec<String>,
) -> Vec<ScoreRow> {
    let mut known: Vec<u32> = Vec::new();
    let mut unknown: Vec<String> = Vec::new();
    for term in terms {
        match stats.term_id(term) {
            Some(t) if !known.contains(&t) => known.push(t),
            Some(_) => {}
            None if !unknown.contains(term) => unknown.push(term.clone()),
            None => {}
        }
    }
    unknown.sort_unstable();
    for term in &unknown {
        warnings.push(format!("term {term:?} not in training vocabulary"));
    }
    let mut rows = Vec::new();
    for &method in methods {
        let mut scored: Vec<FeatureScore> = known
            .iter()
            .map(|&t| score_term(stats, method, combiner, t))
            .collect();
        rank(stats, &mut scored);
        for score in scored {
            rows.push(ScoreRow {
                term: stats.term(score.term_id).to_string(),
                method,
                score: Some(score),
            });
        }
        for term in &unknown {
            rows.push(ScoreRow {
                term: term.clone(),
                method,
                score: None,
            });
        }
    }
    rows
}

/// Write score-dump rows as CSV with the same column layout as
/// [`crate::fsel::write_score_csv`]; unknown terms get empty cells.
pub fn write_dump_csv<W: Write>(
    w: &mut W,
    stats: &TermStats,
    rows: &[ScoreRow],
    combiner: Combiner,
) -> std::io::Result<()> {
    write!(w, "term,method,combiner,combined")?;
    for cat in stats.categories() {
        write!(w, ",{cat}")?;
    }
    writeln!(w)?;
    for row in rows {
        match &row.score {
            Some(score) => {
                write!(w, "{},{},{},{:.6}", row.term, row.method, combiner, score.combined)?;
                for k in 0..stats.n_classes() {
                    match score.per_class.get(k) {
                        Some(v) => write!(w, ",{v:.6}")?,
                        None => write!(w, ",")?,
                    }
                }
                writeln!(w)?;
            }
            None => {
                write!(w, "{},{},{},", row.term, row.method, combiner)?;
                for _ in 0..stats.n_classes() {
                    write!(w, ",")?;
                }
                writeln!(w)?;
            }
        }
    }
    Ok(())
}

/// A flat `key = value` config file; every CLI flag has a config twin
/// under the same name (e.g. `method = ttest,chi2`). `#` starts a
/// comment; later keys override earlier ones.
#[derive(Debug, Clone, Default)]
pub struct FileConfig {
    values: HashMap<String, String>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let content = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&content, path)
    }

    pub fn parse(content: &str, path: &Path) -> Result<Self> {
        let mut values = HashMap::new();
        for (i, line) in content.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(Error::Parse {
                    path: path.display().to_string(),
                    line: i + 1,
                    msg: format!("expected `key = value`, got {line:?}"),
                });
            };
            values.insert(key.trim().to_string(), value.trim().to_string());
        }
        Ok(FileConfig { values })
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(|s| s.as_str())
    }

    pub fn get_parsed<T>(&self, key: &str) -> Result<Option<T>>
    where
        T: FromStr,
        T::Err: fmt::Display,
    {
        match self.get(key) {
            None => Ok(None),
            Some(raw) => raw
                .parse::<T>()
                .map(Some)
                .map_err(|e| Error::validation(format!("config key {key:?}: {e}"))),
        }
    }

    /// Comma-separated list value.
    pub fn get_list<T>(&self, key: &str) -> Result<Option<Vec<T>>>
    where
        T: FromStr,
        T::Err: fmt::Display,
    {
        match self.get(key) {
            None => Ok(None),
            Some(raw) => parse_list(raw)
                .map(Some)
                .map_err(|e| Error::validation(format!("config key {key:?}: {e}"))),
        }
    }
}

/// Parse a comma-separated list of `T`.
pub fn parse_list<T>(raw: &str) -> std::result::Result<Vec<T>, T::Err>
where
    T: FromStr,
{
    raw.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(str::parse)
        .collect()
}

/// Parse a `a:b` ratio such as `2:1`.
pub fn parse_ratio(raw: &str) -> Result<(u32, u32)> {
    let err = || Error::validation(format!("invalid split ratio {raw:?} (expected e.g. 2:1)"));
    let (a, b) = raw.split_once(':').ok_or_else(err)?;
    let a: u32 = a.trim().parse().map_err(|_| err())?;
    let b: u32 = b.trim().parse().map_err(|_| err())?;
    if a == 0 || b == 0 {
        return Err(err());
    }
    Ok((a, b))
}
