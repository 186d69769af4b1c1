//! Classifiers over weighted document vectors: similarity-weighted kNN
//! and the centroid-based classifier, behind one `Classifier` trait so
//! external classifiers (e.g. an SVM driven through the adapter file
//! format below) can be plugged in later.
//!
//! Predictions are category indices into the corpus category list; ties
//! are broken by ascending index, i.e. ascending category identifier.

use std::collections::HashMap;
use std::io::{BufRead, Write};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::weighting::{cosine, WeightedVector};

/// Anything that maps a weighted vector to a category index.
pub trait Classifier {
    fn predict(&self, v: &WeightedVector) -> usize;
}

/// Which built-in classifier to train.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassifierKind {
    Knn,
    Centroid,
}

impl ClassifierKind {
    pub fn tag(self) -> &'static str {
        match self {
            ClassifierKind::Knn => "knn",
            ClassifierKind::Centroid => "centroid",
        }
    }
}

impl std::fmt::Display for ClassifierKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for ClassifierKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "knn" => Ok(ClassifierKind::Knn),
            "centroid" | "cc" => Ok(ClassifierKind::Centroid),
            other => Err(Error::validation(format!(
                "unknown classifier {other:?} (expected \"knn\" or \"centroid\")"
            ))),
        }
    }
}

/// Training configuration. kNN defaults to k = 10.
#[derive(Debug, Clone, Copy)]
pub enum ClassifierConfig {
    Knn { k: usize },
    Centroid,
}

impl ClassifierConfig {
    pub const DEFAULT_KNN_K: usize = 10;

    pub fn kind(&self) -> ClassifierKind {
        match self {
            ClassifierConfig::Knn { .. } => ClassifierKind::Knn,
            ClassifierConfig::Centroid => ClassifierKind::Centroid,
        }
    }
}

/// A fitted model.
#[derive(Debug, Clone)]
pub enum ClassifierModel {
    Knn(KnnClassifier),
    Centroid(CentroidClassifier),
}

impl Classifier for ClassifierModel {
    fn predict(&self, v: &WeightedVector) -> usize {
        match self {
            ClassifierModel::Knn(m) => m.predict(v),
            ClassifierModel::Centroid(m) => m.predict(v),
        }
    }
}

/// Fit a classifier on (vector, category index) training pairs.
pub fn fit(
    train: Vec<(WeightedVector, usize)>,
    n_classes: usize,
    config: ClassifierConfig,
) -> Result<ClassifierModel> {
    if n_classes == 0 {
        return Err(Error::validation("no categories"));
    }
    if let Some(&(_, label)) = train.iter().find(|(_, l)| *l >= n_classes) {
        return Err(Error::validation(format!(
            "label index {label} out of range ({n_classes} categories)"
        )));
    }
    match config {
        ClassifierConfig::Knn { k } => {
            if k == 0 {
                return Err(Error::validation("knn needs k >= 1"));
            }
            if k > train.len() {
                return Err(Error::validation(format!(
                    "knn needs at least k = {k} training vectors, got {}",
                    train.len()
                )));
            }
            let (vectors, labels) = train.into_iter().unzip();
            Ok(ClassifierModel::Knn(KnnClassifier {
                vectors,
                labels,
                n_classes,
                k,
            }))
        }
        ClassifierConfig::Centroid => {
            let mut sums: Vec<HashMap<u32, f64>> = vec![HashMap::new(); n_classes];
            let mut counts = vec![0usize; n_classes];
            for (v, label) in &train {
                counts[*label] += 1;
                for &(t, w) in v.entries() {
                    *sums[*label].entry(t).or_insert(0.0) += w;
                }
            }
            if let Some(empty) = counts.iter().position(|&c| c == 0) {
                return Err(Error::validation(format!(
                    "centroid classifier: category index {empty} has no training vectors"
                )));
            }
            let centroids = sums
                .into_iter()
                .zip(&counts)
                .map(|(sum, &count)| {
                    // Arithmetic mean, then renormalized to unit length.
                    let mean: Vec<(u32, f64)> = sum
                        .into_iter()
                        .map(|(t, w)| (t, w / count as f64))
                        .collect();
                    WeightedVector::new(mean)
                })
                .collect();
            Ok(ClassifierModel::Centroid(CentroidClassifier { centroids }))
        }
    }
}

/// Similarity-weighted kNN: each of the k nearest training vectors votes
/// for its category with weight equal to its cosine similarity.
#[derive(Debug, Clone)]
pub struct KnnClassifier {
    vectors: Vec<WeightedVector>,
    labels: Vec<usize>,
    n_classes: usize,
    k: usize,
}

impl KnnClassifier {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }
}

impl Classifier for KnnClassifier {
    fn predict(&self, v: &WeightedVector) -> usize {
        let mut sims: Vec<(f64, u32)> = self
            .vectors
            .iter()
            .enumerate()
            .map(|(i, t)| (cosine(v, t), i as u32))
            .collect();
        // Deterministic neighbor order: similarity descending, then
        // training index ascending.
        let by_rank = |a: &(f64, u32), b: &(f64, u32)| {
            b.0.total_cmp(&a.0).then_with(|| a.1.cmp(&b.1))
        };
        if self.k < sims.len() {
            sims.select_nth_unstable_by(self.k - 1, by_rank);
            sims.truncate(self.k);
        }
        sims.sort_unstable_by(by_rank);
        let mut scores = vec![0.0f64; self.n_classes];
        for &(sim, i) in &sims {
            scores[self.labels[i as usize]] += sim;
        }
        argmax(&scores)
    }
}

/// Centroid-based classifier: one unit-length mean vector per category;
/// predicts the centroid with the highest cosine similarity.
#[derive(Debug, Clone)]
pub struct CentroidClassifier {
    centroids: Vec<WeightedVector>,
}

impl CentroidClassifier {
    pub fn centroids(&self) -> &[WeightedVector] {
        &self.centroids
    }
}

impl Classifier for CentroidClassifier {
    fn predict(&self, v: &WeightedVector) -> usize {
        let scores: Vec<f64> = self.centroids.iter().map(|c| cosine(v, c)).collect();
        argmax(&scores)
    }
}

/// Index of the strict maximum; earlier index wins ties.
fn argmax(scores: &[f64]) -> usize {
    let mut best = 0;
    for (i, &s) in scores.iter().enumerate().skip(1) {
        if s > scores[best] {
            best = i;
        }
    }
    best
}

/// Write (vector, category index) pairs in the sparse line format used
/// by common SVM tools: `<label> <index>:<value> ...`, with 1-based
/// labels and term indices, entries ascending by index. This is the
/// training/prediction interchange for external classifiers.
pub fn write_svmlight<W: Write>(w: &mut W, data: &[(WeightedVector, usize)]) -> Result<()> {
    for (v, label) in data {
        write!(w, "{}", label + 1).map_err(wio)?;
        for &(t, weight) in v.entries() {
            write!(w, " {}:{}", t + 1, weight).map_err(wio)?;
        }
        writeln!(w).map_err(wio)?;
    }
    Ok(())
}

/// Read one 1-based label per line, as produced by external classifier
/// prediction runs. Blank lines are ignored.
pub fn read_label_predictions<R: BufRead>(r: R) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for (i, line) in r.lines().enumerate() {
        let line = line.map_err(|e| Error::Io {
            path: "<reader>".into(),
            source: e,
        })?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        // Some tools emit labels as floats ("3.0").
        let value: f64 = line.split_whitespace().next().unwrap().parse().map_err(|_| {
            Error::Parse {
                path: "<predictions>".into(),
                line: i + 1,
                msg: format!("expected a numeric label, got {line:?}"),
            }
        })?;
        let label = value as i64;
        if label < 1 {
            return Err(Error::Parse {
                path: "<predictions>".into(),
                line: i + 1,
                msg: format!("label {label} is not a positive index"),
            });
        }
        out.push((label - 1) as usize);
    }
    Ok(out)
}

fn wio(e: std::io::Error) -> Error {
    Error::Io {
        path: "<writer>".into(),
        source: e,
    }
}
