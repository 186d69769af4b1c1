//! Shared test support: a dense brute-force scoring oracle and random
//! corpus generation.
//!
//! The oracle recomputes every statistic and score from a dense
//! document-term count matrix with plain nested loops. It shares no code
//! with the sparse implementation under test.

#![allow(dead_code)]

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use textcat::corpus::{Corpus, Document, Split};

pub const S_FLOOR: f64 = 1e-9;

/// Dense labeled count matrix: `counts[doc][term]`.
pub struct DenseCorpus {
    pub counts: Vec<Vec<u32>>,
    pub labels: Vec<usize>,
    pub n_classes: usize,
    /// Term strings for column i; ascending, so column index equals the
    /// term id assigned by the sparse path.
    pub terms: Vec<String>,
}

impl DenseCorpus {
    pub fn n_docs(&self) -> usize {
        self.counts.len()
    }

    pub fn class_size(&self, k: usize) -> usize {
        self.labels.iter().filter(|&&l| l == k).count()
    }

    /// Materialize as a TRAIN-only [`Corpus`] with one token repetition
    /// per count.
    pub fn to_corpus(&self) -> Corpus {
        let documents = self
            .counts
            .iter()
            .zip(&self.labels)
            .enumerate()
            .map(|(j, (row, &label))| {
                let mut tokens = Vec::new();
                for (t, &c) in row.iter().enumerate() {
                    for _ in 0..c {
                        tokens.push(self.terms[t].clone());
                    }
                }
                Document {
                    id: format!("doc{j:04}"),
                    label: format!("class{label:02}"),
                    split: Split::Train,
                    text: String::new(),
                    tokens,
                }
            })
            .collect();
        Corpus::new(documents).expect("unique synthetic ids")
    }

    pub fn tf_bar(&self, t: usize) -> f64 {
        let total: u64 = self.counts.iter().map(|row| row[t] as u64).sum();
        total as f64 / self.n_docs() as f64
    }

    pub fn tf_bar_class(&self, t: usize, k: usize) -> f64 {
        let mut total = 0u64;
        let mut n_k = 0usize;
        for (row, &label) in self.counts.iter().zip(&self.labels) {
            if label == k {
                total += row[t] as u64;
                n_k += 1;
            }
        }
        total as f64 / n_k as f64
    }

    /// Pooled within-class deviation by the definition: every document,
    /// including zero counts, enters the inner sum.
    pub fn pooled_s(&self, t: usize) -> f64 {
        let n = self.n_docs();
        let k = self.n_classes;
        let mut ss = 0.0;
        for class in 0..k {
            let mean = self.tf_bar_class(t, class);
            for (row, &label) in self.counts.iter().zip(&self.labels) {
                if label == class {
                    let dev = row[t] as f64 - mean;
                    ss += dev * dev;
                }
            }
        }
        (ss / (n - k) as f64).sqrt()
    }

    pub fn df(&self, t: usize) -> u64 {
        self.counts.iter().filter(|row| row[t] > 0).count() as u64
    }

    pub fn df_class(&self, t: usize, k: usize) -> u64 {
        self.counts
            .iter()
            .zip(&self.labels)
            .filter(|(row, label)| row[t] > 0 && **label == k)
            .count() as u64
    }

    pub fn tf_total(&self, t: usize) -> u64 {
        self.counts.iter().map(|row| row[t] as u64).sum()
    }

    pub fn ttest(&self, t: usize, k: usize) -> f64 {
        let n = self.n_docs() as f64;
        let n_k = self.class_size(k) as f64;
        let m_k = (1.0 / n_k - 1.0 / n).sqrt();
        let s = self.pooled_s(t).max(S_FLOOR);
        (self.tf_bar_class(t, k) - self.tf_bar(t)).abs() / (m_k * s)
    }

    pub fn chi2(&self, t: usize, k: usize) -> f64 {
        let n = self.n_docs() as f64;
        let a = self.df_class(t, k) as f64;
        let b = self.df(t) as f64 - a;
        let c = self.class_size(k) as f64 - a;
        let d = n - a - b - c;
        let denom = (a + c) * (b + d) * (a + b) * (c + d);
        if denom == 0.0 {
            return 0.0;
        }
        n * (a * d - c * b) * (a * d - c * b) / denom
    }

    fn smoothed(&self, t: usize) -> (f64, Vec<f64>, Vec<f64>, Vec<f64>) {
        // Add-one over the 2xK presence/category table.
        let n = self.n_docs() as f64;
        let kk = self.n_classes as f64;
        let denom = n + 2.0 * kk;
        let p_t = (self.df(t) as f64 + kk) / denom;
        let mut p_c = Vec::new();
        let mut p_c_given_t = Vec::new();
        let mut p_c_given_not = Vec::new();
        for k in 0..self.n_classes {
            let n_k = self.class_size(k) as f64;
            let a = self.df_class(t, k) as f64;
            p_c.push((n_k + 2.0) / denom);
            p_c_given_t.push(((a + 1.0) / denom) / p_t);
            p_c_given_not.push(((n_k - a + 1.0) / denom) / (1.0 - p_t));
        }
        (p_t, p_c, p_c_given_t, p_c_given_not)
    }

    pub fn mi(&self, t: usize, k: usize) -> f64 {
        let (p_t, p_c, p_c_given_t, _) = self.smoothed(t);
        (p_c_given_t[k] * p_t / (p_t * p_c[k])).ln()
    }

    pub fn ig(&self, t: usize) -> f64 {
        let (p_t, p_c, p_c_given_t, p_c_given_not) = self.smoothed(t);
        let h = |dist: &[f64]| -> f64 {
            dist.iter()
                .map(|&p| if p > 0.0 { -p * p.ln() } else { 0.0 })
                .sum()
        };
        (h(&p_c) - p_t * h(&p_c_given_t) - (1.0 - p_t) * h(&p_c_given_not)).max(0.0)
    }

    pub fn ece(&self, t: usize) -> f64 {
        let (p_t, p_c, p_c_given_t, _) = self.smoothed(t);
        let kl: f64 = (0..self.n_classes)
            .map(|k| p_c_given_t[k] * (p_c_given_t[k] / p_c[k]).ln())
            .sum();
        (p_t * kl).max(0.0)
    }
}

/// Random dense corpus: 2..=4 classes (each nonempty), N > K docs up to
/// `max_docs`, up to `max_terms` terms each present in at least one doc.
pub fn random_dense(rng: &mut ChaCha8Rng, max_docs: usize, max_terms: usize) -> DenseCorpus {
    let n_classes = rng.random_range(2..=4usize);
    let n_docs = rng.random_range((n_classes + 1)..=max_docs.max(n_classes + 2));
    let n_terms = rng.random_range(1..=max_terms);
    let mut labels: Vec<usize> = (0..n_docs)
        .map(|j| {
            if j < n_classes {
                j // every class gets at least one document
            } else {
                rng.random_range(0..n_classes)
            }
        })
        .collect();
    labels.shuffle(rng);
    let density = rng.random_range(0.1..0.6);
    let mut counts = vec![vec![0u32; n_terms]; n_docs];
    for row in counts.iter_mut() {
        for c in row.iter_mut() {
            if rng.random_bool(density) {
                *c = rng.random_range(1..=8);
            }
        }
    }
    for t in 0..n_terms {
        // Terms absent everywhere would not enter the vocabulary.
        if counts.iter().all(|row| row[t] == 0) {
            let j = rng.random_range(0..n_docs);
            counts[j][t] = rng.random_range(1..=8);
        }
    }
    let terms = (0..n_terms).map(|t| format!("t{t:02}")).collect();
    DenseCorpus {
        counts,
        labels,
        n_classes,
        terms,
    }
}
