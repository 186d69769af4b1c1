//! Sparse term/document statistics over the training split.
//!
//! [`build_stats`] scans the TRAIN documents of a corpus once and
//! produces every aggregate the feature scorers need: per-term document
//! frequencies (global and per class), mean term frequencies (global and
//! per class), total term frequencies, and the pooled within-class
//! standard deviation. Statistics never look at TEST documents.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::corpus::Corpus;
use crate::error::{Error, Result};

pub mod cache;

/// Immutable term/document statistics for one training corpus.
///
/// Terms are identified by dense ids assigned in ascending lexicographic
/// order of the term string. Documents are identified by their index in
/// the training sequence (corpus order restricted to TRAIN).
#[derive(Debug, Clone)]
pub struct TermStats {
    vocab: Vec<String>,
    index: HashMap<String, u32>,
    categories: Vec<String>,
    n_docs: usize,
    class_doc_counts: Vec<usize>,
    doc_class: Vec<u32>,
    /// Per term: (train doc index, frequency), ascending by doc.
    postings: Vec<Vec<(u32, u32)>>,
    df_global: Vec<u32>,
    df_class: Vec<u32>,      // term-major, length |vocab| * K
    tf_total: Vec<u64>,
    tf_bar: Vec<f64>,
    tf_bar_class: Vec<f64>,  // term-major, length |vocab| * K
    s: Vec<f64>,
}

impl TermStats {
    /// Number of training documents (N).
    pub fn n_docs(&self) -> usize {
        self.n_docs
    }

    /// Number of categories (K).
    pub fn n_classes(&self) -> usize {
        self.categories.len()
    }

    /// Training documents in category `k`.
    pub fn class_doc_count(&self, k: usize) -> usize {
        self.class_doc_counts[k]
    }

    pub fn categories(&self) -> &[String] {
        &self.categories
    }

    pub fn vocab(&self) -> &[String] {
        &self.vocab
    }

    pub fn vocab_size(&self) -> usize {
        self.vocab.len()
    }

    pub fn term(&self, term_id: u32) -> &str {
        &self.vocab[term_id as usize]
    }

    pub fn term_id(&self, term: &str) -> Option<u32> {
        self.index.get(term).copied()
    }

    /// Sparse frequency row of one term: (train doc index, frequency).
    pub fn postings(&self, term_id: u32) -> &[(u32, u32)] {
        &self.postings[term_id as usize]
    }

    /// Category index of a training document.
    pub fn doc_class(&self, doc: u32) -> usize {
        self.doc_class[doc as usize] as usize
    }

    /// Documents containing the term at least once.
    pub fn df(&self, term_id: u32) -> u64 {
        self.df_global[term_id as usize] as u64
    }

    /// Documents of category `k` containing the term at least once.
    pub fn df_class(&self, term_id: u32, k: usize) -> u64 {
        self.df_class[term_id as usize * self.categories.len() + k] as u64
    }

    /// Total frequency of the term over all training documents.
    pub fn tf_total(&self, term_id: u32) -> u64 {
        self.tf_total[term_id as usize]
    }

    /// Mean frequency over all training documents.
    pub fn tf_bar(&self, term_id: u32) -> f64 {
        self.tf_bar[term_id as usize]
    }

    /// Mean frequency over the training documents of category `k`.
    pub fn tf_bar_class(&self, term_id: u32, k: usize) -> f64 {
        self.tf_bar_class[term_id as usize * self.categories.len() + k]
    }

    /// Pooled within-class standard deviation of the term's frequency.
    /// Zero when N == K (no degrees of freedom) or when the frequency is
    /// constant within every class.
    pub fn s(&self, term_id: u32) -> f64 {
        self.s[term_id as usize]
    }

    /// Check internal consistency identities. Used by tests and by the
    /// binary cache loader.
    pub fn validate(&self) -> Result<()> {
        let k = self.categories.len();
        if self.class_doc_counts.iter().sum::<usize>() != self.n_docs {
            return Err(Error::validation("class document counts do not sum to N"));
        }
        for term_id in 0..self.vocab.len() {
            let expected: f64 = (0..k)
                .map(|c| self.class_doc_counts[c] as f64 * self.tf_bar_class[term_id * k + c])
                .sum::<f64>()
                / self.n_docs as f64;
            let got = self.tf_bar[term_id];
            if (got - expected).abs() > 1e-9 * expected.abs().max(1.0) {
                return Err(Error::validation(format!(
                    "mean consistency violated for term {:?}",
                    self.vocab[term_id]
                )));
            }
            let df_sum: u32 = (0..k).map(|c| self.df_class[term_id * k + c]).sum();
            if df_sum != self.df_global[term_id] {
                return Err(Error::validation(format!(
                    "df consistency violated for term {:?}",
                    self.vocab[term_id]
                )));
            }
        }
        Ok(())
    }
}

/// Build [`TermStats`] from the TRAIN split of `corpus`.
///
/// Requires at least two categories, each with at least one training
/// document. With exactly one document per category there are no degrees
/// of freedom for the pooled deviation; the build succeeds and every
/// `s` is zero (see [`pooled_deviation`]).
pub fn build_stats(corpus: &Corpus) -> Result<TermStats> {
    let categories = corpus.categories().to_vec();
    let k = categories.len();
    if k < 2 {
        return Err(Error::validation(format!(
            "need at least 2 categories with training documents, got {k}"
        )));
    }
    let train: Vec<_> = corpus.train().collect();
    let n = train.len();
    let mut class_doc_counts = vec![0usize; k];
    let mut doc_class = Vec::with_capacity(n);
    for doc in &train {
        let class = corpus
            .category_index(&doc.label)
            .ok_or_else(|| Error::validation(format!("label {:?} not in categories", doc.label)))?;
        class_doc_counts[class] += 1;
        doc_class.push(class as u32);
    }
    if let Some(empty) = class_doc_counts.iter().position(|&c| c == 0) {
        return Err(Error::validation(format!(
            "category {:?} has no training documents",
            categories[empty]
        )));
    }

    // Vocabulary: lexicographically sorted distinct training tokens.
    let mut vocab: Vec<String> = {
        let mut set: Vec<&str> = train
            .iter()
            .flat_map(|d| d.tokens.iter().map(|t| t.as_str()))
            .collect();
        set.sort_unstable();
        set.dedup();
        set.into_iter().map(|t| t.to_string()).collect()
    };
    vocab.shrink_to_fit();
    let index: HashMap<String, u32> = vocab
        .iter()
        .enumerate()
        .map(|(i, t)| (t.clone(), i as u32))
        .collect();

    let v = vocab.len();
    let mut postings: Vec<Vec<(u32, u32)>> = vec![Vec::new(); v];
    let mut df_global = vec![0u32; v];
    let mut df_class = vec![0u32; v * k];
    let mut tf_total = vec![0u64; v];
    let mut class_sum = vec![0u64; v * k];

    let mut doc_counts: HashMap<u32, u32> = HashMap::new();
    for (j, doc) in train.iter().enumerate() {
        let class = doc_class[j] as usize;
        doc_counts.clear();
        for token in &doc.tokens {
            let tid = index[token.as_str()];
            *doc_counts.entry(tid).or_insert(0) += 1;
        }
        for (&tid, &count) in doc_counts.iter() {
            let t = tid as usize;
            postings[t].push((j as u32, count));
            df_global[t] += 1;
            df_class[t * k + class] += 1;
            tf_total[t] += count as u64;
            class_sum[t * k + class] += count as u64;
        }
    }
    // Per-term postings must be ascending by document for merge joins.
    postings.par_iter_mut().for_each(|p| p.sort_unstable());

    let tf_bar: Vec<f64> = tf_total.iter().map(|&t| t as f64 / n as f64).collect();
    let tf_bar_class: Vec<f64> = class_sum
        .iter()
        .enumerate()
        .map(|(i, &sum)| sum as f64 / class_doc_counts[i % k] as f64)
        .collect();

    // Pooled within-class deviation, absent documents accumulated in
    // closed form per class: sum over nonzeros of (tf - mean)^2 plus
    // (N_k - nnz_k) * mean^2.
    let s: Vec<f64> = (0..v)
        .into_par_iter()
        .map(|t| {
            if n <= k {
                return 0.0;
            }
            let mut ss = 0.0f64;
            let mut nnz = vec![0usize; k];
            for &(doc, count) in &postings[t] {
                let class = doc_class[doc as usize] as usize;
                let dev = count as f64 - tf_bar_class[t * k + class];
                ss += dev * dev;
                nnz[class] += 1;
            }
            for (class, &nz) in nnz.iter().enumerate() {
                let mean = tf_bar_class[t * k + class];
                if mean != 0.0 {
                    ss += (class_doc_counts[class] - nz) as f64 * mean * mean;
                }
            }
            (ss / (n - k) as f64).sqrt()
        })
        .collect();

    Ok(TermStats {
        vocab,
        index,
        categories,
        n_docs: n,
        class_doc_counts,
        doc_class,
        postings,
        df_global,
        df_class,
        tf_total,
        tf_bar,
        tf_bar_class,
        s,
    })
}

/// Recompute the pooled within-class deviation of one term from its
/// sparse frequency row:
/// `s = sqrt( (1/(N-K)) * sum_k sum_{j in C_k} (tf_ij - mean_k)^2 )`,
/// where documents lacking the term contribute `(0 - mean_k)^2`.
///
/// Errors when `N <= K` (zero or negative degrees of freedom).
pub fn pooled_deviation(stats: &TermStats, term_id: u32) -> Result<f64> {
    if (term_id as usize) >= stats.vocab.len() {
        return Err(Error::validation(format!(
            "term id {term_id} out of range (vocabulary size {})",
            stats.vocab.len()
        )));
    }
    let n = stats.n_docs;
    let k = stats.n_classes();
    if n <= k {
        return Err(Error::validation(format!(
            "pooled deviation needs N > K, got N={n}, K={k}"
        )));
    }
    let mut ss = 0.0f64;
    let mut nnz = vec![0usize; k];
    for &(doc, count) in stats.postings(term_id) {
        let class = stats.doc_class(doc);
        let dev = count as f64 - stats.tf_bar_class(term_id, class);
        ss += dev * dev;
        nnz[class] += 1;
    }
    for (class, &nz) in nnz.iter().enumerate() {
        let mean = stats.tf_bar_class(term_id, class);
        if mean != 0.0 {
            ss += (stats.class_doc_count(class) - nz) as f64 * mean * mean;
        }
    }
    Ok((ss / (n - k) as f64).sqrt())
}
