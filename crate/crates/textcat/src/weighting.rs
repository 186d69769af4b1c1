//! ltc document weighting: logarithmic term frequency, inverse document
//! frequency, cosine (unit-length) normalization.
//!
//! For a selected term with in-document frequency `tf > 0` the raw weight
//! is `(1 + ln tf) * ln(N / df)`, with `N` and `df` taken from the
//! training statistics; the vector is then normalized to unit Euclidean
//! length. A document containing no selected terms becomes the flagged
//! zero vector.

use std::collections::HashMap;

use crate::corpus::Document;
use crate::fsel::FeatureSet;
use crate::termstats::TermStats;

/// A sparse nonnegative document vector of unit Euclidean length (or a
/// flagged zero vector). Entries are sorted by term id.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedVector {
    entries: Vec<(u32, f64)>,
    zero: bool,
}

impl WeightedVector {
    /// Build from raw (term id, weight) pairs: drops zero weights, sorts
    /// by term id, sums duplicates, and normalizes to unit length. All
    /// weights must be finite and nonnegative.
    pub fn new(mut raw: Vec<(u32, f64)>) -> Self {
        raw.retain(|&(_, w)| w != 0.0);
        raw.sort_unstable_by_key(|&(t, _)| t);
        let mut entries: Vec<(u32, f64)> = Vec::with_capacity(raw.len());
        for (t, w) in raw {
            debug_assert!(w.is_finite() && w > 0.0);
            match entries.last_mut() {
                Some(last) if last.0 == t => last.1 += w,
                _ => entries.push((t, w)),
            }
        }
        let norm = entries.iter().map(|&(_, w)| w * w).sum::<f64>().sqrt();
        if norm == 0.0 {
            return WeightedVector {
                entries: Vec::new(),
                zero: true,
            };
        }
        for e in &mut entries {
            e.1 /= norm;
        }
        WeightedVector {
            entries,
            zero: false,
        }
    }

    pub fn zero() -> Self {
        WeightedVector {
            entries: Vec::new(),
            zero: true,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.zero
    }

    pub fn entries(&self) -> &[(u32, f64)] {
        &self.entries
    }

    pub fn norm(&self) -> f64 {
        if self.zero {
            0.0
        } else {
            self.entries.iter().map(|&(_, w)| w * w).sum::<f64>().sqrt()
        }
    }
}

/// Cosine similarity of two weighted vectors. Both are unit length, so
/// this is their dot product, clamped to [0, 1]; anything against a zero
/// vector is 0.
pub fn cosine(u: &WeightedVector, v: &WeightedVector) -> f64 {
    if u.zero || v.zero {
        return 0.0;
    }
    let mut dot = 0.0;
    let (mut i, mut j) = (0, 0);
    let (a, b) = (&u.entries, &v.entries);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                dot += a[i].1 * b[j].1;
                i += 1;
                j += 1;
            }
        }
    }
    dot.clamp(0.0, 1.0)
}

/// Reusable ltc vectorizer for one feature set over one training
/// statistics object.
pub struct Vectorizer<'a> {
    stats: &'a TermStats,
    /// idf per vocabulary term; negative marks unselected terms.
    idf: Vec<f64>,
}

impl<'a> Vectorizer<'a> {
    pub fn new(features: &FeatureSet, stats: &'a TermStats) -> Self {
        let n = stats.n_docs() as f64;
        let mut idf = vec![-1.0; stats.vocab_size()];
        for &t in features.selected() {
            let df = stats.df(t);
            if df > 0 {
                idf[t as usize] = (n / df as f64).ln();
            }
        }
        Vectorizer { stats, idf }
    }

    /// ltc-weight one document over the selected features.
    pub fn vectorize(&self, doc: &Document) -> WeightedVector {
        let mut counts: HashMap<u32, u32> = HashMap::new();
        for token in &doc.tokens {
            if let Some(t) = self.stats.term_id(token) {
                if self.idf[t as usize] >= 0.0 {
                    *counts.entry(t).or_insert(0) += 1;
                }
            }
        }
        let raw: Vec<(u32, f64)> = counts
            .into_iter()
            .map(|(t, c)| {
                let w = (1.0 + (c as f64).ln()) * self.idf[t as usize];
                (t, w)
            })
            .collect();
        WeightedVector::new(raw)
    }
}

/// One-shot convenience for [`Vectorizer`].
pub fn vectorize(doc: &Document, features: &FeatureSet, stats: &TermStats) -> WeightedVector {
    Vectorizer::new(features, stats).vectorize(doc)
}
