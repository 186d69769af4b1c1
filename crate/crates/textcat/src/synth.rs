//! Synthetic labeled corpora for demos, benchmarks and selection-quality
//! checks.

use rand::prelude::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::corpus::{Corpus, Document, Split};

/// Letters-only spelling of `n` (a=0 .. j=9 per decimal digit), so
/// synthetic tokens survive numeric-token filtering if a generated
/// corpus is round-tripped through preprocessing.
fn alpha(n: usize) -> String {
    n.to_string()
        .bytes()
        .map(|b| (b - b'0' + b'a') as char)
        .collect()
}

/// Configuration for [`planted_corpus`]: one high-frequency
/// class-exclusive term per class over a uniform background vocabulary.
#[derive(Debug, Clone)]
pub struct PlantedConfig {
    pub n_classes: usize,
    pub docs_per_class: usize,
    /// Size of the shared background vocabulary.
    pub background_vocab: usize,
    /// Background tokens drawn per document (uniform with replacement).
    pub background_tokens_per_doc: usize,
    /// Inclusive range of occurrences of the planted term in each
    /// document of its class.
    pub planted_count: (u32, u32),
    pub seed: u64,
}

impl Default for PlantedConfig {
    fn default() -> Self {
        PlantedConfig {
            n_classes: 20,
            docs_per_class: 50,
            background_vocab: 200,
            background_tokens_per_doc: 30,
            planted_count: (5, 12),
            seed: 0,
        }
    }
}

/// Name of the planted term for class `k`, e.g. `plantedah`.
pub fn planted_term(k: usize) -> String {
    format!("planted{}", alpha(k))
}

/// Generate a corpus where every document of class `k` contains the term
/// [`planted_term`]`(k)` several times plus uniform background tokens,
/// and no document of any other class contains it. All documents land in
/// the TRAIN split; use [`Corpus::reassign_split_stratified`] to carve
/// out a test set.
pub fn planted_corpus(config: &PlantedConfig) -> Corpus {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let background: Vec<String> = (0..config.background_vocab)
        .map(|i| format!("bg{}", alpha(i)))
        .collect();
    let mut documents = Vec::with_capacity(config.n_classes * config.docs_per_class);
    for class in 0..config.n_classes {
        let label = format!("class{class:02}");
        let planted = planted_term(class);
        for d in 0..config.docs_per_class {
            let mut tokens = Vec::with_capacity(
                config.background_tokens_per_doc + config.planted_count.1 as usize,
            );
            let reps = rng.random_range(config.planted_count.0..=config.planted_count.1);
            for _ in 0..reps {
                tokens.push(planted.clone());
            }
            for _ in 0..config.background_tokens_per_doc {
                tokens.push(background.choose(&mut rng).unwrap().clone());
            }
            documents.push(Document {
                id: format!("{label}-{d:04}"),
                label: label.clone(),
                split: Split::Train,
                text: tokens.join(" "),
                tokens,
            });
        }
    }
    Corpus::new(documents).expect("synthetic ids are unique")
}

/// A random corpus with per-class token-preference skew, for quick
/// classifier demos: class `k` draws a larger share of its tokens from
/// its own slice of the vocabulary.
pub fn skewed_corpus(
    n_classes: usize,
    docs_per_class: usize,
    vocab_per_class: usize,
    tokens_per_doc: usize,
    skew: f64,
    seed: u64,
) -> Corpus {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut documents = Vec::with_capacity(n_classes * docs_per_class);
    for class in 0..n_classes {
        let label = format!("class{class:02}");
        for d in 0..docs_per_class {
            let mut tokens = Vec::with_capacity(tokens_per_doc);
            for _ in 0..tokens_per_doc {
                let own = rng.random_bool(skew);
                let pick_class = if own {
                    class
                } else {
                    rng.random_range(0..n_classes)
                };
                let term = rng.random_range(0..vocab_per_class);
                tokens.push(format!("w{}x{}", alpha(pick_class), alpha(term)));
            }
            documents.push(Document {
                id: format!("{label}-{d:04}"),
                label: label.clone(),
                split: Split::Train,
                text: tokens.join(" "),
                tokens,
            });
        }
    }
    Corpus::new(documents).expect("synthetic ids are unique")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn planted_terms_are_class_exclusive() {
        let config = PlantedConfig {
            n_classes: 4,
            docs_per_class: 5,
            ..Default::default()
        };
        let corpus = planted_corpus(&config);
        assert_eq!(corpus.len(), 20);
        for doc in corpus.documents() {
            for k in 0..config.n_classes {
                let term = planted_term(k);
                let has = doc.tokens.contains(&term);
                let own = doc.label == format!("class{k:02}");
                assert_eq!(has, own, "doc {} term {}", doc.id, term);
            }
        }
    }

    #[test]
    fn planted_deterministic_in_seed() {
        let config = PlantedConfig::default();
        let a = planted_corpus(&config);
        let b = planted_corpus(&config);
        assert_eq!(
            a.documents().iter().map(|d| &d.tokens).collect::<Vec<_>>(),
            b.documents().iter().map(|d| &d.tokens).collect::<Vec<_>>()
        );
    }

    #[test]
    fn skewed_corpus_shapes() {
        let corpus = skewed_corpus(3, 4, 10, 20, 0.7, 1);
        assert_eq!(corpus.len(), 12);
        assert_eq!(corpus.categories().len(), 3);
        assert!(corpus.documents().iter().all(|d| d.tokens.len() == 20));
    }
}
