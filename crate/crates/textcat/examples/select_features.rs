//! Feature selection quality on a planted corpus.
//!
//! Every class has one exclusive high-frequency marker term buried in a
//! uniform background vocabulary. A frequency-aware scorer should pull
//! all the markers into a small top-N set; a popularity score like df
//! cannot, because the background terms dominate document counts.
//!
//! Run: cargo run -p textcat --example select_features

use textcat::fsel::{select_features, Combiner, FeatureCount, Method};
use textcat::synth::{planted_corpus, planted_term, PlantedConfig};
use textcat::termstats::build_stats;

fn main() {
    let config = PlantedConfig {
        n_classes: 10,
        docs_per_class: 40,
        background_vocab: 150,
        background_tokens_per_doc: 25,
        planted_count: (5, 12),
        seed: 7,
    };
    let corpus = planted_corpus(&config);
    let stats = build_stats(&corpus).unwrap();
    println!(
        "{} documents, {} classes, vocabulary {}",
        corpus.len(),
        stats.n_classes(),
        stats.vocab_size()
    );

    let top_n = 20;
    for method in [Method::TTest, Method::Chi2, Method::Ig, Method::Df] {
        let set = select_features(&stats, method, Combiner::Avg, FeatureCount::Top(top_n));
        let selected: Vec<&str> = set.selected().iter().map(|&t| stats.term(t)).collect();
        let recovered = (0..config.n_classes)
            .filter(|&k| selected.contains(&planted_term(k).as_str()))
            .count();
        println!(
            "\n{method}: recovered {recovered}/{} planted terms in top-{top_n}",
            config.n_classes
        );
        println!("  {}", selected.join(" "));
    }
}
