//! Centroid-based classification: one unit-length mean vector per
//! category, cosine against each centroid, argmax.
//!
//! Run: cargo run -p textcat --example classify_centroid

use textcat::classify::{fit, Classifier, ClassifierConfig, ClassifierModel};
use textcat::eval::evaluate_indices;
use textcat::fsel::{select_features, Combiner, FeatureCount, Method};
use textcat::synth::skewed_corpus;
use textcat::termstats::build_stats;
use textcat::weighting::{cosine, Vectorizer};

fn main() {
    let mut corpus = skewed_corpus(4, 45, 60, 35, 0.6, 5);
    corpus.reassign_split_stratified((2, 1), 5).unwrap();
    let stats = build_stats(&corpus).unwrap();

    let features = select_features(&stats, Method::Chi2, Combiner::Avg, FeatureCount::Top(100));
    let vectorizer = Vectorizer::new(&features, &stats);
    let train: Vec<_> = corpus
        .train()
        .map(|doc| {
            let label = corpus.category_index(&doc.label).unwrap();
            (vectorizer.vectorize(doc), label)
        })
        .collect();
    let model = fit(train, corpus.categories().len(), ClassifierConfig::Centroid).unwrap();

    // Centroids are unit vectors; show how distinct the categories are.
    if let ClassifierModel::Centroid(cc) = &model {
        println!("pairwise centroid cosine similarity:");
        let centroids = cc.centroids();
        for i in 0..centroids.len() {
            print!("  {}:", corpus.categories()[i]);
            for j in 0..centroids.len() {
                print!(" {:.3}", cosine(&centroids[i], &centroids[j]));
            }
            println!();
        }
    }

    let gold: Vec<usize> = corpus
        .test()
        .map(|doc| corpus.category_index(&doc.label).unwrap())
        .collect();
    let predicted: Vec<usize> = corpus
        .test()
        .map(|doc| model.predict(&vectorizer.vectorize(doc)))
        .collect();
    let report = evaluate_indices(&gold, &predicted, corpus.categories()).unwrap();
    println!(
        "\nmacro-F1 {:.3}  micro-F1 {:.3} on {} test documents",
        report.macro_f1,
        report.micro_f1,
        gold.len()
    );
}
