//! Weighted kNN classification end to end on a synthetic corpus:
//! stratified split, t-test feature selection, ltc vectors, cosine kNN.
//!
//! Run: cargo run -p textcat --example classify_knn

use textcat::classify::{fit, Classifier, ClassifierConfig};
use textcat::eval::evaluate_indices;
use textcat::fsel::{select_features, Combiner, FeatureCount, Method};
use textcat::synth::skewed_corpus;
use textcat::termstats::build_stats;
use textcat::weighting::Vectorizer;

fn main() {
    let mut corpus = skewed_corpus(5, 60, 80, 40, 0.55, 21);
    corpus.reassign_split_stratified((2, 1), 21).unwrap();
    let stats = build_stats(&corpus).unwrap();
    println!(
        "{} train / {} test documents, vocabulary {}",
        corpus.train().count(),
        corpus.test().count(),
        stats.vocab_size()
    );

    let features = select_features(&stats, Method::TTest, Combiner::Avg, FeatureCount::Top(150));
    let vectorizer = Vectorizer::new(&features, &stats);

    let train: Vec<_> = corpus
        .train()
        .map(|doc| {
            let label = corpus.category_index(&doc.label).unwrap();
            (vectorizer.vectorize(doc), label)
        })
        .collect();
    let model = fit(train, corpus.categories().len(), ClassifierConfig::Knn { k: 10 }).unwrap();

    let gold: Vec<usize> = corpus
        .test()
        .map(|doc| corpus.category_index(&doc.label).unwrap())
        .collect();
    let predicted: Vec<usize> = corpus
        .test()
        .map(|doc| model.predict(&vectorizer.vectorize(doc)))
        .collect();
    let report = evaluate_indices(&gold, &predicted, corpus.categories()).unwrap();

    println!("\nper-class F1 (k = 10, 150 features):");
    for metrics in &report.per_class {
        println!(
            "  {:<8} precision {:.3}  recall {:.3}  f1 {:.3}  support {}",
            metrics.label, metrics.precision, metrics.recall, metrics.f1, metrics.support
        );
    }
    println!(
        "\nmacro-F1 {:.3}  micro-F1 {:.3}  accuracy {:.3}",
        report.macro_f1,
        report.micro_f1,
        report.accuracy()
    );
}
