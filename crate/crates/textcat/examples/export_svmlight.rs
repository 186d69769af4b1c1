//! External-classifier adapter: export ltc vectors in the sparse
//! `<label> <index>:<value>` line format read by common SVM tools, and
//! score predictions read back from such a tool.
//!
//! Run: cargo run -p textcat --example export_svmlight

use textcat::classify::{read_label_predictions, write_svmlight};
use textcat::eval::evaluate_indices;
use textcat::fsel::{select_features, Combiner, FeatureCount, Method};
use textcat::synth::skewed_corpus;
use textcat::termstats::build_stats;
use textcat::weighting::Vectorizer;

fn main() -> anyhow::Result<()> {
    let mut corpus = skewed_corpus(3, 20, 40, 25, 0.6, 2);
    corpus.reassign_split_stratified((2, 1), 2)?;
    let stats = build_stats(&corpus)?;
    let features = select_features(&stats, Method::TTest, Combiner::Avg, FeatureCount::Top(60));
    let vectorizer = Vectorizer::new(&features, &stats);

    let train: Vec<_> = corpus
        .train()
        .map(|doc| {
            let label = corpus.category_index(&doc.label).unwrap();
            (vectorizer.vectorize(doc), label)
        })
        .collect();

    let dir = std::env::temp_dir().join("textcat_svmlight_example");
    std::fs::create_dir_all(&dir)?;
    let train_path = dir.join("train.svm");
    let mut file = std::fs::File::create(&train_path)?;
    write_svmlight(&mut file, &train)?;
    println!("wrote {} training vectors to {}", train.len(), train_path.display());

    let first = std::fs::read_to_string(&train_path)?;
    println!("first lines of the adapter file:");
    for line in first.lines().take(3) {
        let shown: String = line.chars().take(76).collect();
        println!("  {shown}...");
    }

    // An external tool would train on train.svm and emit one predicted
    // label per test line; simulate that with the gold labels plus a
    // couple of mistakes.
    let gold: Vec<usize> = corpus
        .test()
        .map(|doc| corpus.category_index(&doc.label).unwrap())
        .collect();
    let simulated: String = gold
        .iter()
        .enumerate()
        .map(|(i, &label)| {
            let noisy = if i % 7 == 0 { (label + 1) % 3 } else { label };
            format!("{}\n", noisy + 1)
        })
        .collect();
    let predictions = read_label_predictions(simulated.as_bytes())?;
    let report = evaluate_indices(&gold, &predictions, corpus.categories())?;
    println!(
        "\nevaluating the round-tripped predictions: micro-F1 {:.3}, macro-F1 {:.3}",
        report.micro_f1, report.macro_f1
    );
    Ok(())
}
