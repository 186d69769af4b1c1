//! Full experiment sweep: (method x feature-count) grid over one corpus,
//! per-cell JSON reports plus the aggregate CSV used for plotting
//! feature-count curves.
//!
//! Run: cargo run -p textcat --example sweep_experiment

use textcat::classify::ClassifierKind;
use textcat::corpus::write_jsonl;
use textcat::experiment::{run_experiment, CorpusSource, ExperimentConfig};
use textcat::fsel::{FeatureCount, Method};
use textcat::synth::skewed_corpus;

fn main() -> anyhow::Result<()> {
    // Materialize a synthetic corpus as JSONL so the run is exactly what
    // the CLI would do with --format jsonl.
    let dir = std::env::temp_dir().join("textcat_sweep_example");
    std::fs::create_dir_all(&dir)?;
    let corpus_path = dir.join("corpus.jsonl");
    let mut corpus = skewed_corpus(4, 45, 70, 35, 0.55, 11);
    corpus.reassign_split_stratified((2, 1), 11)?;
    write_jsonl(&corpus, std::fs::File::create(&corpus_path)?)?;

    let mut config = ExperimentConfig::new(
        CorpusSource::Jsonl(corpus_path),
        dir.join("out"),
    );
    config.methods = vec![Method::TTest, Method::Chi2, Method::Ig, Method::Mi, Method::Ece];
    config.feature_counts = vec![
        FeatureCount::Top(50),
        FeatureCount::Top(100),
        FeatureCount::Top(200),
        FeatureCount::All,
    ];
    config.classifier = ClassifierKind::Centroid;

    let results = run_experiment(&config)?;

    println!("aggregate results (also in {}):\n", config.out_dir.join("sweep.csv").display());
    println!("{:<8}{:>12}{:>12}{:>12}", "method", "n_features", "macro_f1", "micro_f1");
    for cell in &results {
        println!(
            "{:<8}{:>12}{:>12.4}{:>12.4}",
            cell.method, cell.n_features, cell.report.macro_f1, cell.report.micro_f1
        );
    }

    let best = results
        .iter()
        .max_by(|a, b| a.report.micro_f1.total_cmp(&b.report.micro_f1))
        .unwrap();
    println!(
        "\nbest micro-F1: {} at {} features ({:.4})",
        best.method, best.n_features, best.report.micro_f1
    );
    Ok(())
}
