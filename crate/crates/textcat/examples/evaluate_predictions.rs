//! Evaluation report anatomy: per-class precision/recall/F1, macro-F1,
//! micro-F1, confusion matrix, and the JSON serialization.
//!
//! Run: cargo run -p textcat --example evaluate_predictions

use textcat::eval::evaluate;

fn main() {
    let categories: Vec<String> = ["acq", "earn", "grain"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let gold: Vec<String> = ["acq", "acq", "acq", "earn", "earn", "grain", "grain", "grain"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let predicted: Vec<String> = ["acq", "acq", "earn", "earn", "earn", "grain", "acq", "grain"]
        .iter()
        .map(|s| s.to_string())
        .collect();

    let report = evaluate(&gold, &predicted, &categories).unwrap();

    println!("confusion matrix (rows gold, columns predicted):");
    print!("{:>8}", "");
    for c in &categories {
        print!("{c:>8}");
    }
    println!();
    for (i, row) in report.confusion.iter().enumerate() {
        print!("{:>8}", categories[i]);
        for &count in row {
            print!("{count:>8}");
        }
        println!();
    }

    println!("\nper-class metrics:");
    for m in &report.per_class {
        println!(
            "  {:<6} p {:.3}  r {:.3}  f1 {:.3}  support {}",
            m.label, m.precision, m.recall, m.f1, m.support
        );
    }
    println!(
        "\nmacro-F1 {:.4} (mean of per-class F1, all {} categories)",
        report.macro_f1,
        categories.len()
    );
    println!("micro-F1 {:.4} (equals accuracy for single-label tasks)", report.micro_f1);

    println!("\nreport as JSON:\n{}", serde_json::to_string_pretty(&report).unwrap());
}
