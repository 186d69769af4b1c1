//! Score a handful of terms under all seven feature-selection methods
//! and print a comparison table.
//!
//! The corpus is a miniature two-topic collection (acquisitions vs
//! earnings). Note how the t-test separates the topical terms through
//! their frequency profile, while df/tf only see raw popularity.
//!
//! Run: cargo run -p textcat --example score_terms

use textcat::corpus::{preprocess, Corpus, Document, PreprocessConfig, Split};
use textcat::fsel::{score_term, Combiner, Method};
use textcat::termstats::build_stats;

const ACQ: &[&str] = &[
    "Company acquires controlling stake in rival firm; acquisition closes Friday.",
    "The merger adds a large stake; acquired shares transfer to the company.",
    "Takeover bid: the firm acquires a stake and plans further acquisitions.",
    "Analysts expect the acquired stake to grow after the acquisition.",
];

const EARN: &[&str] = &[
    "Quarterly earnings rise; the dividend payout increases with profit.",
    "Net profit up, dividend declared, payout ratio stable, earnings strong.",
    "Revenue and earnings grow; the board raises the dividend payout.",
    "Profit beats estimates and the dividend payout is confirmed.",
];

fn main() {
    let config = PreprocessConfig::default();
    let mut documents = Vec::new();
    for (label, texts) in [("acq", ACQ), ("earn", EARN)] {
        for (i, text) in texts.iter().enumerate() {
            documents.push(Document {
                id: format!("{label}{i}"),
                label: label.to_string(),
                split: Split::Train,
                text: text.to_string(),
                tokens: preprocess(text, &config),
            });
        }
    }
    let corpus = Corpus::new(documents).unwrap();
    let stats = build_stats(&corpus).unwrap();

    let terms = ["acquir", "stake", "payout", "dividend"];
    println!("scores combined with avg over {} categories\n", stats.n_classes());
    print!("{:<10}", "method");
    for term in terms {
        print!("{term:>12}");
    }
    println!();
    println!("{}", "-".repeat(10 + 12 * terms.len()));
    for method in Method::ALL {
        print!("{:<10}", method.to_string());
        for term in terms {
            match stats.term_id(term) {
                Some(t) => {
                    let score = score_term(&stats, method, Combiner::Avg, t);
                    print!("{:>12.3}", score.combined);
                }
                None => print!("{:>12}", "-"),
            }
        }
        println!();
    }
}
