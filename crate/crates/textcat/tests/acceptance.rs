//! Acceptance suite: one test per criterion, each printing a PASS/SKIP
//! line (visible with `--nocapture`).

mod common;

use std::path::PathBuf;
use std::time::Instant;

use approx::assert_relative_eq;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use common::{random_dense, DenseCorpus};
use textcat::classify::ClassifierKind;
use textcat::corpus::{Corpus, Document, PreprocessConfig, Split};
use textcat::eval::evaluate_indices;
use textcat::experiment::{run_cells, CorpusSource, ExperimentConfig};
use textcat::fsel::{
    chi2_score, combine, df_score, ece_score, ig_score, mi_score, select_features, tf_score,
    ttest_score, Combiner, FeatureCount, Method,
};
use textcat::synth::{planted_corpus, planted_term, PlantedConfig};
use textcat::termstats::build_stats;

/// Criterion 1: every scorer matches the dense brute-force oracle on 200
/// random corpora (docs <= 50, terms <= 30, classes <= 4) to 1e-9
/// relative, in under 10 seconds.
#[test]
fn acceptance_1_oracle_equivalence() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xC0FFEE);
    for case in 0..200 {
        let dense = random_dense(&mut rng, 50, 30);
        let corpus = dense.to_corpus();
        let stats = build_stats(&corpus).expect("valid random corpus");
        assert_eq!(stats.vocab_size(), dense.terms.len(), "case {case}");
        for t in 0..dense.terms.len() {
            let tid = t as u32;
            for k in 0..dense.n_classes {
                assert_relative_eq!(
                    ttest_score(&stats, tid, k).unwrap(),
                    dense.ttest(t, k),
                    max_relative = 1e-9,
                    epsilon = 1e-12
                );
                assert_relative_eq!(
                    chi2_score(&stats, tid, k).unwrap(),
                    dense.chi2(t, k),
                    max_relative = 1e-9,
                    epsilon = 1e-12
                );
                assert_relative_eq!(
                    mi_score(&stats, tid, k).unwrap(),
                    dense.mi(t, k),
                    max_relative = 1e-9,
                    epsilon = 1e-12
                );
            }
            assert_relative_eq!(
                ig_score(&stats, tid).unwrap(),
                dense.ig(t),
                max_relative = 1e-9,
                epsilon = 1e-12
            );
            assert_relative_eq!(
                ece_score(&stats, tid).unwrap(),
                dense.ece(t),
                max_relative = 1e-9,
                epsilon = 1e-12
            );
            assert_eq!(df_score(&stats, tid).unwrap(), dense.df(t), "case {case}");
            assert_eq!(tf_score(&stats, tid).unwrap(), dense.tf_total(t), "case {case}");
        }
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs_f64() < 10.0,
        "oracle equivalence took {elapsed:?} (budget 10s)"
    );
    println!("ACCEPTANCE 1 oracle equivalence: PASS (200 corpora, 7 scorers, {elapsed:?})");
}

/// Criterion 2: over 10,000 replicate corpora of i.i.d. per-document
/// term counts (Binomial(20, 0.3) occurrences per document), the
/// empirical Var(mean_k - mean) matches (1/N_k - 1/N) sigma^2 within 10%
/// relative, in under 30 seconds.
#[test]
fn acceptance_2_variance_monte_carlo() {
    let start = Instant::now();
    const REPLICATES: usize = 10_000;
    const N: usize = 40;
    const N_K: usize = 10; // class "a" holds the first 10 documents
    const TRIALS: u32 = 20;
    const P: f64 = 0.3;
    let sigma2 = TRIALS as f64 * P * (1.0 - P);
    let expected = (1.0 / N_K as f64 - 1.0 / N as f64) * sigma2;

    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut diffs = Vec::with_capacity(REPLICATES);
    for _ in 0..REPLICATES {
        let docs: Vec<Document> = (0..N)
            .map(|j| {
                let count = (0..TRIALS).filter(|_| rng.random_bool(P)).count();
                Document {
                    id: format!("d{j}"),
                    label: if j < N_K { "a".into() } else { "b".into() },
                    split: Split::Train,
                    text: String::new(),
                    tokens: vec!["t".to_string(); count],
                }
            })
            .collect();
        let stats = build_stats(&Corpus::new(docs).unwrap()).unwrap();
        let t = stats.term_id("t").expect("term always present");
        diffs.push(stats.tf_bar_class(t, 0) - stats.tf_bar(t));
    }
    let mean = diffs.iter().sum::<f64>() / diffs.len() as f64;
    let var = diffs.iter().map(|d| (d - mean) * (d - mean)).sum::<f64>()
        / (diffs.len() - 1) as f64;
    let rel = (var - expected).abs() / expected;
    assert!(
        rel <= 0.10,
        "empirical variance {var:.6} vs theoretical {expected:.6} (relative error {rel:.4})"
    );
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs_f64() < 30.0,
        "variance check took {elapsed:?} (budget 30s)"
    );
    println!(
        "ACCEPTANCE 2 variance monte carlo: PASS (var {var:.4} vs {expected:.4}, rel {rel:.4}, {elapsed:?})"
    );
}

/// Criterion 3: the 4-doc/2-class hand-computed fixture yields s = 1,
/// m_k = 0.5, per-class t-test 3.0, avg 6.0, max 3.0, all to 1e-12.
#[test]
fn acceptance_3_hand_computed_fixture() {
    let doc = |id: &str, label: &str, tokens: &[&str]| Document {
        id: id.into(),
        label: label.into(),
        split: Split::Train,
        text: String::new(),
        tokens: tokens.iter().map(|t| t.to_string()).collect(),
    };
    let corpus = Corpus::new(vec![
        doc("d1", "c1", &["x", "x"]),
        doc("d2", "c1", &["x", "x", "x", "x"]),
        doc("d3", "c2", &["y"]),
        doc("d4", "c2", &["y", "y"]),
    ])
    .unwrap();
    let stats = build_stats(&corpus).unwrap();
    let x = stats.term_id("x").unwrap();
    let close = |a: f64, b: f64| (a - b).abs() <= 1e-12;
    assert!(close(stats.s(x), 1.0), "s = {}", stats.s(x));
    let n = stats.n_docs() as f64;
    let m_1 = (1.0 / stats.class_doc_count(0) as f64 - 1.0 / n).sqrt();
    assert!(close(m_1, 0.5), "m_k = {m_1}");
    let t1 = ttest_score(&stats, x, 0).unwrap();
    let t2 = ttest_score(&stats, x, 1).unwrap();
    assert!(close(t1, 3.0), "t-test(c1) = {t1}");
    assert!(close(t2, 3.0), "t-test(c2) = {t2}");
    let avg = combine(&[t1, t2], Combiner::Avg).unwrap();
    let max = combine(&[t1, t2], Combiner::Max).unwrap();
    assert!(close(avg, 6.0), "avg = {avg}");
    assert!(close(max, 3.0), "max = {max}");
    println!("ACCEPTANCE 3 hand-computed fixture: PASS (s=1, m=0.5, t=3, avg=6, max=3)");
}

/// Criterion 4: on planted corpora (20 classes x 50 docs, one
/// high-frequency class-exclusive term per class), t-test/avg recovers
/// at least 95% of planted terms inside its top-40 over 20 seeds, in
/// under 5 seconds.
#[test]
fn acceptance_4_planted_feature_recovery() {
    let start = Instant::now();
    let mut hits = 0usize;
    let mut total = 0usize;
    let mut perfect_seeds = 0usize;
    for seed in 0..20u64 {
        let config = PlantedConfig {
            seed,
            ..Default::default()
        };
        let corpus = planted_corpus(&config);
        let stats = build_stats(&corpus).unwrap();
        let set = select_features(&stats, Method::TTest, Combiner::Avg, FeatureCount::Top(40));
        let top: Vec<&str> = set.selected().iter().map(|&t| stats.term(t)).collect();
        let mut seed_hits = 0;
        for k in 0..config.n_classes {
            let planted = planted_term(k);
            if top.iter().any(|&t| t == planted) {
                seed_hits += 1;
            }
        }
        hits += seed_hits;
        total += config.n_classes;
        if seed_hits == config.n_classes {
            perfect_seeds += 1;
        }
    }
    let recovery = hits as f64 / total as f64;
    assert!(
        recovery >= 0.95,
        "planted-term recovery {recovery:.3} below 0.95 ({hits}/{total})"
    );
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs_f64() < 5.0,
        "planted recovery took {elapsed:?} (budget 5s)"
    );
    println!(
        "ACCEPTANCE 4 planted recovery: PASS ({hits}/{total} planted terms in top-40, {perfect_seeds}/20 perfect seeds, {elapsed:?})"
    );
}

fn reuters_dir() -> Option<PathBuf> {
    if let Ok(dir) = std::env::var("TEXTCAT_REUTERS_DIR") {
        let path = PathBuf::from(dir);
        if path.is_dir() {
            return Some(path);
        }
    }
    let conventional = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/reuters");
    conventional.is_dir().then_some(conventional)
}

fn reuters_stats() -> Option<(Corpus, textcat::termstats::TermStats)> {
    let dir = reuters_dir()?;
    let mut corpus = textcat::corpus::ingest_reuters_modapte(&dir).expect("readable dataset");
    corpus.preprocess_all(&PreprocessConfig::default());
    eprintln!(
        "reuters: {} documents, {} categories, {} train",
        corpus.len(),
        corpus.categories().len(),
        corpus.train().count()
    );
    let stats = build_stats(&corpus).expect("stats over train split");
    Some((corpus, stats))
}

/// Criterion 5 (dataset-dependent): on Reuters-21578 ModApte, the t-test
/// ranks "payout" strictly lowest among {acquir, stake, payout,
/// dividend} for category "acq", and chi-square ranks "dividend" above
/// "stake". Skips when the dataset is not available.
#[test]
fn acceptance_5_reuters_term_ordering() {
    let Some((corpus, stats)) = reuters_stats() else {
        println!(
            "ACCEPTANCE 5 reuters term ordering: SKIP (set TEXTCAT_REUTERS_DIR to a ModApte directory)"
        );
        return;
    };
    let acq = corpus
        .category_index("acq")
        .expect("category acq present");
    let id = |term: &str| {
        stats
            .term_id(term)
            .unwrap_or_else(|| panic!("term {term:?} in vocabulary"))
    };
    let terms = ["acquir", "stake", "payout", "dividend"];
    let tt: Vec<f64> = terms
        .iter()
        .map(|t| ttest_score(&stats, id(t), acq).unwrap())
        .collect();
    eprintln!(
        "t-test(acq): acquir {:.3} stake {:.3} payout {:.3} dividend {:.3}",
        tt[0], tt[1], tt[2], tt[3]
    );
    assert!(
        tt[2] < tt[0] && tt[2] < tt[1] && tt[2] < tt[3],
        "payout must rank strictly lowest under t-test: {tt:?}"
    );
    let chi_stake = chi2_score(&stats, id("stake"), acq).unwrap();
    let chi_dividend = chi2_score(&stats, id("dividend"), acq).unwrap();
    eprintln!("chi2(acq): stake {chi_stake:.3} dividend {chi_dividend:.3}");
    assert!(
        chi_dividend > chi_stake,
        "chi-square must rank dividend above stake: {chi_dividend} vs {chi_stake}"
    );
    println!("ACCEPTANCE 5 reuters term ordering: PASS");
}

/// Criterion 6 (dataset-dependent, soft): Reuters + kNN at 4000
/// features: t-test micro-F1 in [0.85, 0.93] and at least chi-square's
/// micro-F1 minus 0.01. Skips when the dataset is not available.
#[test]
fn acceptance_6_reuters_knn_sweep_point() {
    let Some((corpus, stats)) = reuters_stats() else {
        println!(
            "ACCEPTANCE 6 reuters knn sweep: SKIP (set TEXTCAT_REUTERS_DIR to a ModApte directory)"
        );
        return;
    };
    let mut config = ExperimentConfig::new(
        CorpusSource::Reuters(reuters_dir().unwrap()),
        PathBuf::from("unused"),
    );
    config.methods = vec![Method::TTest, Method::Chi2];
    config.feature_counts = vec![FeatureCount::Top(4000)];
    config.classifier = ClassifierKind::Knn;
    config.knn_k = 10;
    let results = run_cells(&config, &corpus, &stats).expect("cells run");
    let micro = |method: &str| {
        results
            .iter()
            .find(|c| c.method == method)
            .map(|c| c.report.micro_f1)
            .unwrap()
    };
    let ttest = micro("ttest");
    let chi2 = micro("chi2");
    eprintln!("micro-F1 at 4000 features: ttest {ttest:.4}, chi2 {chi2:.4}");
    assert!(
        (0.85..=0.93).contains(&ttest),
        "t-test micro-F1 {ttest:.4} outside [0.85, 0.93]"
    );
    assert!(
        ttest >= chi2 - 0.01,
        "t-test micro-F1 {ttest:.4} more than 0.01 below chi-square {chi2:.4}"
    );
    println!("ACCEPTANCE 6 reuters knn sweep: PASS (ttest {ttest:.4}, chi2 {chi2:.4})");
}

/// Criterion 7: micro-F1 equals accuracy exactly on 1,000 random
/// single-label prediction sets, and macro-F1 equals the mean per-class
/// F1 recomputed from the confusion matrix to 1e-12.
#[test]
fn acceptance_7_metric_identities() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for case in 0..1000 {
        let k = rng.random_range(2..=8usize);
        let n = rng.random_range(1..=100usize);
        let categories: Vec<String> = (0..k).map(|c| format!("c{c}")).collect();
        let gold: Vec<usize> = (0..n).map(|_| rng.random_range(0..k)).collect();
        let predicted: Vec<usize> = (0..n).map(|_| rng.random_range(0..k)).collect();
        let report = evaluate_indices(&gold, &predicted, &categories).unwrap();

        let correct = gold
            .iter()
            .zip(&predicted)
            .filter(|(g, p)| g == p)
            .count();
        let accuracy = correct as f64 / n as f64;
        assert_eq!(
            report.micro_f1, accuracy,
            "case {case}: micro-F1 must equal accuracy exactly"
        );

        // Independent macro recomputation from the confusion matrix.
        let mut f1_sum = 0.0;
        for c in 0..k {
            let tp = report.confusion[c][c] as f64;
            let fn_ = report.confusion[c].iter().sum::<u64>() as f64 - tp;
            let fp = (0..k).map(|g| report.confusion[g][c]).sum::<u64>() as f64 - tp;
            let p = if tp + fp > 0.0 { tp / (tp + fp) } else { 0.0 };
            let r = if tp + fn_ > 0.0 { tp / (tp + fn_) } else { 0.0 };
            f1_sum += if p + r > 0.0 { 2.0 * p * r / (p + r) } else { 0.0 };
        }
        let macro_f1 = f1_sum / k as f64;
        assert!(
            (report.macro_f1 - macro_f1).abs() <= 1e-12,
            "case {case}: macro-F1 {} vs mean per-class {}",
            report.macro_f1,
            macro_f1
        );
    }
    println!("ACCEPTANCE 7 metric identities: PASS (1000 prediction sets)");
}

/// Criterion 8: scoring a 100,000-term vocabulary across 50 classes from
/// prebuilt statistics finishes in under 5 seconds (all seven methods),
/// and building statistics over 20,000 documents finishes in under 30
/// seconds.
#[test]
fn acceptance_8_performance() {
    // 5,000 documents over 50 classes; document j carries 20 dedicated
    // coverage terms (so the vocabulary is exactly 100,000) plus 20
    // random ones.
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    const V: usize = 100_000;
    let docs: Vec<Document> = (0..5000usize)
        .map(|j| {
            let mut tokens: Vec<String> =
                (j * 20..(j + 1) * 20).map(|t| format!("t{t:06}")).collect();
            for _ in 0..20 {
                tokens.push(format!("t{:06}", rng.random_range(0..V)));
            }
            Document {
                id: format!("d{j}"),
                label: format!("class{:02}", j % 50),
                split: Split::Train,
                text: String::new(),
                tokens,
            }
        })
        .collect();
    let stats = build_stats(&Corpus::new(docs).unwrap()).unwrap();
    assert_eq!(stats.vocab_size(), V);
    assert_eq!(stats.n_classes(), 50);

    let start = Instant::now();
    for method in Method::ALL {
        let set = select_features(&stats, method, Combiner::Avg, FeatureCount::Top(1000));
        assert_eq!(set.size(), 1000);
    }
    let scoring = start.elapsed();
    assert!(
        scoring.as_secs_f64() < 5.0,
        "scoring 100k x 50 took {scoring:?} (budget 5s)"
    );

    let corpus20k = textcat::synth::skewed_corpus(20, 1000, 500, 100, 0.6, 3);
    let start = Instant::now();
    let big = build_stats(&corpus20k).unwrap();
    let building = start.elapsed();
    assert!(big.vocab_size() > 0);
    assert!(
        building.as_secs_f64() < 30.0,
        "build_stats on 20k documents took {building:?} (budget 30s)"
    );
    println!(
        "ACCEPTANCE 8 performance: PASS (scoring {scoring:?}, build_stats(20k docs) {building:?})"
    );
}

/// Oracle self-check: the dense fixture from the statistics module.
#[test]
fn oracle_reproduces_hand_fixture() {
    let dense = DenseCorpus {
        counts: vec![vec![2], vec![4], vec![0], vec![0]],
        labels: vec![0, 0, 1, 1],
        n_classes: 2,
        terms: vec!["x".into()],
    };
    assert!((dense.tf_bar(0) - 1.5).abs() < 1e-12);
    assert!((dense.tf_bar_class(0, 0) - 3.0).abs() < 1e-12);
    assert!((dense.pooled_s(0) - 1.0).abs() < 1e-12);
    assert!((dense.ttest(0, 0) - 3.0).abs() < 1e-12);
}
