//! Multi-class evaluation: per-class precision/recall/F1, macro-F1,
//! micro-F1 and the confusion matrix.
//!
//! Zero denominators follow the common convention: precision, recall and
//! F1 are 0 when undefined. Macro-F1 averages F1 over all K categories of
//! the label set, including zero-support ones. Micro-F1 is computed from
//! the pooled precision and recall across classes; for single-label
//! multi-class predictions it equals plain accuracy.

use serde::Serialize;

use crate::error::{Error, Result};

/// Precision, recall, F1 and support of one category.
#[derive(Debug, Clone, Serialize)]
pub struct ClassMetrics {
    pub label: String,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub support: u64,
}

/// Full evaluation report. `confusion[i][j]` counts documents of gold
/// category `i` predicted as category `j`; row sums equal supports.
#[derive(Debug, Clone, Serialize)]
pub struct EvalReport {
    pub macro_f1: f64,
    pub micro_f1: f64,
    pub per_class: Vec<ClassMetrics>,
    pub confusion: Vec<Vec<u64>>,
}

impl EvalReport {
    /// Fraction of predictions equal to gold.
    pub fn accuracy(&self) -> f64 {
        let correct: u64 = (0..self.confusion.len())
            .map(|i| self.confusion[i][i])
            .sum();
        let total: u64 = self.confusion.iter().flatten().sum();
        if total == 0 {
            0.0
        } else {
            correct as f64 / total as f64
        }
    }
}

/// Evaluate predictions given as label strings.
pub fn evaluate(gold: &[String], predicted: &[String], categories: &[String]) -> Result<EvalReport> {
    let to_index = |label: &String| -> Result<usize> {
        categories
            .iter()
            .position(|c| c == label)
            .ok_or_else(|| Error::validation(format!("unknown label {label:?}")))
    };
    let gold_idx = gold.iter().map(to_index).collect::<Result<Vec<_>>>()?;
    let pred_idx = predicted.iter().map(to_index).collect::<Result<Vec<_>>>()?;
    evaluate_indices(&gold_idx, &pred_idx, categories)
}

/// Evaluate predictions given as category indices into `categories`.
pub fn evaluate_indices(
    gold: &[usize],
    predicted: &[usize],
    categories: &[String],
) -> Result<EvalReport> {
    if gold.len() != predicted.len() {
        return Err(Error::validation(format!(
            "length mismatch: {} gold labels vs {} predictions",
            gold.len(),
            predicted.len()
        )));
    }
    if gold.is_empty() {
        return Err(Error::validation("nothing to evaluate"));
    }
    let k = categories.len();
    if let Some(&bad) = gold.iter().chain(predicted).find(|&&i| i >= k) {
        return Err(Error::validation(format!(
            "label index {bad} out of range ({k} categories)"
        )));
    }

    let mut confusion = vec![vec![0u64; k]; k];
    for (&g, &p) in gold.iter().zip(predicted) {
        confusion[g][p] += 1;
    }

    let mut per_class = Vec::with_capacity(k);
    let mut tp_sum = 0u64;
    let mut fp_sum = 0u64;
    let mut fn_sum = 0u64;
    let mut f1_sum = 0.0;
    for c in 0..k {
        let tp: u64 = confusion[c][c];
        let fn_: u64 = confusion[c].iter().sum::<u64>() - tp;
        let fp: u64 = (0..k).map(|g| confusion[g][c]).sum::<u64>() - tp;
        let precision = ratio(tp, tp + fp);
        let recall = ratio(tp, tp + fn_);
        let f1 = if precision + recall > 0.0 {
            2.0 * precision * recall / (precision + recall)
        } else {
            0.0
        };
        tp_sum += tp;
        fp_sum += fp;
        fn_sum += fn_;
        f1_sum += f1;
        per_class.push(ClassMetrics {
            label: categories[c].clone(),
            precision,
            recall,
            f1,
            support: tp + fn_,
        });
    }
    let macro_f1 = f1_sum / k as f64;
    // Micro-F1 from pooled counts: 2TP / (2TP + FP + FN). This is the
    // pooled-precision/recall harmonic mean in a single division, so for
    // single-label predictions (FP == FN pooled) it is bit-identical to
    // accuracy. Cross-check against the explicit p-bar/r-bar route.
    let micro_denom = 2 * tp_sum + fp_sum + fn_sum;
    let micro_f1 = ratio(2 * tp_sum, micro_denom);
    #[cfg(debug_assertions)]
    {
        let pooled_p = ratio(tp_sum, tp_sum + fp_sum);
        let pooled_r = ratio(tp_sum, tp_sum + fn_sum);
        let via_pr = if pooled_p + pooled_r > 0.0 {
            2.0 * pooled_p * pooled_r / (pooled_p + pooled_r)
        } else {
            0.0
        };
        debug_assert!(
            (micro_f1 - via_pr).abs() <= 1e-12,
            "pooled micro-F1 routes disagree: {micro_f1} vs {via_pr}"
        );
    }
    Ok(EvalReport {
        macro_f1,
        micro_f1,
        per_class,
        confusion,
    })
}

fn ratio(num: u64, denom: u64) -> f64 {
    if denom == 0 {
        0.0
    } else {
        num as f64 / denom as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cats(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn perfect_predictions() {
        let categories = cats(&["a", "b"]);
        let gold = cats(&["a", "b", "a"]);
        let report = evaluate(&gold, &gold, &categories).unwrap();
        assert_eq!(report.macro_f1, 1.0);
        assert_eq!(report.micro_f1, 1.0);
        assert_eq!(report.accuracy(), 1.0);
    }

    #[test]
    fn hand_built_confusion() {
        // gold [A, A, B], predicted [A, B, B]:
        // A: tp 1, fp 0, fn 1 -> p 1, r 0.5, f1 2/3
        // B: tp 1, fp 1, fn 0 -> p 0.5, r 1, f1 2/3
        let categories = cats(&["A", "B"]);
        let gold = cats(&["A", "A", "B"]);
        let predicted = cats(&["A", "B", "B"]);
        let report = evaluate(&gold, &predicted, &categories).unwrap();
        let two_thirds = 2.0 / 3.0;
        assert!((report.per_class[0].f1 - two_thirds).abs() < 1e-12);
        assert!((report.per_class[1].f1 - two_thirds).abs() < 1e-12);
        assert!((report.macro_f1 - two_thirds).abs() < 1e-12);
        assert!((report.micro_f1 - two_thirds).abs() < 1e-12);
        assert_eq!(report.confusion, vec![vec![1, 1], vec![0, 1]]);
        assert_eq!(report.per_class[0].support, 2);
    }

    #[test]
    fn zero_support_class_counts_toward_macro() {
        let categories = cats(&["a", "b", "ghost"]);
        let gold = cats(&["a", "b"]);
        let predicted = cats(&["a", "b"]);
        let report = evaluate(&gold, &predicted, &categories).unwrap();
        assert_eq!(report.per_class[2].f1, 0.0);
        assert_eq!(report.per_class[2].support, 0);
        assert!((report.macro_f1 - 2.0 / 3.0).abs() < 1e-12);
        assert_eq!(report.micro_f1, 1.0);
    }

    #[test]
    fn length_mismatch_rejected() {
        let categories = cats(&["a"]);
        let err = evaluate(&cats(&["a", "a"]), &cats(&["a"]), &categories).unwrap_err();
        assert!(matches!(err, Error::Validation(_)));
    }

    #[test]
    fn unknown_label_rejected() {
        let categories = cats(&["a"]);
        let err = evaluate(&cats(&["zzz"]), &cats(&["a"]), &categories).unwrap_err();
        assert!(err.to_string().contains("zzz"));
    }

    #[test]
    fn micro_equals_accuracy_single_label() {
        let categories = cats(&["a", "b", "c"]);
        let gold = vec![0, 1, 2, 2, 1, 0, 0];
        let predicted = vec![0, 2, 2, 1, 1, 0, 1];
        let report = evaluate_indices(&gold, &predicted, &categories).unwrap();
        assert_eq!(report.micro_f1, report.accuracy());
    }

    #[test]
    fn report_serializes_to_expected_json_shape() {
        let categories = cats(&["a", "b"]);
        let report = evaluate_indices(&[0, 1], &[0, 1], &categories).unwrap();
        let json = serde_json::to_value(&report).unwrap();
        assert!(json.get("macro_f1").is_some());
        assert!(json.get("micro_f1").is_some());
        assert!(json["per_class"].as_array().unwrap().len() == 2);
        assert!(json["confusion"].as_array().unwrap().len() == 2);
        assert_eq!(json["per_class"][0]["label"], "a");
    }
}
