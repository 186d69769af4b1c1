//! Feature selection scorers and top-N selection.
//!
//! The term-frequency t-test scorer measures how far a term's mean
//! frequency inside one category sits from its mean over the whole
//! training collection, in units of the pooled within-class deviation:
//!
//! ```text
//! score(t, k) = |mean_k(t) - mean(t)| / (m_k * s_t),   m_k = sqrt(1/N_k - 1/N)
//! ```
//!
//! The classical document-frequency baselines are provided alongside:
//! chi-square, information gain, mutual information, expected
//! cross-entropy, document frequency and total term frequency. Per-class
//! scores (t-test, chi-square, MI) are merged with a combiner: `avg`
//! sums the K category scores, `max` takes their maximum. `avg` is the
//! default; it consistently wins for multi-class problems.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::termstats::TermStats;

/// Floor applied to the pooled deviation so scores stay finite for
/// within-class-constant terms; a 0/0 case still yields 0.
pub const DEVIATION_FLOOR: f64 = 1e-9;

/// A feature-selection scoring method.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    /// Term-frequency t-test.
    TTest,
    /// Chi-square statistic on the document-frequency contingency table.
    Chi2,
    /// Pointwise mutual information between term presence and category.
    Mi,
    /// Information gain (average mutual information).
    Ig,
    /// Expected cross-entropy; only conditions on term presence.
    Ece,
    /// Global document frequency.
    Df,
    /// Global total term frequency.
    Tf,
}

impl Method {
    pub const ALL: [Method; 7] = [
        Method::TTest,
        Method::Chi2,
        Method::Ig,
        Method::Mi,
        Method::Ece,
        Method::Df,
        Method::Tf,
    ];

    /// Whether the method produces one score per category (merged by a
    /// combiner) rather than a single corpus-level score.
    pub fn is_per_class(self) -> bool {
        matches!(self, Method::TTest | Method::Chi2 | Method::Mi)
    }

    pub fn tag(self) -> &'static str {
        match self {
            Method::TTest => "ttest",
            Method::Chi2 => "chi2",
            Method::Mi => "mi",
            Method::Ig => "ig",
            Method::Ece => "ece",
            Method::Df => "df",
            Method::Tf => "tf",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ttest" | "t-test" => Ok(Method::TTest),
            "chi2" | "chi-square" => Ok(Method::Chi2),
            "mi" => Ok(Method::Mi),
            "ig" => Ok(Method::Ig),
            "ece" => Ok(Method::Ece),
            "df" => Ok(Method::Df),
            "tf" => Ok(Method::Tf),
            other => Err(Error::validation(format!(
                "unknown method {other:?} (expected one of ttest, chi2, ig, mi, ece, df, tf)"
            ))),
        }
    }
}

/// Rule merging a term's K category scores into one global score.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Combiner {
    /// Sum of the category scores.
    Avg,
    /// Maximum category score.
    Max,
}

impl Combiner {
    pub fn tag(self) -> &'static str {
        match self {
            Combiner::Avg => "avg",
            Combiner::Max => "max",
        }
    }
}

impl fmt::Display for Combiner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Combiner {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "avg" => Ok(Combiner::Avg),
            "max" => Ok(Combiner::Max),
            other => Err(Error::validation(format!(
                "unknown combiner {other:?} (expected \"avg\" or \"max\")"
            ))),
        }
    }
}

/// Scores of one term under one method. For per-class methods
/// `per_class` holds the K category scores and `combined` their merge;
/// single-valued methods leave `per_class` empty.
#[derive(Debug, Clone)]
pub struct FeatureScore {
    pub term_id: u32,
    pub method: Method,
    pub per_class: Vec<f64>,
    pub combined: f64,
}

/// How many features to keep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FeatureCount {
    /// Keep the entire vocabulary.
    All,
    /// Keep the top `n` terms.
    Top(usize),
}

impl fmt::Display for FeatureCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FeatureCount::All => f.write_str("all"),
            FeatureCount::Top(n) => write!(f, "{n}"),
        }
    }
}

impl FromStr for FeatureCount {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "all" {
            return Ok(FeatureCount::All);
        }
        let n: usize = s
            .parse()
            .map_err(|_| Error::validation(format!("invalid feature count {s:?}")))?;
        if n == 0 {
            return Err(Error::validation("feature count must be at least 1"));
        }
        Ok(FeatureCount::Top(n))
    }
}

/// An ordered feature set: term ids by descending combined score, ties
/// broken by ascending term string.
#[derive(Debug, Clone)]
pub struct FeatureSet {
    pub method: Method,
    pub combiner: Combiner,
    selected: Vec<u32>,
}

impl FeatureSet {
    pub fn selected(&self) -> &[u32] {
        &self.selected
    }

    pub fn size(&self) -> usize {
        self.selected.len()
    }
}

fn check_term(stats: &TermStats, term_id: u32) -> Result<()> {
    if (term_id as usize) < stats.vocab_size() {
        Ok(())
    } else {
        Err(Error::validation(format!(
            "term id {term_id} out of range (vocabulary size {})",
            stats.vocab_size()
        )))
    }
}

fn check_class(stats: &TermStats, class_k: usize) -> Result<()> {
    if class_k < stats.n_classes() {
        Ok(())
    } else {
        Err(Error::validation(format!(
            "class index {class_k} out of range ({} categories)",
            stats.n_classes()
        )))
    }
}

/// Term-frequency t-test score of `term_id` for category `class_k`.
pub fn ttest_score(stats: &TermStats, term_id: u32, class_k: usize) -> Result<f64> {
    check_term(stats, term_id)?;
    check_class(stats, class_k)?;
    if stats.class_doc_count(class_k) == stats.n_docs() {
        return Err(Error::validation(
            "t-test undefined when one category holds every document (m_k = 0)",
        ));
    }
    Ok(ttest_raw(stats, term_id, class_k))
}

fn ttest_raw(stats: &TermStats, term_id: u32, class_k: usize) -> f64 {
    let numerator = (stats.tf_bar_class(term_id, class_k) - stats.tf_bar(term_id)).abs();
    let n_k = stats.class_doc_count(class_k) as f64;
    let n = stats.n_docs() as f64;
    let m_k = (1.0 / n_k - 1.0 / n).sqrt();
    let s = stats.s(term_id).max(DEVIATION_FLOOR);
    numerator / (m_k * s)
}

/// Chi-square score on the per-category document-frequency contingency
/// table; zero when any marginal factor vanishes.
pub fn chi2_score(stats: &TermStats, term_id: u32, class_k: usize) -> Result<f64> {
    check_term(stats, term_id)?;
    check_class(stats, class_k)?;
    Ok(chi2_raw(stats, term_id, class_k))
}

fn chi2_raw(stats: &TermStats, term_id: u32, class_k: usize) -> f64 {
    let n = stats.n_docs() as f64;
    let a = stats.df_class(term_id, class_k) as f64;
    let b = stats.df(term_id) as f64 - a;
    let c = stats.class_doc_count(class_k) as f64 - a;
    let d = n - a - b - c;
    let denom = (a + c) * (b + d) * (a + b) * (c + d);
    if denom == 0.0 {
        return 0.0;
    }
    let diff = a * d - c * b;
    n * diff * diff / denom
}

/// Smoothed document-frequency probabilities for one term: add-one over
/// the 2xK (presence, category) table.
struct SmoothedTable<'a> {
    stats: &'a TermStats,
    term_id: u32,
    denom: f64,
    p_term: f64,
}

impl<'a> SmoothedTable<'a> {
    fn new(stats: &'a TermStats, term_id: u32) -> Self {
        let k = stats.n_classes() as f64;
        let denom = stats.n_docs() as f64 + 2.0 * k;
        let p_term = (stats.df(term_id) as f64 + k) / denom;
        SmoothedTable {
            stats,
            term_id,
            denom,
            p_term,
        }
    }

    fn p_class(&self, k: usize) -> f64 {
        (self.stats.class_doc_count(k) as f64 + 2.0) / self.denom
    }

    fn p_term_and_class(&self, k: usize) -> f64 {
        (self.stats.df_class(self.term_id, k) as f64 + 1.0) / self.denom
    }

    fn p_class_given_term(&self, k: usize) -> f64 {
        self.p_term_and_class(k) / self.p_term
    }

    fn p_class_given_absent(&self, k: usize) -> f64 {
        let joint_absent = (self.stats.class_doc_count(k) as f64
            - self.stats.df_class(self.term_id, k) as f64
            + 1.0)
            / self.denom;
        joint_absent / (1.0 - self.p_term)
    }
}

/// Pointwise mutual information `ln(P(t,c) / (P(t) P(c)))` with add-one
/// smoothed document-frequency probabilities.
pub fn mi_score(stats: &TermStats, term_id: u32, class_k: usize) -> Result<f64> {
    check_term(stats, term_id)?;
    check_class(stats, class_k)?;
    Ok(mi_raw(stats, term_id, class_k))
}

fn mi_raw(stats: &TermStats, term_id: u32, class_k: usize) -> f64 {
    let t = SmoothedTable::new(stats, term_id);
    (t.p_term_and_class(class_k) / (t.p_term * t.p_class(class_k))).ln()
}

/// Information gain of conditioning the category on term presence, with
/// add-one smoothed probabilities; clipped at zero against rounding.
pub fn ig_score(stats: &TermStats, term_id: u32) -> Result<f64> {
    check_term(stats, term_id)?;
    Ok(ig_raw(stats, term_id))
}

fn ig_raw(stats: &TermStats, term_id: u32) -> f64 {
    let t = SmoothedTable::new(stats, term_id);
    let k = stats.n_classes();
    let entropy = |p: f64| if p > 0.0 { -p * p.ln() } else { 0.0 };
    let mut h_class = 0.0;
    let mut h_given_term = 0.0;
    let mut h_given_absent = 0.0;
    for c in 0..k {
        h_class += entropy(t.p_class(c));
        h_given_term += entropy(t.p_class_given_term(c));
        h_given_absent += entropy(t.p_class_given_absent(c));
    }
    let ig = h_class - t.p_term * h_given_term - (1.0 - t.p_term) * h_given_absent;
    ig.max(0.0)
}

/// Expected cross-entropy `P(t) * sum_c P(c|t) ln(P(c|t)/P(c))` with
/// add-one smoothed probabilities; nonnegative by construction.
pub fn ece_score(stats: &TermStats, term_id: u32) -> Result<f64> {
    check_term(stats, term_id)?;
    Ok(ece_raw(stats, term_id))
}

fn ece_raw(stats: &TermStats, term_id: u32) -> f64 {
    let t = SmoothedTable::new(stats, term_id);
    let mut kl = 0.0;
    for c in 0..stats.n_classes() {
        let p_ct = t.p_class_given_term(c);
        kl += p_ct * (p_ct / t.p_class(c)).ln();
    }
    (t.p_term * kl).max(0.0)
}

/// Global document frequency.
pub fn df_score(stats: &TermStats, term_id: u32) -> Result<u64> {
    check_term(stats, term_id)?;
    Ok(stats.df(term_id))
}

/// Global total term frequency.
pub fn tf_score(stats: &TermStats, term_id: u32) -> Result<u64> {
    check_term(stats, term_id)?;
    Ok(stats.tf_total(term_id))
}

/// Merge per-category scores into one value.
pub fn combine(per_class: &[f64], mode: Combiner) -> Result<f64> {
    if per_class.is_empty() {
        return Err(Error::validation("cannot combine an empty score vector"));
    }
    Ok(match mode {
        Combiner::Avg => per_class.iter().sum(),
        Combiner::Max => per_class.iter().copied().fold(f64::NEG_INFINITY, f64::max),
    })
}

/// Score one term under one method.
pub fn score_term(
    stats: &TermStats,
    method: Method,
    combiner: Combiner,
    term_id: u32,
) -> FeatureScore {
    let (per_class, combined) = if method.is_per_class() {
        let per_class: Vec<f64> = (0..stats.n_classes())
            .map(|k| match method {
                Method::TTest => ttest_raw(stats, term_id, k),
                Method::Chi2 => chi2_raw(stats, term_id, k),
                Method::Mi => mi_raw(stats, term_id, k),
                _ => unreachable!(),
            })
            .collect();
        let combined = combine(&per_class, combiner).expect("non-empty per-class scores");
        (per_class, combined)
    } else {
        let combined = match method {
            Method::Ig => ig_raw(stats, term_id),
            Method::Ece => ece_raw(stats, term_id),
            Method::Df => stats.df(term_id) as f64,
            Method::Tf => stats.tf_total(term_id) as f64,
            _ => unreachable!(),
        };
        (Vec::new(), combined)
    };
    FeatureScore {
        term_id,
        method,
        per_class,
        combined,
    }
}

/// Score every term in the vocabulary under one method.
pub fn score_all(stats: &TermStats, method: Method, combiner: Combiner) -> Vec<FeatureScore> {
    (0..stats.vocab_size() as u32)
        .into_par_iter()
        .map(|t| score_term(stats, method, combiner, t))
        .collect()
}

/// Sort scores into selection order: descending combined score, ties by
/// ascending term string.
pub fn rank(stats: &TermStats, scores: &mut [FeatureScore]) {
    scores.sort_unstable_by(|a, b| {
        b.combined
            .total_cmp(&a.combined)
            .then_with(|| stats.term(a.term_id).cmp(stats.term(b.term_id)))
    });
}

/// Score, rank and truncate to the requested feature count.
pub fn select_features(
    stats: &TermStats,
    method: Method,
    combiner: Combiner,
    n: FeatureCount,
) -> FeatureSet {
    let mut scores = score_all(stats, method, combiner);
    rank(stats, &mut scores);
    let limit = match n {
        FeatureCount::All => scores.len(),
        FeatureCount::Top(n) => n.min(scores.len()),
    };
    FeatureSet {
        method,
        combiner,
        selected: scores[..limit].iter().map(|s| s.term_id).collect(),
    }
}

/// Write ranked scores as CSV: `term,method,combiner,combined`, then one
/// column per category for per-class methods. Rows must already be in
/// selection order (see [`rank`]).
pub fn write_score_csv<W: Write>(
    w: &mut W,
    stats: &TermStats,
    scores: &[FeatureScore],
    combiner: Combiner,
) -> std::io::Result<()> {
    write!(w, "term,method,combiner,combined")?;
    for cat in stats.categories() {
        write!(w, ",{cat}")?;
    }
    writeln!(w)?;
    for score in scores {
        write!(
            w,
            "{},{},{},{:.6}",
            stats.term(score.term_id),
            score.method,
            combiner,
            score.combined
        )?;
        for k in 0..stats.n_classes() {
            match score.per_class.get(k) {
                Some(v) => write!(w, ",{v:.6}")?,
                None => write!(w, ",")?,
            }
        }
        writeln!(w)?;
    }
    Ok(())
}
