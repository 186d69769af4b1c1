//! Thin command-line front end over the `textcat` library.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};

use textcat::classify::ClassifierKind;
use textcat::corpus::{write_jsonl, PreprocessConfig};
use textcat::experiment::{
    dump_scores, load_corpus, parse_list, parse_ratio, run_experiment, write_dump_csv,
    CorpusSource, ExperimentConfig, FileConfig,
};
use textcat::fsel::{
    rank, score_all, write_score_csv, Combiner, FeatureCount, Method,
};
use textcat::termstats::build_stats;

#[derive(Parser)]
#[command(
    name = "textcat",
    about = "Term-frequency feature selection and text categorization experiments",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Options shared by every subcommand. Each flag has a config-file twin
/// under the same name (e.g. `corpus = ...`); command-line values win.
#[derive(Args, Debug, Clone)]
struct CommonArgs {
    /// Flat `key = value` config file providing defaults for any flag.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Corpus path (JSONL file or dataset directory).
    #[arg(long)]
    corpus: Option<PathBuf>,

    /// Corpus format: jsonl, reuters, or 20ng.
    #[arg(long)]
    format: Option<String>,

    /// Stopword file (UTF-8, one lowercase word per line, # comments).
    #[arg(long)]
    stopwords: Option<PathBuf>,

    /// Train:test ratio for sources without an inherent split.
    #[arg(long)]
    split: Option<String>,

    /// Seed for random splits and any other randomness.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Read a corpus and re-emit it in the normalized JSONL format.
    Ingest {
        #[command(flatten)]
        common: CommonArgs,
        /// Output JSONL file ("-" for stdout).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Score specific terms under one or more methods (CSV).
    Score {
        #[command(flatten)]
        common: CommonArgs,
        /// Comma-separated terms to score (matched after preprocessing).
        #[arg(long)]
        terms: String,
        /// Comma-separated methods; defaults to all seven.
        #[arg(long)]
        method: Option<String>,
        /// Combiner for per-class methods: avg or max.
        #[arg(long)]
        combine: Option<String>,
        /// Output CSV file ("-" for stdout).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rank the whole vocabulary under one method and dump the top-N (CSV).
    Select {
        #[command(flatten)]
        common: CommonArgs,
        /// Scoring method.
        #[arg(long)]
        method: Option<String>,
        /// Combiner for per-class methods: avg or max.
        #[arg(long)]
        combine: Option<String>,
        /// Number of features to keep, or "all".
        #[arg(long)]
        features: Option<String>,
        /// Output CSV file ("-" for stdout).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run one experiment cell: select, weight, classify, evaluate.
    Run {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        experiment: ExperimentArgs,
    },
    /// Run a (method x feature-count) sweep and write the aggregate CSV.
    Sweep {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        experiment: ExperimentArgs,
    },
}

#[derive(Args, Debug, Clone)]
struct ExperimentArgs {
    /// Comma-separated scoring methods.
    #[arg(long)]
    method: Option<String>,

    /// Combiner for per-class methods: avg or max.
    #[arg(long)]
    combine: Option<String>,

    /// Comma-separated feature counts (numbers or "all").
    #[arg(long)]
    features: Option<String>,

    /// Classifier: knn or centroid.
    #[arg(long)]
    classifier: Option<String>,

    /// Neighborhood size for knn.
    #[arg(long = "knn-k")]
    knn_k: Option<usize>,

    /// Output directory for reports and the aggregate CSV.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e:#}");
        std::process::exit(1);
    }
}

fn run() -> Result<()> {
    let cli = Cli::parse();
    match cli.command {
        Command::Ingest { common, out } => {
            let (config, file) = base_config(&common, "ingest-out")?;
            let corpus = load_corpus(&config)?;
            let out = out
                .or_else(|| file.get("out").map(PathBuf::from))
                .context("--out is required (JSONL destination, or \"-\")")?;
            let mut sink = open_sink(&out)?;
            write_jsonl(&corpus, &mut sink)?;
            eprintln!(
                "ingested {} documents, {} categories",
                corpus.len(),
                corpus.categories().len()
            );
            Ok(())
        }
        Command::Score {
            common,
            terms,
            method,
            combine,
            out,
        } => {
            let (config, file) = base_config(&common, "score")?;
            let methods = match pick(method, &file, "method") {
                Some(raw) => parse_list::<Method>(&raw)?,
                None => Method::ALL.to_vec(),
            };
            let combiner = parse_combiner(pick(combine, &file, "combine"))?;
            let corpus = load_corpus(&config)?;
            let stats = build_stats(&corpus)?;
            // Terms are matched in preprocessed form.
            let terms: Vec<String> = terms
                .split(',')
                .map(str::trim)
                .filter(|t| !t.is_empty())
                .flat_map(|t| textcat::corpus::preprocess(t, &config.preprocess))
                .collect();
            let mut warnings = Vec::new();
            let rows = dump_scores(&stats, &terms, &methods, combiner, &mut warnings);
            for w in &warnings {
                eprintln!("warning: {w}");
            }
            let out = out
                .or_else(|| file.get("out").map(PathBuf::from))
                .unwrap_or_else(|| PathBuf::from("-"));
            let mut sink = open_sink(&out)?;
            write_dump_csv(&mut sink, &stats, &rows, combiner)?;
            Ok(())
        }
        Command::Select {
            common,
            method,
            combine,
            features,
            out,
        } => {
            let (config, file) = base_config(&common, "select")?;
            let method: Method = pick(method, &file, "method")
                .unwrap_or_else(|| "ttest".into())
                .parse()?;
            let combiner = parse_combiner(pick(combine, &file, "combine"))?;
            let count: FeatureCount = pick(features, &file, "features")
                .unwrap_or_else(|| "all".into())
                .parse()?;
            let corpus = load_corpus(&config)?;
            let stats = build_stats(&corpus)?;
            let mut scores = score_all(&stats, method, combiner);
            rank(&stats, &mut scores);
            let limit = match count {
                FeatureCount::All => scores.len(),
                FeatureCount::Top(n) => n.min(scores.len()),
            };
            scores.truncate(limit);
            let out = out
                .or_else(|| file.get("out").map(PathBuf::from))
                .unwrap_or_else(|| PathBuf::from("-"));
            let mut sink = open_sink(&out)?;
            write_score_csv(&mut sink, &stats, &scores, combiner)?;
            Ok(())
        }
        Command::Run { common, experiment } | Command::Sweep { common, experiment } => {
            let (mut config, file) = base_config(&common, "run")?;
            apply_experiment_args(&mut config, &experiment, &file)?;
            let results = run_experiment(&config)?;
            println!("method,n_features,macro_f1,micro_f1");
            for cell in &results {
                println!(
                    "{},{},{:.6},{:.6}",
                    cell.method, cell.n_features, cell.report.macro_f1, cell.report.micro_f1
                );
            }
            eprintln!(
                "wrote {} report(s) and sweep.csv to {}",
                results.len(),
                config.out_dir.display()
            );
            Ok(())
        }
    }
}

/// CLI value if present, else the config-file twin.
fn pick(cli: Option<String>, file: &FileConfig, key: &str) -> Option<String> {
    cli.or_else(|| file.get(key).map(str::to_string))
}

fn parse_combiner(raw: Option<String>) -> Result<Combiner> {
    Ok(match raw {
        Some(raw) => raw.parse()?,
        None => Combiner::Avg,
    })
}

/// Resolve the common options into an `ExperimentConfig` skeleton.
fn base_config(common: &CommonArgs, _context: &str) -> Result<(ExperimentConfig, FileConfig)> {
    let file = match &common.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    let corpus_path = common
        .corpus
        .clone()
        .or_else(|| file.get("corpus").map(PathBuf::from))
        .context("--corpus is required")?;
    let format = common
        .format
        .clone()
        .or_else(|| file.get("format").map(str::to_string))
        .context("--format is required (jsonl, reuters, or 20ng)")?;
    let source = CorpusSource::from_format(&format, corpus_path)?;
    let mut config = ExperimentConfig::new(source, PathBuf::from("out"));
    if let Some(path) = common
        .stopwords
        .clone()
        .or_else(|| file.get("stopwords").map(PathBuf::from))
    {
        config.preprocess = PreprocessConfig::with_stopword_file(&path)?;
    }
    if let Some(ratio) = common
        .split
        .clone()
        .or_else(|| file.get("split").map(str::to_string))
    {
        config.split_ratio = parse_ratio(&ratio)?;
    }
    if let Some(seed) = common.seed.or(file.get_parsed("seed")?) {
        config.seed = seed;
    }
    Ok((config, file))
}

fn apply_experiment_args(
    config: &mut ExperimentConfig,
    args: &ExperimentArgs,
    file: &FileConfig,
) -> Result<()> {
    if let Some(raw) = pick(args.method.clone(), file, "method") {
        config.methods = parse_list(&raw)?;
    }
    config.combiner = parse_combiner(pick(args.combine.clone(), file, "combine"))?;
    config.feature_counts = match pick(args.features.clone(), file, "features") {
        Some(raw) => parse_list(&raw)?,
        None => config.source.default_grid(),
    };
    if let Some(raw) = pick(args.classifier.clone(), file, "classifier") {
        config.classifier = raw.parse::<ClassifierKind>()?;
    }
    if let Some(k) = args.knn_k.or(file.get_parsed("knn-k")?) {
        config.knn_k = k;
    }
    if let Some(out) = args
        .out
        .clone()
        .or_else(|| file.get("out").map(PathBuf::from))
    {
        config.out_dir = out;
    }
    Ok(())
}

fn open_sink(path: &PathBuf) -> Result<Box<dyn Write>> {
    if path.as_os_str() == "-" {
        Ok(Box::new(std::io::stdout().lock()))
    } else {
        if let Some(parent) = path.parent() {
            if !parent.as_os_str().is_empty() {
                fs::create_dir_all(parent)
                    .with_context(|| format!("creating {}", parent.display()))?;
            }
        }
        let file = fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
        Ok(Box::new(file))
    }
}
