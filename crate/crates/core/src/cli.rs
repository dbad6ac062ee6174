//! Command-line front end. `dispatch` returns the process exit code:
//! 0 on success, 1 on usage errors, 2 on data errors.

use std::io::{self, BufRead, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::classify::ModelKind;
use crate::dataset::{corpus_stats, load_corpus};
use crate::error::{Error, Result};
use crate::experiment::{
    run_experiment, thread_pool, threads_from_env, write_outputs, write_table3, write_table4, BenchOptions, CvOptions,
    ExperimentConfig, RunOutput,
};
use crate::pipeline::Pipeline;
use crate::textprep::{preprocess_corpus, FrequencyTable};
use crate::vectorize::FeatureKind;

#[derive(Parser, Debug)]
#[command(
    name = "mythlab",
    version,
    about = "Fact-versus-myth statement classification experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print class counts of a dataset as JSON.
    Stats {
        #[arg(long)]
        data: PathBuf,
    },
    /// Preprocess a dataset and print `label,tokens` CSV.
    Prep {
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Word frequencies of the preprocessed corpus as `token,count` CSV.
    Wordfreq {
        #[command(flatten)]
        opts: CommonOpts,
        /// Print only the N most frequent tokens.
        #[arg(long)]
        top: Option<usize>,
    },
    /// Holdout grid over splits, features and models.
    Run {
        #[command(flatten)]
        opts: CommonOpts,
        /// Also write each fitted pipeline under DIR/models.
        #[arg(long)]
        save_models: bool,
    },
    /// Cross-validation only (5- and 10-fold unless --cv or --loo is given).
    Crossval {
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Testing time per statement on the first split.
    Bench {
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Classify statements read from stdin, one per line.
    Predict {
        #[arg(long)]
        model: PathBuf,
    },
}

#[derive(Args, Debug, Default)]
struct CommonOpts {
    #[arg(long)]
    data: Option<PathBuf>,
    /// JSON experiment config; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    /// Comma-separated models, e.g. `lr,nb,knn`.
    #[arg(long, value_delimiter = ',')]
    models: Option<Vec<ModelKind>>,
    /// Comma-separated feature kinds: `bow`, `tfidf`.
    #[arg(long, value_delimiter = ',')]
    features: Option<Vec<FeatureKind>>,
    /// Comma-separated training fractions, e.g. `0.8,0.7`.
    #[arg(long, value_delimiter = ',')]
    splits: Option<Vec<f64>>,
    /// k-fold cross-validation, e.g. `k=5,10`.
    #[arg(long, value_delimiter = ',', value_parser = parse_k)]
    cv: Option<Vec<usize>>,
    /// Leave-one-out cross-validation.
    #[arg(long)]
    loo: bool,
    #[arg(long, value_name = "N")]
    bench_repeats: Option<usize>,
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
    /// Balanced bootstrap samples for the random forest.
    #[arg(long)]
    rf_balance: bool,
    #[arg(long)]
    no_stem: bool,
    #[arg(long)]
    no_lemma: bool,
    #[arg(long, value_name = "FILE")]
    stopwords: Option<PathBuf>,
}

/// One item of `--cv k=5,10`; the `k=` prefix is optional.
fn parse_k(s: &str) -> std::result::Result<usize, String> {
    let k = s.strip_prefix("k=").unwrap_or(s);
    k.trim().parse().map_err(|_| format!("bad k value {k:?}"))
}

impl CommonOpts {
    fn config(&self) -> Result<ExperimentConfig> {
        let mut cfg = match &self.config {
            Some(p) => {
                let mut cfg = ExperimentConfig::load(p)?;
                let base = p.parent().unwrap_or(Path::new(""));
                let rebase = |q: &mut Option<PathBuf>| {
                    if let Some(path) = q.as_mut().filter(|q| q.is_relative()) {
                        *path = base.join(&*path);
                    }
                };
                rebase(&mut cfg.dataset);
                rebase(&mut cfg.prep.stopwords);
                rebase(&mut cfg.prep.contractions);
                rebase(&mut cfg.output_dir);
                cfg
            }
            None => ExperimentConfig::default(),
        };
        if let Some(d) = &self.data {
            cfg.dataset = Some(d.clone());
        }
        if let Some(s) = self.seed {
            cfg.seed = s;
        }
        if let Some(m) = &self.models {
            cfg.models = m.clone();
        }
        if let Some(f) = &self.features {
            cfg.features = f.clone();
        }
        if let Some(s) = &self.splits {
            cfg.splits = s.clone();
        }
        if self.cv.is_some() || self.loo {
            let cv = cfg.cv.get_or_insert_with(CvOptions::default);
            cv.k = self.cv.clone().unwrap_or_default();
            cv.loo = self.loo;
        }
        if let Some(r) = self.bench_repeats {
            cfg.bench = Some(BenchOptions { repeats: r });
        }
        if let Some(o) = &self.out {
            cfg.output_dir = Some(o.clone());
        }
        if self.rf_balance {
            cfg.hyperparameters.forest.balance = true;
        }
        if self.no_stem {
            cfg.prep.stem = false;
        }
        if self.no_lemma {
            cfg.prep.lemmatize = false;
        }
        if let Some(s) = &self.stopwords {
            cfg.prep.stopwords = Some(s.clone());
        }
        if cfg.dataset.is_none() {
            return Err(Error::InvalidConfig("a dataset is required (--data or config)".into()));
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

fn stdout_error(e: io::Error) -> Error {
    Error::io("<stdout>", e)
}

fn finish(out: &RunOutput, cfg: &ExperimentConfig) -> Result<()> {
    if let Some(dir) = &cfg.output_dir {
        write_outputs(out, dir)?;
        eprintln!("wrote results to {}", dir.display());
    }
    let mut stdout = io::stdout().lock();
    let b = &out.bundle;
    if cfg.grid {
        write_table3(b, &mut stdout).map_err(stdout_error)?;
    }
    if let Some(cv) = &b.cv_results {
        write_table4(cv, &mut stdout).map_err(stdout_error)?;
    }
    if let Some(bench) = &b.bench_results {
        crate::bench::write_bench_csv(bench, &mut stdout).map_err(stdout_error)?;
    }
    for (cell, reason) in &b.failures {
        eprintln!("failed: {cell}: {reason}");
    }
    Ok(())
}

fn experiment(cfg: ExperimentConfig) -> Result<()> {
    let pool = thread_pool(threads_from_env()?)?;
    let out = pool.install(|| run_experiment(&cfg))?;
    finish(&out, &cfg)
}

fn predict(model: &Path) -> Result<()> {
    let pipeline = Pipeline::load(model)?;
    let stdin = io::stdin();
    let mut stdout = io::stdout().lock();
    for line in stdin.lock().lines() {
        let line = line.map_err(|e| Error::io("<stdin>", e))?;
        if line.trim().is_empty() {
            continue;
        }
        let (label, p) = pipeline.predict(&line)?;
        match p {
            Some(p) => writeln!(stdout, "{label} {p:.6}"),
            None => writeln!(stdout, "{label}"),
        }
        .map_err(stdout_error)?;
    }
    Ok(())
}

fn execute(command: Command) -> Result<()> {
    match command {
        Command::Stats { data } => {
            let corpus = load_corpus(&data)?;
            println!("{}", serde_json::to_string(&corpus_stats(&corpus))?);
            Ok(())
        }
        Command::Prep { opts } => {
            let cfg = opts.config()?;
            let corpus = load_corpus(cfg.dataset.as_deref().unwrap_or(Path::new("")))?;
            let docs = preprocess_corpus(&corpus, &cfg.prep.resolve()?);
            let mut w = csv::Writer::from_writer(io::stdout().lock());
            let csv_err = |e: csv::Error| stdout_error(e.into());
            w.write_record(["label", "tokens"]).map_err(csv_err)?;
            for (s, d) in corpus.statements().iter().zip(&docs) {
                w.write_record([s.label.as_str(), &d.join()]).map_err(csv_err)?;
            }
            w.flush().map_err(stdout_error)
        }
        Command::Wordfreq { opts, top } => {
            let cfg = opts.config()?;
            let corpus = load_corpus(cfg.dataset.as_deref().unwrap_or(Path::new("")))?;
            let mut table = FrequencyTable::from_docs(&preprocess_corpus(&corpus, &cfg.prep.resolve()?));
            if let Some(n) = top {
                table.entries.truncate(n);
            }
            if let Some(dir) = &cfg.output_dir {
                std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
                let p = dir.join("wordfreq.csv");
                let f = std::fs::File::create(&p).map_err(|e| Error::io(&p, e))?;
                table.write_csv(io::BufWriter::new(f)).map_err(|e| Error::io(&p, e))?;
            }
            table.write_csv(io::stdout().lock()).map_err(stdout_error)
        }
        Command::Run { opts, save_models } => {
            let mut cfg = opts.config()?;
            cfg.save_models = save_models;
            if save_models && cfg.output_dir.is_none() {
                return Err(Error::InvalidConfig("--save-models needs --out".into()));
            }
            experiment(cfg)
        }
        Command::Crossval { opts } => {
            let mut cfg = opts.config()?;
            cfg.grid = false;
            cfg.bench = None;
            cfg.cv.get_or_insert_with(CvOptions::default);
            cfg.validate()?;
            experiment(cfg)
        }
        Command::Bench { opts } => {
            let mut cfg = opts.config()?;
            cfg.splits.truncate(1);
            cfg.cv = None;
            cfg.bench.get_or_insert_with(BenchOptions::default);
            experiment(cfg)
        }
        Command::Predict { model } => predict(&model),
    }
}

/// Parses `argv` (program name first) and runs the subcommand.
pub fn dispatch<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match execute(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_data_error() {
                2
            } else {
                1
            }
        }
    }
}
