//! Experiment grid: holdout splits x feature kinds x models, optional
//! cross-validation and latency benchmarks, and the report bundle.

use std::collections::BTreeMap;
use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::bench::{measure_testing_time, write_bench_csv, BenchResult};
use crate::classify::{ModelConfig, ModelKind, TrainedModel};
use crate::dataset::{class_counts, split_indices, ClassCounts, Corpus, Label, SplitSpec};
use crate::error::{Error, Result};
use crate::evaluate::{full_report, EvaluationReport};
use crate::pipeline::{Pipeline, PipelineSpec};
use crate::textprep::{load_contractions, load_stopwords, preprocess_corpus, FrequencyTable, PrepConfig, TokenizedDoc};
use crate::validate::{cross_validate_docs, make_kfold, make_loo, CvResult, FoldPlan};
use crate::vectorize::{FeatureKind, FeatureMatrix, Vectorizer};

pub const THREADS_ENV: &str = "MYTHLAB_THREADS";
const BUNDLE_FORMAT: u32 = 1;

/// Preprocessing settings as they appear in a config file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PrepOptions {
    /// Replaces the shipped stopword list.
    pub stopwords: Option<PathBuf>,
    /// Replaces the shipped contraction table.
    pub contractions: Option<PathBuf>,
    pub lemmatize: bool,
    pub stem: bool,
    pub min_token_len: usize,
}

impl Default for PrepOptions {
    fn default() -> Self {
        PrepOptions {
            stopwords: None,
            contractions: None,
            lemmatize: true,
            stem: true,
            min_token_len: 2,
        }
    }
}

impl PrepOptions {
    pub fn resolve(&self) -> Result<PrepConfig> {
        let mut cfg = PrepConfig::default();
        if let Some(p) = &self.stopwords {
            cfg.stopwords = load_stopwords(p)?;
        }
        if let Some(p) = &self.contractions {
            cfg.contractions = load_contractions(p)?;
        }
        cfg.do_lemmatize = self.lemmatize;
        cfg.do_stem = self.stem;
        cfg.min_token_len = self.min_token_len;
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CvOptions {
    pub k: Vec<usize>,
    pub loo: bool,
    pub stratified: bool,
}

impl Default for CvOptions {
    fn default() -> Self {
        CvOptions {
            k: vec![5, 10],
            loo: false,
            stratified: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BenchOptions {
    pub repeats: usize,
}

impl Default for BenchOptions {
    fn default() -> Self {
        BenchOptions { repeats: 5 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub dataset: Option<PathBuf>,
    pub prep: PrepOptions,
    pub features: Vec<FeatureKind>,
    pub models: Vec<ModelKind>,
    /// Training fractions of the holdout splits.
    pub splits: Vec<f64>,
    pub seed: u64,
    pub stratified_split: bool,
    /// Run the holdout grid; off for cross-validation-only runs.
    pub grid: bool,
    pub cv: Option<CvOptions>,
    pub bench: Option<BenchOptions>,
    pub hyperparameters: ModelConfig,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output_dir: Option<PathBuf>,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub save_models: bool,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            dataset: None,
            prep: PrepOptions::default(),
            features: FeatureKind::ALL.to_vec(),
            models: ModelKind::ALL.to_vec(),
            splits: vec![0.8, 0.7, 0.6],
            seed: 42,
            stratified_split: true,
            grid: true,
            cv: None,
            bench: None,
            hyperparameters: ModelConfig::default(),
            output_dir: None,
            save_models: false,
        }
    }
}

fn has_duplicates<T: PartialEq>(xs: &[T]) -> bool {
    xs.iter().enumerate().any(|(i, x)| xs[..i].contains(x))
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidConfig(format!("config: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidConfig(m));
        if self.features.is_empty() || self.models.is_empty() || self.splits.is_empty() {
            return bad("at least one feature kind, one model and one split are required".into());
        }
        if has_duplicates(&self.features) || has_duplicates(&self.models) || has_duplicates(&self.splits) {
            return bad("features, models and splits must not repeat".into());
        }
        for &s in &self.splits {
            if !(s > 0.0 && s < 1.0) {
                return bad(format!("split fraction {s} is outside (0, 1)"));
            }
        }
        if let Some(cv) = &self.cv {
            if cv.k.is_empty() && !cv.loo {
                return bad("cross-validation needs k values or loo".into());
            }
            if let Some(k) = cv.k.iter().find(|&&k| k < 2) {
                return bad(format!("k-fold needs k >= 2, got {k}"));
            }
            if has_duplicates(&cv.k) {
                return bad("k values must not repeat".into());
            }
        }
        if let Some(b) = &self.bench {
            if b.repeats < 3 {
                return bad(format!("benchmark needs at least 3 repeats, got {}", b.repeats));
            }
        }
        if self.prep.min_token_len == 0 {
            return bad("min_token_len must be positive".into());
        }
        self.hyperparameters.validate()
    }

    /// Hyperparameters with the root seed applied to every seeded model.
    pub fn seeded_hyperparameters(&self) -> ModelConfig {
        let mut m = self.hyperparameters.clone();
        m.svm.seed = self.seed;
        m.forest.seed = self.seed;
        m
    }

    fn spec(&self, prep: &PrepConfig, feature: FeatureKind, model: ModelKind) -> PipelineSpec {
        PipelineSpec {
            prep: prep.clone(),
            feature,
            model,
            models: self.seeded_hyperparameters(),
        }
    }
}

/// `0.8` -> `80-20`.
pub fn split_name(train_fraction: f64) -> String {
    let train = (train_fraction * 100.0).round() as i64;
    format!("{}-{}", train, 100 - train)
}

pub fn cell_key(model: ModelKind, feature: FeatureKind, split: f64) -> String {
    format!("{model}/{feature}/{}", split_name(split))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetSummary {
    pub path: String,
    pub sha256: String,
    pub statements: usize,
    pub counts: ClassCounts,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CvRecord {
    pub model: ModelKind,
    pub feature: FeatureKind,
    #[serde(flatten)]
    pub result: CvResult,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Timestamps {
    pub started_unix_ms: u128,
    pub finished_unix_ms: u128,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunMetadata {
    pub seed: u64,
    pub versions: BTreeMap<String, String>,
    pub timestamps: Timestamps,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportBundle {
    pub format_version: u32,
    pub config: ExperimentConfig,
    pub dataset: DatasetSummary,
    pub accuracy_grid: BTreeMap<String, f64>,
    pub reports: BTreeMap<String, EvaluationReport>,
    /// Cells whose fit or prediction failed, with the error message.
    pub failures: BTreeMap<String, String>,
    pub top_words: Vec<(String, usize)>,
    pub cv_results: Option<Vec<CvRecord>>,
    pub bench_results: Option<Vec<BenchResult>>,
    pub run_metadata: RunMetadata,
}

impl ReportBundle {
    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    /// The bundle as JSON with `run_metadata.timestamps` removed.
    pub fn comparable_json(&self) -> Result<String> {
        let mut v = serde_json::to_value(self)?;
        if let Some(m) = v.get_mut("run_metadata").and_then(|m| m.as_object_mut()) {
            m.remove("timestamps");
        }
        Ok(serde_json::to_string_pretty(&v)?)
    }
}

/// Everything a run produced, including artifacts kept out of the bundle.
pub struct RunOutput {
    pub bundle: ReportBundle,
    pub word_frequencies: FrequencyTable,
    /// Fitted pipelines by cell key, when `save_models` is set.
    pub pipelines: BTreeMap<String, Pipeline>,
}

fn now_ms() -> u128 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map_or(0, |d| d.as_millis())
}

fn summarize(corpus: &Corpus, bytes: &[u8]) -> DatasetSummary {
    DatasetSummary {
        path: corpus.source_path().display().to_string(),
        sha256: hex::encode(Sha256::digest(bytes)),
        statements: corpus.len(),
        counts: class_counts(corpus.labels()),
    }
}

/// Fitted vectorizer and matrices of one holdout split and feature kind.
struct SplitFeatures {
    vectorizer: Vectorizer,
    train: FeatureMatrix,
    test: FeatureMatrix,
}

type SplitJob = (f64, FeatureKind, Result<SplitFeatures>);

fn build_split_features(docs: &[TokenizedDoc], labels: &[Label], cfg: &ExperimentConfig) -> Result<Vec<SplitJob>> {
    let mut jobs = Vec::new();
    for &split in &cfg.splits {
        let part = split_indices(labels, &SplitSpec::new(split, cfg.seed, cfg.stratified_split)?)?;
        for &feature in &cfg.features {
            jobs.push((split, feature, part.clone()));
        }
    }
    Ok(jobs
        .into_par_iter()
        .map(|(split, feature, part)| {
            let pick = |idx: &[usize]| -> (Vec<TokenizedDoc>, Vec<Label>) {
                (
                    idx.iter().map(|&i| docs[i].clone()).collect(),
                    idx.iter().map(|&i| labels[i]).collect(),
                )
            };
            let built = (|| {
                let (train_docs, train_labels) = pick(&part.train);
                let (test_docs, test_labels) = pick(&part.test);
                if test_docs.is_empty() {
                    return Err(Error::EmptyTestSet);
                }
                let vectorizer = Vectorizer::fit(&train_docs, feature)?;
                Ok(SplitFeatures {
                    train: vectorizer.transform_all(&train_docs, &train_labels)?,
                    test: vectorizer.transform_all(&test_docs, &test_labels)?,
                    vectorizer,
                })
            })();
            (split, feature, built)
        })
        .collect())
}

/// Runs the configured experiment on an already loaded corpus.
pub fn run_on_corpus(corpus: &Corpus, dataset_bytes: &[u8], cfg: &ExperimentConfig) -> Result<RunOutput> {
    cfg.validate()?;
    let started = now_ms();
    let prep = cfg.prep.resolve()?;
    let docs = preprocess_corpus(corpus, &prep);
    let labels = corpus.labels();
    let word_frequencies = FrequencyTable::from_docs(&docs);
    let hyper = cfg.seeded_hyperparameters();

    let mut accuracy_grid = BTreeMap::new();
    let mut reports = BTreeMap::new();
    let mut failures = BTreeMap::new();
    let mut kept: BTreeMap<String, (TrainedModel, FeatureKind, f64)> = BTreeMap::new();
    let mut bench_sets: Vec<(FeatureKind, FeatureMatrix)> = Vec::new();
    let mut vectorizers: BTreeMap<(String, FeatureKind), Vectorizer> = BTreeMap::new();

    if cfg.grid {
        let first_split = cfg.splits[0];
        let sets = build_split_features(&docs, &labels, cfg)?;
        let keep_model = |split: f64| cfg.save_models || (cfg.bench.is_some() && split == first_split);
        let cells: Vec<(String, Result<(EvaluationReport, Option<TrainedModel>)>)> = sets
            .par_iter()
            .flat_map_iter(|job| cfg.models.iter().map(move |&model| (job, model)))
            .map(|((split, feature, set), model)| {
                let key = cell_key(model, *feature, *split);
                let result = match set {
                    Err(e) => Err(Error::InvalidConfig(format!("features for {key}: {e}"))),
                    Ok(s) => crate::classify::fit(model, &s.train, &hyper).and_then(|m| {
                        let pred = m.predict_all(&s.test.rows)?;
                        let report = full_report(&s.test.labels, &pred)?;
                        Ok((report, keep_model(*split).then_some(m)))
                    }),
                };
                (key, result)
            })
            .collect();
        for (split, feature, set) in sets {
            let Ok(set) = set else { continue };
            if cfg.bench.is_some() && split == first_split {
                bench_sets.push((feature, set.test.clone()));
            }
            if cfg.save_models {
                vectorizers.insert((split_name(split), feature), set.vectorizer);
            }
        }
        for (key, result) in cells {
            match result {
                Ok((report, model)) => {
                    accuracy_grid.insert(key.clone(), report.accuracy);
                    reports.insert(key.clone(), report);
                    if let Some(m) = model {
                        let (feature, split) = parse_cell(&key);
                        kept.insert(key, (m, feature, split));
                    }
                }
                Err(e) => {
                    log::warn!("cell {key} failed: {e}");
                    failures.insert(key, e.to_string());
                }
            }
        }
    }

    let cv_results =
        match &cfg.cv {
            None => None,
            Some(cv) => {
                let mut plans: Vec<FoldPlan> = Vec::new();
                for &k in &cv.k {
                    plans.push(make_kfold(&labels, k, cv.stratified, cfg.seed)?);
                }
                if cv.loo {
                    plans.push(make_loo(labels.len())?);
                }
                let mut jobs = Vec::new();
                for plan in &plans {
                    for &feature in &cfg.features {
                        for &model in &cfg.models {
                            jobs.push((plan, feature, model));
                        }
                    }
                }
                let out: Vec<(String, Result<CvRecord>)> =
                    jobs.into_par_iter()
                        .map(|(plan, feature, model)| {
                            let spec = cfg.spec(&prep, feature, model);
                            let key = format!("{model}/{feature}/{}", plan.name());
                            let r = cross_validate_docs(&docs, &labels, &spec, plan, &|_, _| {})
                                .map(|result| CvRecord { model, feature, result });
                            (key, r)
                        })
                        .collect();
                let mut records = Vec::new();
                for (key, r) in out {
                    match r {
                        Ok(rec) => records.push(rec),
                        Err(e) => {
                            log::warn!("cross-validation {key} failed: {e}");
                            failures.insert(key, e.to_string());
                        }
                    }
                }
                Some(records)
            }
        };

    let bench_results = match &cfg.bench {
        None => None,
        Some(b) => {
            let mut results = Vec::new();
            for (feature, test) in &bench_sets {
                for &model in &cfg.models {
                    let key = cell_key(model, *feature, cfg.splits[0]);
                    if let Some((m, _, _)) = kept.get(&key) {
                        results.push(measure_testing_time(m, test, b.repeats)?);
                    }
                }
            }
            Some(results)
        }
    };

    let mut pipelines = BTreeMap::new();
    if cfg.save_models {
        for (key, (model, feature, split)) in kept {
            if let Some(v) = vectorizers.get(&(split_name(split), feature)) {
                pipelines.insert(
                    key,
                    Pipeline {
                        prep: prep.clone(),
                        vectorizer: v.clone(),
                        model,
                    },
                );
            }
        }
    }

    let mut recorded = cfg.clone();
    recorded.output_dir = None;
    recorded.save_models = false;
    let bundle = ReportBundle {
        format_version: BUNDLE_FORMAT,
        config: recorded,
        dataset: summarize(corpus, dataset_bytes),
        accuracy_grid,
        reports,
        failures,
        top_words: word_frequencies.entries.iter().take(15).cloned().collect(),
        cv_results,
        bench_results,
        run_metadata: RunMetadata {
            seed: cfg.seed,
            versions: BTreeMap::from([("mythlab".to_string(), env!("CARGO_PKG_VERSION").to_string())]),
            timestamps: Timestamps {
                started_unix_ms: started,
                finished_unix_ms: now_ms(),
            },
        },
    };
    Ok(RunOutput {
        bundle,
        word_frequencies,
        pipelines,
    })
}

fn parse_cell(key: &str) -> (FeatureKind, f64) {
    let mut parts = key.split('/');
    let _model = parts.next();
    let feature = parts.next().and_then(|f| f.parse().ok()).unwrap_or(FeatureKind::Bow);
    let split = parts
        .next()
        .and_then(|s| s.split('-').next())
        .and_then(|t| t.parse::<f64>().ok())
        .map_or(0.0, |t| t / 100.0);
    (feature, split)
}

/// Loads the configured dataset and runs the experiment.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<RunOutput> {
    cfg.validate()?;
    let path = cfg
        .dataset
        .as_ref()
        .ok_or_else(|| Error::InvalidConfig("no dataset given".into()))?;
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    let corpus = crate::dataset::parse_corpus(bytes.as_slice(), path)?;
    run_on_corpus(&corpus, &bytes, cfg)
}

fn create(path: &Path) -> Result<BufWriter<fs::File>> {
    fs::File::create(path)
        .map(BufWriter::new)
        .map_err(|e| Error::io(path, e))
}

fn io_at(path: &Path) -> impl Fn(std::io::Error) -> Error + '_ {
    move |e| Error::io(path, e)
}

pub fn write_table3<W: Write>(bundle: &ReportBundle, mut w: W) -> std::io::Result<()> {
    let cfg = &bundle.config;
    let mut header = vec!["model".to_string()];
    for &s in &cfg.splits {
        for f in &cfg.features {
            header.push(format!("{} {f}", split_name(s)));
        }
    }
    writeln!(w, "{}", header.join(","))?;
    for &m in &cfg.models {
        let mut row = vec![m.to_string()];
        for &s in &cfg.splits {
            for &f in &cfg.features {
                row.push(
                    bundle
                        .accuracy_grid
                        .get(&cell_key(m, f, s))
                        .map_or(String::new(), |a| format!("{a:.4}")),
                );
            }
        }
        writeln!(w, "{}", row.join(","))?;
    }
    Ok(())
}

pub fn write_table4<W: Write>(records: &[CvRecord], mut w: W) -> std::io::Result<()> {
    let mut plans: Vec<String> = Vec::new();
    for r in records {
        if !plans.contains(&r.result.plan) {
            plans.push(r.result.plan.clone());
        }
    }
    let mut rows: Vec<(FeatureKind, ModelKind)> = Vec::new();
    for r in records {
        if !rows.contains(&(r.feature, r.model)) {
            rows.push((r.feature, r.model));
        }
    }
    rows.sort_by_key(|&(f, m)| (f, ModelKind::ALL.iter().position(|&x| x == m)));
    writeln!(w, "feature,model,{}", plans.join(","))?;
    for (f, m) in rows {
        let cells: Vec<String> = plans
            .iter()
            .map(|p| {
                records
                    .iter()
                    .find(|r| r.feature == f && r.model == m && &r.result.plan == p)
                    .map_or(String::new(), |r| format!("{:.4}", r.result.mean_accuracy))
            })
            .collect();
        writeln!(w, "{f},{m},{}", cells.join(","))?;
    }
    Ok(())
}

fn file_key(key: &str) -> String {
    key.replace('/', "_")
}

/// Writes `bundle.json`, the table CSVs, `wordfreq.csv`, one confusion CSV
/// per grid cell and any saved models.
pub fn write_outputs(out: &RunOutput, dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let b = &out.bundle;
    let p = dir.join("bundle.json");
    fs::write(&p, b.to_json()?).map_err(io_at(&p))?;

    if b.config.grid {
        let p = dir.join("table3.csv");
        let mut w = create(&p)?;
        write_table3(b, &mut w).and_then(|_| w.flush()).map_err(io_at(&p))?;
        for (key, report) in &b.reports {
            let p = dir.join(format!("confusion_{}.csv", file_key(key)));
            let mut w = create(&p)?;
            report
                .confusion
                .write_csv(&mut w)
                .and_then(|_| w.flush())
                .map_err(io_at(&p))?;
        }
    }
    if let Some(cv) = &b.cv_results {
        let p = dir.join("table4.csv");
        let mut w = create(&p)?;
        write_table4(cv, &mut w).and_then(|_| w.flush()).map_err(io_at(&p))?;
    }
    if let Some(bench) = &b.bench_results {
        let p = dir.join("table5.csv");
        let mut w = create(&p)?;
        write_bench_csv(bench, &mut w)
            .and_then(|_| w.flush())
            .map_err(io_at(&p))?;
    }
    let p = dir.join("wordfreq.csv");
    let mut w = create(&p)?;
    out.word_frequencies
        .write_csv(&mut w)
        .and_then(|_| w.flush())
        .map_err(io_at(&p))?;
    if !out.pipelines.is_empty() {
        let models = dir.join("models");
        fs::create_dir_all(&models).map_err(|e| Error::io(&models, e))?;
        for (key, pipeline) in &out.pipelines {
            pipeline.save(&models.join(format!("{}.json", file_key(key))))?;
        }
    }
    Ok(())
}

/// Parses a thread cap such as the value of `MYTHLAB_THREADS`.
pub fn parse_threads(value: &str) -> Result<usize> {
    match value.trim().parse::<usize>() {
        Ok(n) if n > 0 => Ok(n),
        _ => Err(Error::InvalidConfig(format!(
            "{THREADS_ENV} must be a positive integer, got {value:?}"
        ))),
    }
}

pub fn threads_from_env() -> Result<Option<usize>> {
    match std::env::var(THREADS_ENV) {
        Ok(v) => parse_threads(&v).map(Some),
        Err(_) => Ok(None),
    }
}

/// A pool capped at `threads` workers (rayon's default when `None`).
pub fn thread_pool(threads: Option<usize>) -> Result<rayon::ThreadPool> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        b = b.num_threads(n);
    }
    b.build().map_err(|e| Error::InvalidConfig(format!("thread pool: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::parse_corpus;

    const CSV: &str = "label,statement
Fact,Babies learn language by hearing people talk.
Fact,Reading aloud builds toddler vocabulary.
Fact,Sleep supports healthy brain development.
Fact,Play helps children develop motor skills.
Fact,Responsive care helps babies develop trust.
Fact,Children develop at different rates.
Myth,Sugar makes kids hyperactive.
Myth,Lifting weights stunts growth.
Myth,Mozart makes babies smarter.
Fact,Talking with infants supports language development.
Fact,Routines help toddlers feel secure.
Myth,Picking up crying babies spoils them.
";

    fn small_cfg() -> ExperimentConfig {
        let mut cfg = ExperimentConfig {
            models: vec![ModelKind::Lr, ModelKind::Nb, ModelKind::Knn],
            splits: vec![0.75],
            ..ExperimentConfig::default()
        };
        cfg.hyperparameters.knn.k = 3;
        cfg
    }

    fn corpus() -> Corpus {
        parse_corpus(CSV.as_bytes(), "mem.csv").unwrap()
    }

    #[test]
    fn split_names() {
        assert_eq!(split_name(0.8), "80-20");
        assert_eq!(split_name(0.7), "70-30");
        assert_eq!(split_name(0.6), "60-40");
        assert_eq!(cell_key(ModelKind::Lr, FeatureKind::Bow, 0.8), "LR/BoW/80-20");
        assert_eq!(parse_cell("LR/TF-IDF/70-30"), (FeatureKind::TfIdf, 0.7));
    }

    #[test]
    fn config_validation() {
        assert!(ExperimentConfig::default().validate().is_ok());
        let mut c = ExperimentConfig::default();
        c.models.clear();
        assert!(c.validate().is_err());
        let c = ExperimentConfig {
            splits: vec![1.0],
            ..ExperimentConfig::default()
        };
        assert!(c.validate().is_err());
        assert!(ExperimentConfig::from_json(r#"{"sede": 1}"#).is_err());
        let c = ExperimentConfig::from_json(r#"{"models": ["lr"], "features": ["tfidf"]}"#);
        assert!(c.is_err(), "kinds use their canonical names in config files");
        let c = ExperimentConfig::from_json(r#"{"models": ["LR"], "features": ["TF-IDF"], "seed": 7}"#).unwrap();
        assert_eq!(
            (c.models, c.features, c.seed),
            (vec![ModelKind::Lr], vec![FeatureKind::TfIdf], 7)
        );
    }

    #[test]
    fn single_cell_grid() {
        let cfg = ExperimentConfig {
            models: vec![ModelKind::Lr],
            features: vec![FeatureKind::Bow],
            splits: vec![0.75],
            ..ExperimentConfig::default()
        };
        let out = run_on_corpus(&corpus(), CSV.as_bytes(), &cfg).unwrap();
        assert_eq!(out.bundle.accuracy_grid.len(), 1);
        let (k, acc) = out.bundle.accuracy_grid.iter().next().unwrap();
        assert_eq!(k, "LR/BoW/75-25");
        assert_eq!(*acc, out.bundle.reports[k].accuracy);
    }

    #[test]
    fn runs_are_reproducible_across_thread_counts() {
        let mut cfg = small_cfg();
        cfg.cv = Some(CvOptions {
            k: vec![3],
            loo: true,
            stratified: true,
        });
        let c = corpus();
        let a = thread_pool(Some(1))
            .unwrap()
            .install(|| run_on_corpus(&c, CSV.as_bytes(), &cfg))
            .unwrap();
        let b = thread_pool(Some(4))
            .unwrap()
            .install(|| run_on_corpus(&c, CSV.as_bytes(), &cfg))
            .unwrap();
        assert_eq!(a.bundle.comparable_json().unwrap(), b.bundle.comparable_json().unwrap());
        assert_eq!(a.bundle.cv_results.as_ref().unwrap().len(), 2 * 2 * 3);
    }

    #[test]
    fn failures_are_recorded_per_cell() {
        let mut cfg = small_cfg();
        // 9 training statements, k = 11 neighbours: KNN cells fail, others succeed.
        cfg.hyperparameters.knn.k = 11;
        let out = run_on_corpus(&corpus(), CSV.as_bytes(), &cfg).unwrap();
        assert_eq!(out.bundle.failures.len(), 2);
        assert!(out.bundle.failures.keys().all(|k| k.starts_with("KNN/")));
        assert_eq!(out.bundle.accuracy_grid.len(), 4);
    }

    #[test]
    fn outputs_are_written() {
        let mut cfg = small_cfg();
        cfg.bench = Some(BenchOptions { repeats: 3 });
        cfg.cv = Some(CvOptions {
            k: vec![2],
            loo: false,
            stratified: true,
        });
        cfg.save_models = true;
        let out = run_on_corpus(&corpus(), CSV.as_bytes(), &cfg).unwrap();
        let dir = tempfile::tempdir().unwrap();
        write_outputs(&out, dir.path()).unwrap();
        for f in [
            "bundle.json",
            "table3.csv",
            "table4.csv",
            "table5.csv",
            "wordfreq.csv",
            "confusion_LR_BoW_75-25.csv",
        ] {
            assert!(dir.path().join(f).exists(), "{f} missing");
        }
        let t3 = fs::read_to_string(dir.path().join("table3.csv")).unwrap();
        assert_eq!(t3.lines().next().unwrap(), "model,75-25 BoW,75-25 TF-IDF");
        assert_eq!(t3.lines().count(), 4);
        let t5 = fs::read_to_string(dir.path().join("table5.csv")).unwrap();
        assert_eq!(t5.lines().count(), 1 + 6);
        let saved = Pipeline::load(&dir.path().join("models/LR_BoW_75-25.json")).unwrap();
        assert_eq!(saved.model.kind(), ModelKind::Lr);
        let bundle: serde_json::Value =
            serde_json::from_str(&fs::read_to_string(dir.path().join("bundle.json")).unwrap()).unwrap();
        assert!(bundle["config"].get("output_dir").is_none());
        assert_eq!(bundle["run_metadata"]["seed"], 42);
    }

    #[test]
    fn thread_values() {
        assert_eq!(parse_threads("4").unwrap(), 4);
        assert!(parse_threads("0").is_err());
        assert!(parse_threads("many").is_err());
    }
}
