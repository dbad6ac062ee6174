//! The six classifiers behind one fit/predict contract.

mod forest;
mod knn;
mod logistic;
mod naive_bayes;
mod svm;
mod tree;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::dataset::Label;
use crate::error::{Error, Result};
use crate::vectorize::{FeatureMatrix, FeatureVector, Fingerprint};

pub use forest::{fit_random_forest, ForestConfig, RandomForest};
pub use knn::{knn_predict, KnnConfig, KnnModel};
pub use logistic::{fit_logistic, fit_logistic_traced, sigmoid, LogisticModel, LogisticObjective, LrConfig};
pub use naive_bayes::{fit_naive_bayes, NaiveBayesModel, NbConfig};
pub use svm::{fit_linear_svm, pegasos, svm_objective, LinearSvmModel, PegasosRun, SvmConfig};
pub use tree::{fit_decision_tree, Criterion, DecisionTree, Node, TreeConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ModelKind {
    #[serde(rename = "LR")]
    Lr,
    #[serde(rename = "NB")]
    Nb,
    #[serde(rename = "SVM")]
    Svm,
    #[serde(rename = "DT")]
    Dt,
    #[serde(rename = "RF")]
    Rf,
    #[serde(rename = "KNN")]
    Knn,
}

impl ModelKind {
    /// Column order of the published tables.
    pub const ALL: [ModelKind; 6] = [
        ModelKind::Lr,
        ModelKind::Rf,
        ModelKind::Svm,
        ModelKind::Nb,
        ModelKind::Dt,
        ModelKind::Knn,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ModelKind::Lr => "LR",
            ModelKind::Nb => "NB",
            ModelKind::Svm => "SVM",
            ModelKind::Dt => "DT",
            ModelKind::Rf => "RF",
            ModelKind::Knn => "KNN",
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ModelKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let u = s.trim().to_ascii_uppercase();
        ModelKind::ALL
            .into_iter()
            .find(|k| k.as_str() == u)
            .ok_or_else(|| format!("unknown model {s:?} (expected one of LR, RF, SVM, NB, DT, KNN)"))
    }
}

/// Hyperparameters for every model kind.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ModelConfig {
    pub lr: LrConfig,
    pub nb: NbConfig,
    pub svm: SvmConfig,
    pub tree: TreeConfig,
    pub forest: ForestConfig,
    pub knn: KnnConfig,
}

impl ModelConfig {
    pub fn validate(&self) -> Result<()> {
        self.lr.validate()?;
        self.nb.validate()?;
        self.svm.validate()?;
        self.tree.validate()?;
        self.forest.validate()?;
        self.knn.validate()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum ModelParams {
    Lr(LogisticModel),
    Nb(NaiveBayesModel),
    Svm(LinearSvmModel),
    Dt(DecisionTree),
    Rf(RandomForest),
    Knn(KnnModel),
}

impl ModelParams {
    pub fn kind(&self) -> ModelKind {
        match self {
            ModelParams::Lr(_) => ModelKind::Lr,
            ModelParams::Nb(_) => ModelKind::Nb,
            ModelParams::Svm(_) => ModelKind::Svm,
            ModelParams::Dt(_) => ModelKind::Dt,
            ModelParams::Rf(_) => ModelKind::Rf,
            ModelParams::Knn(_) => ModelKind::Knn,
        }
    }
}

/// A fitted model bound to the vocabulary it was trained on.
#[derive(Debug, Clone, PartialEq)]
pub struct TrainedModel {
    pub fingerprint: Fingerprint,
    pub dim: usize,
    pub params: ModelParams,
}

const MODEL_FORMAT: u32 = 1;

#[derive(Serialize, Deserialize)]
struct Envelope {
    format_version: u32,
    kind: ModelKind,
    vocabulary_fingerprint: Fingerprint,
    dim: usize,
    parameters: serde_json::Value,
}

impl TrainedModel {
    pub fn kind(&self) -> ModelKind {
        self.params.kind()
    }

    fn check(&self, x: &FeatureVector) -> Result<()> {
        if x.fingerprint() != self.fingerprint {
            return Err(Error::FingerprintMismatch {
                expected: self.fingerprint,
                found: x.fingerprint(),
            });
        }
        if x.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: x.dim(),
            });
        }
        Ok(())
    }

    pub fn predict(&self, x: &FeatureVector) -> Result<Label> {
        self.check(x)?;
        Ok(match &self.params {
            ModelParams::Lr(m) => m.predict(x),
            ModelParams::Nb(m) => m.predict(x),
            ModelParams::Svm(m) => m.predict(x),
            ModelParams::Dt(m) => m.predict(x),
            ModelParams::Rf(m) => m.predict(x),
            ModelParams::Knn(m) => m.predict(x)?,
        })
    }

    pub fn predict_all(&self, rows: &[FeatureVector]) -> Result<Vec<Label>> {
        rows.iter().map(|x| self.predict(x)).collect()
    }

    /// Myth probability; only logistic regression is calibrated.
    pub fn predict_proba(&self, x: &FeatureVector) -> Result<f64> {
        self.check(x)?;
        match &self.params {
            ModelParams::Lr(m) => Ok(m.proba(x)),
            other => Err(Error::WrongModelKind {
                expected: "LR",
                found: other.kind().as_str(),
            }),
        }
    }

    pub fn to_value(&self) -> Result<serde_json::Value> {
        let parameters = match &self.params {
            ModelParams::Lr(m) => serde_json::to_value(m)?,
            ModelParams::Nb(m) => serde_json::to_value(m)?,
            ModelParams::Svm(m) => serde_json::to_value(m)?,
            ModelParams::Dt(m) => serde_json::to_value(m)?,
            ModelParams::Rf(m) => serde_json::to_value(m)?,
            ModelParams::Knn(m) => serde_json::to_value(m)?,
        };
        Ok(serde_json::to_value(Envelope {
            format_version: MODEL_FORMAT,
            kind: self.kind(),
            vocabulary_fingerprint: self.fingerprint,
            dim: self.dim,
            parameters,
        })?)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(&self.to_value()?)?)
    }

    pub fn from_value(value: serde_json::Value) -> Result<Self> {
        let env: Envelope = serde_json::from_value(value)?;
        if env.format_version != MODEL_FORMAT {
            return Err(Error::FormatVersion {
                what: "model",
                found: env.format_version,
                expected: MODEL_FORMAT,
            });
        }
        let p = env.parameters;
        let params = match env.kind {
            ModelKind::Lr => ModelParams::Lr(serde_json::from_value(p)?),
            ModelKind::Nb => ModelParams::Nb(serde_json::from_value(p)?),
            ModelKind::Svm => ModelParams::Svm(serde_json::from_value(p)?),
            ModelKind::Dt => ModelParams::Dt(serde_json::from_value(p)?),
            ModelKind::Rf => ModelParams::Rf(serde_json::from_value(p)?),
            ModelKind::Knn => {
                let mut m: KnnModel = serde_json::from_value(p)?;
                m.rebuild()?;
                ModelParams::Knn(m)
            }
        };
        let model = TrainedModel {
            fingerprint: env.vocabulary_fingerprint,
            dim: env.dim,
            params,
        };
        model.validate_shape()?;
        Ok(model)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_value(serde_json::from_str(text)?)
    }

    /// Rejects parameter blocks whose sizes disagree with `dim`.
    fn validate_shape(&self) -> Result<()> {
        let dims: Vec<usize> = match &self.params {
            ModelParams::Lr(m) => vec![m.weights.len()],
            ModelParams::Nb(m) => m.log_likelihood.iter().map(Vec::len).collect(),
            ModelParams::Svm(m) => vec![m.weights.len()],
            ModelParams::Dt(m) => return m.validate(self.dim),
            ModelParams::Rf(m) => {
                for t in &m.trees {
                    t.validate(self.dim)?;
                }
                return Ok(());
            }
            ModelParams::Knn(m) => m.rows.iter().map(FeatureVector::dim).collect(),
        };
        match dims.into_iter().find(|&d| d != self.dim) {
            Some(found) => Err(Error::DimensionMismatch {
                expected: self.dim,
                found,
            }),
            None => Ok(()),
        }
    }
}

pub fn fit(kind: ModelKind, train: &FeatureMatrix, cfg: &ModelConfig) -> Result<TrainedModel> {
    match kind {
        ModelKind::Lr => fit_logistic(train, &cfg.lr),
        ModelKind::Nb => fit_naive_bayes(train, &cfg.nb),
        ModelKind::Svm => fit_linear_svm(train, &cfg.svm),
        ModelKind::Dt => fit_decision_tree(train, &cfg.tree),
        ModelKind::Rf => fit_random_forest(train, &cfg.forest),
        ModelKind::Knn => knn::fit_knn(train, &cfg.knn),
    }
}

fn wrap(train: &FeatureMatrix, params: ModelParams) -> TrainedModel {
    TrainedModel {
        fingerprint: train.fingerprint(),
        dim: train.dim(),
        params,
    }
}

fn require_rows(train: &FeatureMatrix) -> Result<()> {
    if train.is_empty() {
        Err(Error::EmptyTrainingSet)
    } else {
        Ok(())
    }
}

fn require_both_classes(labels: &[Label]) -> Result<()> {
    if labels.is_empty() {
        return Err(Error::EmptyTrainingSet);
    }
    let first = labels[0];
    if labels.iter().all(|&l| l == first) {
        return Err(Error::SingleClass);
    }
    Ok(())
}

/// Majority label; ties go to Fact.
pub fn majority(counts: [usize; 2]) -> Label {
    if counts[1] > counts[0] {
        Label::Myth
    } else {
        Label::Fact
    }
}

fn counts_of(labels: impl IntoIterator<Item = Label>) -> [usize; 2] {
    let mut c = [0usize; 2];
    for l in labels {
        c[l.index()] += 1;
    }
    c
}
