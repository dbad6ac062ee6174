//! Text-to-label pipeline: preprocessing, a fitted vectorizer and a model.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::classify::{self, ModelConfig, ModelKind, TrainedModel};
use crate::dataset::Label;
use crate::error::{Error, Result};
use crate::textprep::{preprocess, PrepConfig, TokenizedDoc};
use crate::vectorize::{FeatureKind, FeatureMatrix, Vectorizer};

/// Everything needed to fit a pipeline on training documents.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PipelineSpec {
    pub prep: PrepConfig,
    pub feature: FeatureKind,
    pub model: ModelKind,
    pub models: ModelConfig,
}

/// Vectorizer and model fitted on the same training documents.
#[derive(Debug, Clone)]
pub struct FittedFeatures {
    pub vectorizer: Vectorizer,
    pub train: FeatureMatrix,
}

impl PipelineSpec {
    /// Fits the vectorizer and the model on already preprocessed documents.
    pub fn fit_docs(&self, docs: &[TokenizedDoc], labels: &[Label]) -> Result<(Vectorizer, TrainedModel)> {
        let vectorizer = Vectorizer::fit(docs, self.feature)?;
        let train = vectorizer.transform_all(docs, labels)?;
        let model = classify::fit(self.model, &train, &self.models)?;
        Ok((vectorizer, model))
    }

    /// Fits on training documents and predicts the given evaluation documents.
    pub fn fit_predict(
        &self,
        train_docs: &[TokenizedDoc],
        train_labels: &[Label],
        eval_docs: &[TokenizedDoc],
    ) -> Result<Vec<Label>> {
        let (vectorizer, model) = self.fit_docs(train_docs, train_labels)?;
        eval_docs
            .iter()
            .map(|d| model.predict(&vectorizer.transform(d)))
            .collect()
    }
}

const PIPELINE_FORMAT: u32 = 1;

/// A persisted, ready-to-use classifier for raw statements.
#[derive(Debug, Clone)]
pub struct Pipeline {
    pub prep: PrepConfig,
    pub vectorizer: Vectorizer,
    pub model: TrainedModel,
}

#[derive(Serialize, Deserialize)]
struct PipelineDoc {
    format_version: u32,
    prep: PrepConfig,
    vectorizer: serde_json::Value,
    model: serde_json::Value,
}

impl Pipeline {
    pub fn fit(spec: &PipelineSpec, texts: &[&str], labels: &[Label]) -> Result<Self> {
        spec.prep.validate()?;
        let docs: Vec<TokenizedDoc> = texts.iter().map(|t| preprocess(t, &spec.prep)).collect();
        let (vectorizer, model) = spec.fit_docs(&docs, labels)?;
        Ok(Pipeline {
            prep: spec.prep.clone(),
            vectorizer,
            model,
        })
    }

    /// Predicted label and, for logistic regression, the Myth probability.
    pub fn predict(&self, text: &str) -> Result<(Label, Option<f64>)> {
        let x = self.vectorizer.transform(&preprocess(text, &self.prep));
        let label = self.model.predict(&x)?;
        let p = match self.model.kind() {
            ModelKind::Lr => Some(self.model.predict_proba(&x)?),
            _ => None,
        };
        Ok((label, p))
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(&PipelineDoc {
            format_version: PIPELINE_FORMAT,
            prep: self.prep.clone(),
            vectorizer: self.vectorizer.to_value()?,
            model: self.model.to_value()?,
        })?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: PipelineDoc = serde_json::from_str(text)?;
        if doc.format_version != PIPELINE_FORMAT {
            return Err(Error::FormatVersion {
                what: "pipeline",
                found: doc.format_version,
                expected: PIPELINE_FORMAT,
            });
        }
        doc.prep.validate()?;
        let vectorizer = Vectorizer::from_value(doc.vectorizer)?;
        let model = TrainedModel::from_value(doc.model)?;
        if model.fingerprint != vectorizer.vocabulary.fingerprint() {
            return Err(Error::FingerprintMismatch {
                expected: model.fingerprint,
                found: vectorizer.vocabulary.fingerprint(),
            });
        }
        Ok(Pipeline {
            prep: doc.prep,
            vectorizer,
            model,
        })
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json()?).map_err(|e| Error::io(path, e))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text)
    }
}
