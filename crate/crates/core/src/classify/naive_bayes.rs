//! Multinomial naive Bayes with additive (Laplace) smoothing.

use serde::{Deserialize, Serialize};

use super::{counts_of, require_both_classes, wrap, ModelParams, TrainedModel};
use crate::dataset::Label;
use crate::error::{Error, Result};
use crate::vectorize::{FeatureMatrix, FeatureVector};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct NbConfig {
    pub alpha: f64,
}

impl Default for NbConfig {
    fn default() -> Self {
        NbConfig { alpha: 1.0 }
    }
}

impl NbConfig {
    pub fn validate(&self) -> Result<()> {
        if self.alpha > 0.0 && self.alpha.is_finite() {
            Ok(())
        } else {
            Err(Error::InvalidConfig(format!(
                "naive Bayes alpha must be positive, got {}",
                self.alpha
            )))
        }
    }
}

const TIE_TOLERANCE: f64 = 1e-12;

/// Log-priors and per-term log-likelihoods, indexed `[Fact, Myth]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NaiveBayesModel {
    pub log_prior: [f64; 2],
    pub log_likelihood: [Vec<f64>; 2],
}

impl NaiveBayesModel {
    pub fn joint_log_likelihood(&self, x: &FeatureVector) -> [f64; 2] {
        let mut out = self.log_prior;
        for (c, o) in out.iter_mut().enumerate() {
            *o += x.dot(&self.log_likelihood[c]);
        }
        out
    }

    /// Scores closer than rounding error count as a tie and go to Fact;
    /// otherwise exact posterior ties could land on either side.
    pub fn predict(&self, x: &FeatureVector) -> Label {
        let j = self.joint_log_likelihood(x);
        let scale = j[0].abs().max(j[1].abs()).max(1.0);
        if j[1] - j[0] > TIE_TOLERANCE * scale {
            Label::Myth
        } else {
            Label::Fact
        }
    }
}

pub fn fit_naive_bayes(train: &FeatureMatrix, cfg: &NbConfig) -> Result<TrainedModel> {
    cfg.validate()?;
    require_both_classes(&train.labels)?;
    let dim = train.dim();
    let mut counts = [vec![0.0; dim], vec![0.0; dim]];
    let mut fractional = false;
    for (x, l) in train.rows.iter().zip(&train.labels) {
        for &(c, v) in x.entries() {
            if v < 0.0 {
                return Err(Error::NegativeFeature { column: c, value: v });
            }
            fractional |= v.fract() != 0.0;
            counts[l.index()][c] += v;
        }
    }
    if fractional {
        static WARNED: std::sync::Once = std::sync::Once::new();
        WARNED.call_once(|| {
            log::warn!("naive Bayes fitted on non-integer features; treating weights as fractional counts")
        });
    }
    let n = train.len() as f64;
    let class_n = counts_of(train.labels.iter().copied());
    let log_prior = [(class_n[0] as f64 / n).ln(), (class_n[1] as f64 / n).ln()];
    let alpha = cfg.alpha;
    let log_likelihood = counts.map(|row| {
        let total: f64 = row.iter().sum();
        let denom = total + alpha * dim as f64;
        row.iter().map(|&c| ((c + alpha) / denom).ln()).collect::<Vec<f64>>()
    });
    Ok(wrap(
        train,
        ModelParams::Nb(NaiveBayesModel {
            log_prior,
            log_likelihood,
        }),
    ))
}
