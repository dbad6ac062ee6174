//! Binary logistic regression fitted by full-batch gradient descent.

use serde::{Deserialize, Serialize};

use super::{require_both_classes, wrap, ModelParams, TrainedModel};
use crate::dataset::Label;
use crate::error::{Error, Result};
use crate::vectorize::{FeatureMatrix, FeatureVector};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LrConfig {
    pub learning_rate: f64,
    pub l2_lambda: f64,
    pub max_epochs: usize,
    pub tol: f64,
}

impl Default for LrConfig {
    fn default() -> Self {
        LrConfig {
            learning_rate: 0.1,
            l2_lambda: 1e-4,
            max_epochs: 1000,
            tol: 1e-6,
        }
    }
}

impl LrConfig {
    pub fn validate(&self) -> Result<()> {
        let ok = self.learning_rate > 0.0
            && self.learning_rate.is_finite()
            && self.l2_lambda >= 0.0
            && self.l2_lambda.is_finite()
            && self.max_epochs >= 1
            && self.tol > 0.0
            && self.tol < 1.0;
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidConfig(format!(
                "invalid logistic regression settings {self:?}"
            )))
        }
    }
}

pub fn sigmoid(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}

/// ln(1 + e^z) without overflow.
fn softplus(z: f64) -> f64 {
    if z > 0.0 {
        z + (-z).exp().ln_1p()
    } else {
        z.exp().ln_1p()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LogisticModel {
    pub weights: Vec<f64>,
    pub bias: f64,
    pub epochs_run: usize,
    pub converged: bool,
}

impl LogisticModel {
    pub fn zero(dim: usize) -> Self {
        LogisticModel {
            weights: vec![0.0; dim],
            bias: 0.0,
            epochs_run: 0,
            converged: false,
        }
    }

    pub fn proba(&self, x: &FeatureVector) -> f64 {
        sigmoid(x.dot(&self.weights) + self.bias)
    }

    pub fn predict(&self, x: &FeatureVector) -> Label {
        if self.proba(x) >= 0.5 {
            Label::Myth
        } else {
            Label::Fact
        }
    }
}

/// Mean negative log-likelihood plus `(lambda / 2) * |w|^2`; the bias is
/// not penalized. Parameters are laid out as `[w_0, .., w_{d-1}, b]`.
pub struct LogisticObjective<'a> {
    rows: &'a [FeatureVector],
    targets: Vec<f64>,
    dim: usize,
    lambda: f64,
}

impl<'a> LogisticObjective<'a> {
    pub fn new(rows: &'a [FeatureVector], labels: &[Label], dim: usize, lambda: f64) -> Self {
        LogisticObjective {
            rows,
            targets: labels
                .iter()
                .map(|&l| if l == Label::Myth { 1.0 } else { 0.0 })
                .collect(),
            dim,
            lambda,
        }
    }

    fn margin(&self, x: &FeatureVector, params: &[f64]) -> f64 {
        x.dot(&params[..self.dim]) + params[self.dim]
    }

    pub fn loss(&self, params: &[f64]) -> f64 {
        let n = self.rows.len() as f64;
        let nll: f64 = self
            .rows
            .iter()
            .zip(&self.targets)
            .map(|(x, &y)| {
                let z = self.margin(x, params);
                softplus(z) - y * z
            })
            .sum();
        let reg: f64 = params[..self.dim].iter().map(|w| w * w).sum();
        nll / n + 0.5 * self.lambda * reg
    }

    pub fn gradient(&self, params: &[f64]) -> Vec<f64> {
        let n = self.rows.len() as f64;
        let mut g = vec![0.0; self.dim + 1];
        for (x, &y) in self.rows.iter().zip(&self.targets) {
            let r = sigmoid(self.margin(x, params)) - y;
            for &(c, v) in x.entries() {
                g[c] += r * v;
            }
            g[self.dim] += r;
        }
        for (gi, wi) in g[..self.dim].iter_mut().zip(&params[..self.dim]) {
            *gi = *gi / n + self.lambda * wi;
        }
        g[self.dim] /= n;
        g
    }

    /// Upper bound on the gradient's Lipschitz constant.
    fn smoothness(&self) -> f64 {
        let max_sq = self.rows.iter().map(|x| x.norm().powi(2) + 1.0).fold(0.0, f64::max);
        0.25 * max_sq + self.lambda
    }
}

pub struct LogisticTrace {
    pub model: TrainedModel,
    /// Objective value before each epoch's step, then once more at the end.
    pub losses: Vec<f64>,
}

/// Fits and also returns the per-epoch training loss.
///
/// The step is capped at the inverse of the smoothness bound so the loss
/// never increases, whatever the row norms.
pub fn fit_logistic_traced(train: &FeatureMatrix, cfg: &LrConfig) -> Result<LogisticTrace> {
    cfg.validate()?;
    require_both_classes(&train.labels)?;
    let dim = train.dim();
    let obj = LogisticObjective::new(&train.rows, &train.labels, dim, cfg.l2_lambda);
    let step = cfg.learning_rate.min(1.0 / obj.smoothness());
    let mut params = vec![0.0; dim + 1];
    let mut losses = Vec::new();
    let mut epochs_run = 0;
    let mut converged = false;
    while epochs_run < cfg.max_epochs {
        losses.push(obj.loss(&params));
        let g = obj.gradient(&params);
        if g.iter().all(|v| v.abs() < cfg.tol) {
            converged = true;
            break;
        }
        for (p, gi) in params.iter_mut().zip(&g) {
            *p -= step * gi;
        }
        epochs_run += 1;
    }
    if !converged {
        losses.push(obj.loss(&params));
    }
    let bias = params.pop().expect("bias slot");
    let model = LogisticModel {
        weights: params,
        bias,
        epochs_run,
        converged,
    };
    Ok(LogisticTrace {
        model: wrap(train, ModelParams::Lr(model)),
        losses,
    })
}

pub fn fit_logistic(train: &FeatureMatrix, cfg: &LrConfig) -> Result<TrainedModel> {
    fit_logistic_traced(train, cfg).map(|t| t.model)
}
