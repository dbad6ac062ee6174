//! Linear SVM trained in the primal with Pegasos.
//!
//! A constant 1 is appended to every row so the bias is learned as an
//! ordinary (regularized) weight.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{require_both_classes, wrap, ModelParams, TrainedModel};
use crate::dataset::Label;
use crate::error::{Error, Result};
use crate::rng;
use crate::vectorize::{FeatureMatrix, FeatureVector};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SvmConfig {
    pub l2_lambda: f64,
    /// Passes over the data; each pass is `n` sampled steps.
    pub epochs: usize,
    pub seed: u64,
}

impl Default for SvmConfig {
    fn default() -> Self {
        SvmConfig {
            l2_lambda: 1e-4,
            epochs: 100,
            seed: 42,
        }
    }
}

impl SvmConfig {
    pub fn validate(&self) -> Result<()> {
        if self.l2_lambda > 0.0 && self.l2_lambda.is_finite() && self.epochs >= 1 {
            Ok(())
        } else {
            Err(Error::InvalidConfig(format!("invalid SVM settings {self:?}")))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearSvmModel {
    pub weights: Vec<f64>,
    pub bias: f64,
}

impl LinearSvmModel {
    pub fn score(&self, x: &FeatureVector) -> f64 {
        x.dot(&self.weights) + self.bias
    }

    /// Zero score is a tie and goes to Fact.
    pub fn predict(&self, x: &FeatureVector) -> Label {
        if self.score(x) > 0.0 {
            Label::Myth
        } else {
            Label::Fact
        }
    }
}

fn sign(l: Label) -> f64 {
    if l == Label::Myth {
        1.0
    } else {
        -1.0
    }
}

/// `(lambda / 2) |w_aug|^2 + mean hinge loss` for an augmented weight vector
/// `[w.., b]`.
pub fn svm_objective(w_aug: &[f64], rows: &[FeatureVector], labels: &[Label], lambda: f64) -> f64 {
    let d = w_aug.len() - 1;
    let hinge: f64 = rows
        .iter()
        .zip(labels)
        .map(|(x, &l)| (1.0 - sign(l) * (x.dot(&w_aug[..d]) + w_aug[d])).max(0.0))
        .sum();
    0.5 * lambda * w_aug.iter().map(|v| v * v).sum::<f64>() + hinge / rows.len() as f64
}

/// Augmented iterates of one Pegasos run.
#[derive(Debug, Clone)]
pub struct PegasosRun {
    /// Iterate after the first step.
    pub first: Vec<f64>,
    /// Final iterate.
    pub last: Vec<f64>,
    /// Mean of the iterates over the second half of the run.
    pub average: Vec<f64>,
    pub steps: usize,
}

/// Weight vector `w = scale * v` so the shrink step costs O(1), with
/// running sums for the tail average kept as `A * v - u`.
struct LazyWeights {
    v: Vec<f64>,
    scale: f64,
    v_sq: f64,
    acc_scale: f64,
    u: Vec<f64>,
}

impl LazyWeights {
    fn new(dim: usize) -> Self {
        LazyWeights {
            v: vec![0.0; dim],
            scale: 1.0,
            v_sq: 0.0,
            acc_scale: 0.0,
            u: vec![0.0; dim],
        }
    }

    fn set_v(&mut self, j: usize, new: f64) {
        let old = self.v[j];
        self.u[j] += self.acc_scale * (new - old);
        self.v_sq += new * new - old * old;
        self.v[j] = new;
    }

    fn margin(&self, x: &FeatureVector, d: usize) -> f64 {
        self.scale * (x.dot(&self.v[..d]) + self.v[d])
    }

    fn shrink(&mut self, factor: f64) {
        if factor == 0.0 {
            for j in 0..self.v.len() {
                if self.v[j] != 0.0 {
                    self.set_v(j, 0.0);
                }
            }
            self.v_sq = 0.0;
            self.scale = 1.0;
        } else {
            self.scale *= factor;
            if self.scale < 1e-9 {
                self.renormalize();
            }
        }
    }

    fn renormalize(&mut self) {
        let s = self.scale;
        for x in &mut self.v {
            *x *= s;
        }
        self.v_sq = self.v.iter().map(|x| x * x).sum();
        self.acc_scale /= s;
        self.scale = 1.0;
    }

    fn add(&mut self, x: &FeatureVector, d: usize, coef: f64) {
        let c = coef / self.scale;
        for &(j, val) in x.entries() {
            self.set_v(j, self.v[j] + c * val);
        }
        self.set_v(d, self.v[d] + c);
    }

    fn norm(&self) -> f64 {
        self.scale.abs() * self.v_sq.max(0.0).sqrt()
    }

    fn dense(&self) -> Vec<f64> {
        self.v.iter().map(|x| x * self.scale).collect()
    }

    fn accumulate(&mut self) {
        self.acc_scale += self.scale;
    }

    fn average(&self, count: usize) -> Vec<f64> {
        self.v
            .iter()
            .zip(&self.u)
            .map(|(v, u)| (self.acc_scale * v - u) / count as f64)
            .collect()
    }
}

/// Runs `epochs * n` Pegasos steps. Step `t` samples a row uniformly, uses
/// rate `1 / (lambda t)` and projects onto the ball of radius
/// `1 / sqrt(lambda)`.
pub fn pegasos(rows: &[FeatureVector], labels: &[Label], dim: usize, cfg: &SvmConfig) -> PegasosRun {
    let n = rows.len();
    let d = dim;
    let total = cfg.epochs * n;
    let tail_start = total / 2;
    let radius = 1.0 / cfg.l2_lambda.sqrt();
    let mut rng = rng::substream(cfg.seed, "pegasos", 0);
    let mut w = LazyWeights::new(d + 1);
    let mut first = Vec::new();
    for t in 1..=total {
        let i = rng.gen_range(0..n);
        let eta = 1.0 / (cfg.l2_lambda * t as f64);
        let y = sign(labels[i]);
        let violated = y * w.margin(&rows[i], d) < 1.0;
        w.shrink(1.0 - 1.0 / t as f64);
        if violated {
            w.add(&rows[i], d, eta * y);
        }
        let norm = w.norm();
        if norm > radius {
            w.shrink(radius / norm);
        }
        if t == 1 {
            first = w.dense();
        }
        if t > tail_start {
            w.accumulate();
        }
    }
    PegasosRun {
        first,
        last: w.dense(),
        average: w.average(total - tail_start),
        steps: total,
    }
}

pub fn fit_linear_svm(train: &FeatureMatrix, cfg: &SvmConfig) -> Result<TrainedModel> {
    cfg.validate()?;
    require_both_classes(&train.labels)?;
    let mut w = pegasos(&train.rows, &train.labels, train.dim(), cfg).average;
    let bias = w.pop().expect("bias slot");
    Ok(wrap(train, ModelParams::Svm(LinearSvmModel { weights: w, bias })))
}
