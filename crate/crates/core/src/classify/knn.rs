//! k-nearest-neighbour vote under Euclidean distance.

use serde::{Deserialize, Serialize};

use super::{counts_of, majority, require_rows, wrap, ModelParams, TrainedModel};
use crate::dataset::Label;
use crate::error::{Error, Result};
use crate::vectorize::{FeatureMatrix, FeatureVector};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    #[default]
    Euclidean,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct KnnConfig {
    pub k: usize,
    pub metric: Metric,
}

impl Default for KnnConfig {
    fn default() -> Self {
        KnnConfig {
            k: 5,
            metric: Metric::Euclidean,
        }
    }
}

impl KnnConfig {
    pub fn validate(&self) -> Result<()> {
        if self.k == 0 || self.k % 2 == 0 {
            return Err(Error::InvalidConfig(format!(
                "k must be a positive odd number, got {}",
                self.k
            )));
        }
        Ok(())
    }
}

/// Stored training set. The dense copy is rebuilt after deserializing.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct KnnModel {
    pub k: usize,
    pub rows: Vec<FeatureVector>,
    pub labels: Vec<Label>,
    #[serde(skip)]
    dense: Vec<f64>,
    #[serde(skip)]
    dim: usize,
}

impl PartialEq for KnnModel {
    fn eq(&self, other: &Self) -> bool {
        self.k == other.k && self.rows == other.rows && self.labels == other.labels
    }
}

impl KnnModel {
    pub fn new(k: usize, rows: Vec<FeatureVector>, labels: Vec<Label>) -> Result<Self> {
        let mut m = KnnModel {
            k,
            rows,
            labels,
            dense: Vec::new(),
            dim: 0,
        };
        m.rebuild()?;
        Ok(m)
    }

    pub(crate) fn rebuild(&mut self) -> Result<()> {
        if self.rows.len() != self.labels.len() {
            return Err(Error::LengthMismatch {
                truth: self.labels.len(),
                predicted: self.rows.len(),
            });
        }
        KnnConfig {
            k: self.k,
            metric: Metric::Euclidean,
        }
        .validate()?;
        if self.k > self.rows.len() {
            return Err(Error::NeighboursExceedTraining {
                k: self.k,
                n: self.rows.len(),
            });
        }
        self.dim = self.rows.first().map_or(0, FeatureVector::dim);
        if let Some(r) = self.rows.iter().find(|r| r.dim() != self.dim) {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: r.dim(),
            });
        }
        let too_large = || Error::TooLarge {
            rows: self.rows.len(),
            dim: self.dim,
        };
        let cells = self.rows.len().checked_mul(self.dim).ok_or_else(too_large)?;
        let mut dense = Vec::new();
        dense.try_reserve_exact(cells).map_err(|_| too_large())?;
        dense.resize(cells, 0.0);
        self.dense = dense;
        if self.dim > 0 {
            for (r, chunk) in self.rows.iter().zip(self.dense.chunks_mut(self.dim)) {
                r.write_dense(chunk);
            }
        }
        Ok(())
    }

    /// Indices of the `k` nearest training rows, nearest first; equal
    /// distances keep the lower index first.
    pub fn neighbours(&self, x: &FeatureVector) -> Result<Vec<usize>> {
        if self.rows.is_empty() || self.k > self.rows.len() {
            return Err(Error::NeighboursExceedTraining {
                k: self.k,
                n: self.rows.len(),
            });
        }
        let q = x.to_dense();
        let mut dist: Vec<(f64, usize)> = (0..self.rows.len())
            .map(|i| {
                let row = &self.dense[i * self.dim..(i + 1) * self.dim];
                let d: f64 = row.iter().zip(&q).map(|(a, b)| (a - b) * (a - b)).sum();
                (d, i)
            })
            .collect();
        let by = |a: &(f64, usize), b: &(f64, usize)| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1));
        if self.k < dist.len() {
            dist.select_nth_unstable_by(self.k - 1, by);
            dist.truncate(self.k);
        }
        dist.sort_by(by);
        Ok(dist.into_iter().map(|(_, i)| i).collect())
    }

    pub fn predict(&self, x: &FeatureVector) -> Result<Label> {
        let nn = self.neighbours(x)?;
        Ok(majority(counts_of(nn.into_iter().map(|i| self.labels[i]))))
    }
}

pub(crate) fn fit_knn(train: &FeatureMatrix, cfg: &KnnConfig) -> Result<TrainedModel> {
    cfg.validate()?;
    require_rows(train)?;
    let m = KnnModel::new(cfg.k, train.rows.clone(), train.labels.clone())?;
    Ok(wrap(train, ModelParams::Knn(m)))
}

/// One-shot prediction without keeping a model around.
pub fn knn_predict(train: &FeatureMatrix, query: &FeatureVector, cfg: &KnnConfig) -> Result<Label> {
    fit_knn(train, cfg)?.predict(query)
}
