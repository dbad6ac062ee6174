//! Random forest of CART trees over bootstrap resamples.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::tree::{grow_tree, DecisionTree, FeatureChoice, TreeConfig};
use super::{majority, require_rows, wrap, ModelParams, TrainedModel};
use crate::dataset::Label;
use crate::error::{Error, Result};
use crate::rng;
use crate::vectorize::{FeatureMatrix, FeatureVector};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ForestConfig {
    pub n_trees: usize,
    pub seed: u64,
    /// Candidate features per split; `None` means floor(sqrt(V)), at least 1.
    pub max_features: Option<usize>,
    /// Draw each tree's training set with replacement. Disabling it is a test
    /// hook that gives every tree the full training set.
    pub bootstrap: bool,
    /// Draw the minority-class count from each class instead of `n` rows.
    pub balance: bool,
    pub tree: TreeConfig,
}

impl Default for ForestConfig {
    fn default() -> Self {
        ForestConfig {
            n_trees: 100,
            seed: 42,
            max_features: None,
            bootstrap: true,
            balance: false,
            tree: TreeConfig::default(),
        }
    }
}

impl ForestConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_trees == 0 {
            return Err(Error::InvalidConfig("a forest needs at least one tree".into()));
        }
        if self.max_features == Some(0) {
            return Err(Error::InvalidConfig("max_features must be positive".into()));
        }
        self.tree.validate()
    }

    pub fn features_per_split(&self, dim: usize) -> usize {
        self.max_features
            .unwrap_or_else(|| ((dim as f64).sqrt().floor() as usize).max(1))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RandomForest {
    pub trees: Vec<DecisionTree>,
}

impl RandomForest {
    pub fn votes(&self, x: &FeatureVector) -> [usize; 2] {
        let mut v = [0usize; 2];
        for t in &self.trees {
            v[t.predict(x).index()] += 1;
        }
        v
    }

    pub fn predict(&self, x: &FeatureVector) -> Label {
        majority(self.votes(x))
    }
}

fn draw_sample<R: Rng>(labels: &[Label], cfg: &ForestConfig, rng: &mut R) -> Vec<usize> {
    let n = labels.len();
    if !cfg.bootstrap {
        return (0..n).collect();
    }
    if cfg.balance {
        let by_class: [Vec<usize>; 2] = Label::ALL.map(|c| (0..n).filter(|&i| labels[i] == c).collect::<Vec<usize>>());
        let m = by_class.iter().map(Vec::len).filter(|&l| l > 0).min().unwrap_or(0);
        let mut out = Vec::with_capacity(2 * m);
        for class in &by_class {
            if class.is_empty() {
                continue;
            }
            out.extend((0..m).map(|_| class[rng.gen_range(0..class.len())]));
        }
        return out;
    }
    (0..n).map(|_| rng.gen_range(0..n)).collect()
}

/// Trees are fitted in parallel; each draws from its own substream so the
/// result does not depend on scheduling.
pub fn fit_random_forest(train: &FeatureMatrix, cfg: &ForestConfig) -> Result<TrainedModel> {
    cfg.validate()?;
    require_rows(train)?;
    let k = cfg.features_per_split(train.dim());
    let trees: Vec<DecisionTree> = (0..cfg.n_trees)
        .into_par_iter()
        .map(|t| {
            let mut rng = rng::substream(cfg.seed, "forest-tree", t as u64);
            let sample = draw_sample(&train.labels, cfg, &mut rng);
            grow_tree(
                &train.rows,
                &train.labels,
                sample,
                &cfg.tree,
                FeatureChoice::Sample(k, &mut rng),
            )
        })
        .collect();
    Ok(wrap(train, ModelParams::Rf(RandomForest { trees })))
}
