//! CART decision tree with Gini impurity over sparse rows.

use std::collections::BTreeMap;

use rand::seq::index;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{counts_of, majority, require_rows, wrap, ModelParams, TrainedModel};
use crate::dataset::Label;
use crate::error::{Error, Result};
use crate::vectorize::{FeatureMatrix, FeatureVector};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Criterion {
    #[default]
    Gini,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TreeConfig {
    pub criterion: Criterion,
    pub max_depth: Option<usize>,
    pub min_samples_split: usize,
}

impl Default for TreeConfig {
    fn default() -> Self {
        TreeConfig {
            criterion: Criterion::Gini,
            max_depth: None,
            min_samples_split: 2,
        }
    }
}

impl TreeConfig {
    pub fn validate(&self) -> Result<()> {
        if self.min_samples_split < 2 {
            return Err(Error::InvalidConfig("min_samples_split must be at least 2".into()));
        }
        if self.max_depth == Some(0) {
            return Err(Error::InvalidConfig("max_depth must be positive".into()));
        }
        Ok(())
    }
}

/// Arena node. `counts` are the `[Fact, Myth]` training counts that reached it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Node {
    Leaf {
        label: Label,
        counts: [usize; 2],
        depth: usize,
    },
    Split {
        feature: usize,
        threshold: f64,
        left: usize,
        right: usize,
        counts: [usize; 2],
        depth: usize,
        /// Weighted child impurity of the chosen split.
        impurity: f64,
    },
}

impl Node {
    pub fn counts(&self) -> [usize; 2] {
        match self {
            Node::Leaf { counts, .. } | Node::Split { counts, .. } => *counts,
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Node::Leaf { depth, .. } | Node::Split { depth, .. } => *depth,
        }
    }
}

/// Nodes in creation order; index 0 is the root.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecisionTree {
    pub nodes: Vec<Node>,
}

impl DecisionTree {
    /// Index of the leaf `x` falls into.
    pub fn leaf_of(&self, x: &FeatureVector) -> usize {
        let mut i = 0;
        while let Node::Split {
            feature,
            threshold,
            left,
            right,
            ..
        } = &self.nodes[i]
        {
            i = if x.get(*feature) <= *threshold { *left } else { *right };
        }
        i
    }

    pub fn predict(&self, x: &FeatureVector) -> Label {
        match &self.nodes[self.leaf_of(x)] {
            Node::Leaf { label, .. } => *label,
            Node::Split { .. } => unreachable!("leaf_of stops at a leaf"),
        }
    }

    pub fn depth(&self) -> usize {
        self.nodes.iter().map(Node::depth).max().unwrap_or(0)
    }

    pub fn n_leaves(&self) -> usize {
        self.nodes.iter().filter(|n| matches!(n, Node::Leaf { .. })).count()
    }

    pub(crate) fn validate(&self, dim: usize) -> Result<()> {
        if self.nodes.is_empty() {
            return Err(Error::InvalidConfig("decision tree has no nodes".into()));
        }
        for (i, n) in self.nodes.iter().enumerate() {
            if let Node::Split {
                feature,
                left,
                right,
                threshold,
                ..
            } = n
            {
                let in_range = |c: usize| c > i && c < self.nodes.len();
                if !in_range(*left) || !in_range(*right) || !threshold.is_finite() {
                    return Err(Error::InvalidConfig(format!("decision tree node {i} is malformed")));
                }
                if *feature >= dim {
                    return Err(Error::DimensionMismatch {
                        expected: dim,
                        found: feature + 1,
                    });
                }
            }
        }
        Ok(())
    }
}

pub fn gini(counts: [usize; 2]) -> f64 {
    let n = (counts[0] + counts[1]) as f64;
    if n == 0.0 {
        return 0.0;
    }
    let p = counts[0] as f64 / n;
    let q = counts[1] as f64 / n;
    1.0 - p * p - q * q
}

pub fn weighted_gini(left: [usize; 2], right: [usize; 2]) -> f64 {
    let nl = (left[0] + left[1]) as f64;
    let nr = (right[0] + right[1]) as f64;
    (nl * gini(left) + nr * gini(right)) / (nl + nr)
}

/// How a node picks its candidate features.
pub(crate) enum FeatureChoice<'r, R: Rng> {
    All,
    /// Sample this many of the node's non-constant features.
    Sample(usize, &'r mut R),
}

struct Candidate {
    feature: usize,
    threshold: f64,
    impurity: f64,
}

/// Best split of one feature given the node's non-zero `(value, label)` pairs
/// and class counts; implicit zeros make up the remainder.
fn best_threshold(values: &mut [(f64, Label)], node_counts: [usize; 2]) -> Option<(f64, f64)> {
    values.sort_by(|a, b| a.0.total_cmp(&b.0));
    let nz = counts_of(values.iter().map(|v| v.1));
    let zero = [node_counts[0] - nz[0], node_counts[1] - nz[1]];
    // Ordered (value, counts) groups with the zeros merged into place.
    let mut groups: Vec<(f64, [usize; 2])> = Vec::new();
    let mut zero_pending = zero[0] + zero[1] > 0;
    for &(v, l) in values.iter() {
        if zero_pending && v > 0.0 {
            groups.push((0.0, zero));
            zero_pending = false;
        }
        match groups.last_mut() {
            Some(g) if g.0 == v => g.1[l.index()] += 1,
            _ => {
                let mut c = [0, 0];
                c[l.index()] = 1;
                groups.push((v, c));
            }
        }
    }
    if zero_pending {
        groups.push((0.0, zero));
    }
    let mut best: Option<(f64, f64)> = None;
    let mut left = [0usize; 2];
    for w in groups.windows(2) {
        left[0] += w[0].1[0];
        left[1] += w[0].1[1];
        let right = [node_counts[0] - left[0], node_counts[1] - left[1]];
        let imp = weighted_gini(left, right);
        if best.map_or(true, |(_, b)| imp < b) {
            best = Some((w[0].0 + (w[1].0 - w[0].0) / 2.0, imp));
        }
    }
    best
}

pub(crate) fn grow_tree<R: Rng>(
    rows: &[FeatureVector],
    labels: &[Label],
    sample: Vec<usize>,
    cfg: &TreeConfig,
    mut choice: FeatureChoice<'_, R>,
) -> DecisionTree {
    let placeholder = |depth| Node::Leaf {
        label: Label::Fact,
        counts: [0, 0],
        depth,
    };
    let mut nodes = vec![placeholder(0)];
    // (reserved node slot, sample indices, depth)
    let mut stack = vec![(0usize, sample, 0usize)];
    while let Some((slot, idx, depth)) = stack.pop() {
        let counts = counts_of(idx.iter().map(|&i| labels[i]));
        let n = idx.len();
        let parent = gini(counts);
        let leaf = Node::Leaf {
            label: majority(counts),
            counts,
            depth,
        };
        let stop =
            counts[0] == 0 || counts[1] == 0 || n < cfg.min_samples_split || cfg.max_depth.is_some_and(|d| depth >= d);
        if stop {
            nodes[slot] = leaf;
            continue;
        }
        let mut buckets: BTreeMap<usize, Vec<(f64, Label)>> = BTreeMap::new();
        for &i in &idx {
            for &(f, v) in rows[i].entries() {
                buckets.entry(f).or_default().push((v, labels[i]));
            }
        }
        buckets.retain(|_, vals| {
            let first = vals[0].0;
            vals.len() < n || vals.iter().any(|v| v.0 != first)
        });
        let features: Vec<usize> = match &mut choice {
            FeatureChoice::All => buckets.keys().copied().collect(),
            FeatureChoice::Sample(k, rng) => {
                let keys: Vec<usize> = buckets.keys().copied().collect();
                if keys.len() <= *k {
                    keys
                } else {
                    let mut picked: Vec<usize> = index::sample(&mut **rng, keys.len(), *k)
                        .into_iter()
                        .map(|j| keys[j])
                        .collect();
                    picked.sort_unstable();
                    picked
                }
            }
        };
        let mut best: Option<Candidate> = None;
        for f in features {
            let vals = buckets.get_mut(&f).expect("candidate has a bucket");
            if let Some((threshold, impurity)) = best_threshold(vals, counts) {
                if best.as_ref().map_or(true, |b| impurity < b.impurity) {
                    best = Some(Candidate {
                        feature: f,
                        threshold,
                        impurity,
                    });
                }
            }
        }
        match best {
            Some(c) if c.impurity < parent - 1e-12 => {
                let (l, r): (Vec<usize>, Vec<usize>) =
                    idx.iter().partition(|&&i| rows[i].get(c.feature) <= c.threshold);
                let left = nodes.len();
                let right = left + 1;
                nodes.push(placeholder(depth + 1));
                nodes.push(placeholder(depth + 1));
                nodes[slot] = Node::Split {
                    feature: c.feature,
                    threshold: c.threshold,
                    left,
                    right,
                    counts,
                    depth,
                    impurity: c.impurity,
                };
                stack.push((right, r, depth + 1));
                stack.push((left, l, depth + 1));
            }
            _ => nodes[slot] = leaf,
        }
    }
    DecisionTree { nodes }
}

pub fn fit_decision_tree(train: &FeatureMatrix, cfg: &TreeConfig) -> Result<TrainedModel> {
    cfg.validate()?;
    require_rows(train)?;
    let tree = grow_tree::<rand_chacha::ChaCha8Rng>(
        &train.rows,
        &train.labels,
        (0..train.len()).collect(),
        cfg,
        FeatureChoice::All,
    );
    Ok(wrap(train, ModelParams::Dt(tree)))
}
