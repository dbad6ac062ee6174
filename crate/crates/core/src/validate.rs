//! k-fold and leave-one-out fold plans and the cross-validation runner.

use std::fmt;

use rand::seq::SliceRandom;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::classify::majority;
use crate::dataset::{class_counts, Corpus, Label};
use crate::error::{Error, Result};
use crate::pipeline::PipelineSpec;
use crate::rng;
use crate::textprep::{preprocess_corpus, TokenizedDoc};
use crate::vectorize::Vectorizer;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FoldKind {
    Kfold,
    Loo,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fold {
    pub train: Vec<usize>,
    pub validation: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoldPlan {
    pub folds: Vec<Fold>,
    pub n: usize,
    pub kind: FoldKind,
    pub k: usize,
    pub stratified: bool,
    pub seed: u64,
}

impl FoldPlan {
    /// Short name used in tables: `5-Fold` or `LOO`.
    pub fn name(&self) -> String {
        match self.kind {
            FoldKind::Kfold => format!("{}-Fold", self.k),
            FoldKind::Loo => "LOO".to_string(),
        }
    }
}

impl fmt::Display for FoldPlan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

fn folds_from_assignment(n: usize, k: usize, order: &[usize]) -> Vec<Fold> {
    let mut validation: Vec<Vec<usize>> = vec![Vec::new(); k];
    for (pos, &i) in order.iter().enumerate() {
        validation[pos % k].push(i);
    }
    validation
        .into_iter()
        .map(|mut v| {
            v.sort_unstable();
            let mut in_val = vec![false; n];
            for &i in &v {
                in_val[i] = true;
            }
            Fold {
                train: (0..n).filter(|&i| !in_val[i]).collect(),
                validation: v,
            }
        })
        .collect()
}

/// Deals shuffled indices round-robin into `k` folds. Stratified plans
/// shuffle each class separately and deal Fact then Myth as one continuous
/// sequence, so fold sizes and per-class counts each differ by at most 1.
pub fn make_kfold(labels: &[Label], k: usize, stratified: bool, seed: u64) -> Result<FoldPlan> {
    let n = labels.len();
    if k < 2 {
        return Err(Error::InvalidConfig(format!("k-fold needs k >= 2, got {k}")));
    }
    if k > n {
        return Err(Error::InvalidConfig(format!(
            "k = {k} exceeds the {n} available samples"
        )));
    }
    let order: Vec<usize> = if stratified {
        let mut order = Vec::with_capacity(n);
        for c in Label::ALL {
            let mut idx: Vec<usize> = (0..n).filter(|&i| labels[i] == c).collect();
            if idx.is_empty() {
                return Err(Error::EmptyClass(c));
            }
            idx.shuffle(&mut rng::substream(seed, "kfold-class", c.index() as u64));
            order.extend(idx);
        }
        order
    } else {
        let mut idx: Vec<usize> = (0..n).collect();
        idx.shuffle(&mut rng::substream(seed, "kfold", 0));
        idx
    };
    Ok(FoldPlan {
        folds: folds_from_assignment(n, k, &order),
        n,
        kind: FoldKind::Kfold,
        k,
        stratified,
        seed,
    })
}

pub fn make_loo(n: usize) -> Result<FoldPlan> {
    if n < 2 {
        return Err(Error::InvalidConfig(format!(
            "leave-one-out needs at least 2 samples, got {n}"
        )));
    }
    let folds = (0..n)
        .map(|i| Fold {
            train: (0..n).filter(|&j| j != i).collect(),
            validation: vec![i],
        })
        .collect();
    Ok(FoldPlan {
        folds,
        n,
        kind: FoldKind::Loo,
        k: n,
        stratified: false,
        seed: 0,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CvResult {
    pub plan: String,
    pub per_fold_accuracy: Vec<f64>,
    pub mean_accuracy: f64,
    /// Population standard deviation over folds.
    pub std_accuracy: f64,
    pub config_fingerprint: String,
    /// Folds whose training part held a single class; they were scored with
    /// a constant prediction of that class.
    pub degenerate_folds: Vec<usize>,
}

pub fn mean_and_std(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n;
    (mean, var.sqrt())
}

/// Runs `fit_predict` on every fold in parallel. It receives the fold and
/// must return predictions for `fold.validation` in order. Folds whose
/// training labels hold one class skip it and predict the training majority.
pub fn cross_validate_with<F>(
    labels: &[Label],
    plan: &FoldPlan,
    config_fingerprint: String,
    fit_predict: F,
) -> Result<CvResult>
where
    F: Fn(usize, &Fold) -> Result<Vec<Label>> + Sync,
{
    if plan.n != labels.len() {
        return Err(Error::LengthMismatch {
            truth: labels.len(),
            predicted: plan.n,
        });
    }
    let scored: Vec<(f64, bool)> = plan
        .folds
        .par_iter()
        .enumerate()
        .map(|(fi, fold)| {
            let counts = class_counts(fold.train.iter().map(|&i| labels[i]));
            let single = counts.values().filter(|&&c| c > 0).count() < 2;
            let predictions = if single {
                let c = [counts[&Label::Fact], counts[&Label::Myth]];
                vec![majority(c); fold.validation.len()]
            } else {
                fit_predict(fi, fold)?
            };
            if predictions.len() != fold.validation.len() {
                return Err(Error::LengthMismatch {
                    truth: fold.validation.len(),
                    predicted: predictions.len(),
                });
            }
            let correct = fold
                .validation
                .iter()
                .zip(&predictions)
                .filter(|(&i, &p)| labels[i] == p)
                .count();
            Ok((correct as f64 / fold.validation.len() as f64, single))
        })
        .collect::<Result<_>>()?;
    let per_fold_accuracy: Vec<f64> = scored.iter().map(|s| s.0).collect();
    let degenerate_folds: Vec<usize> = scored.iter().enumerate().filter(|(_, s)| s.1).map(|(i, _)| i).collect();
    for &f in &degenerate_folds {
        log::warn!(
            "{} fold {f}: training part holds a single class; scored as a constant prediction",
            plan.name()
        );
    }
    let (mean_accuracy, std_accuracy) = mean_and_std(&per_fold_accuracy);
    Ok(CvResult {
        plan: plan.name(),
        per_fold_accuracy,
        mean_accuracy,
        std_accuracy,
        config_fingerprint,
        degenerate_folds,
    })
}

pub fn config_fingerprint(spec: &PipelineSpec, plan: &FoldPlan) -> Result<String> {
    let v = serde_json::json!({
        "pipeline": spec,
        "plan": { "kind": plan.kind, "k": plan.k, "stratified": plan.stratified, "seed": plan.seed, "n": plan.n },
    });
    Ok(hex::encode(Sha256::digest(serde_json::to_vec(&v)?)))
}

/// Cross-validates a full pipeline. Documents are preprocessed once; the
/// vectorizer and the model are refitted on each fold's training part.
pub fn cross_validate(corpus: &Corpus, spec: &PipelineSpec, plan: &FoldPlan) -> Result<CvResult> {
    let docs = preprocess_corpus(corpus, &spec.prep);
    cross_validate_docs(&docs, &corpus.labels(), spec, plan, &|_, _| {})
}

/// As [`cross_validate`] on preprocessed documents; `observe` sees every
/// fold's fitted vectorizer.
pub fn cross_validate_docs(
    docs: &[TokenizedDoc],
    labels: &[Label],
    spec: &PipelineSpec,
    plan: &FoldPlan,
    observe: &(dyn Fn(usize, &Vectorizer) + Sync),
) -> Result<CvResult> {
    let fp = config_fingerprint(spec, plan)?;
    cross_validate_with(labels, plan, fp, |fi, fold| {
        let train_docs: Vec<TokenizedDoc> = fold.train.iter().map(|&i| docs[i].clone()).collect();
        let train_labels: Vec<Label> = fold.train.iter().map(|&i| labels[i]).collect();
        let (vectorizer, model) = spec.fit_docs(&train_docs, &train_labels)?;
        observe(fi, &vectorizer);
        fold.validation
            .iter()
            .map(|&i| model.predict(&vectorizer.transform(&docs[i])))
            .collect()
    })
}
