//! Confusion matrix and classification report.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::dataset::Label;
use crate::error::{Error, Result};

/// `counts[actual][predicted]` over the class order `[Fact, Myth]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ConfusionMatrix {
    pub counts: [[usize; 2]; 2],
}

/// One-vs-rest counts with a given class treated as positive.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassView {
    pub tp: usize,
    pub fp: usize,
    pub fn_: usize,
    pub tn: usize,
}

impl ConfusionMatrix {
    pub fn total(&self) -> usize {
        self.counts.iter().flatten().sum()
    }

    pub fn correct(&self) -> usize {
        self.counts[0][0] + self.counts[1][1]
    }

    pub fn view(&self, positive: Label) -> ClassView {
        let p = positive.index();
        let o = positive.other().index();
        ClassView {
            tp: self.counts[p][p],
            fp: self.counts[o][p],
            fn_: self.counts[p][o],
            tn: self.counts[o][o],
        }
    }

    /// CSV with actual classes as rows and predicted classes as columns.
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "actual,pred_Fact,pred_Myth")?;
        for a in Label::ALL {
            let r = self.counts[a.index()];
            writeln!(w, "{a},{},{}", r[0], r[1])?;
        }
        Ok(())
    }
}

pub fn confusion(y_true: &[Label], y_pred: &[Label]) -> Result<ConfusionMatrix> {
    if y_true.len() != y_pred.len() {
        return Err(Error::LengthMismatch {
            truth: y_true.len(),
            predicted: y_pred.len(),
        });
    }
    if y_true.is_empty() {
        return Err(Error::EmptyEvaluation);
    }
    let mut cm = ConfusionMatrix::default();
    for (t, p) in y_true.iter().zip(y_pred) {
        cm.counts[t.index()][p.index()] += 1;
    }
    Ok(cm)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassMetrics {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub support: usize,
}

fn ratio(num: usize, den: usize) -> Option<f64> {
    (den > 0).then(|| num as f64 / den as f64)
}

pub fn harmonic_f1(p: f64, r: f64) -> f64 {
    if p + r == 0.0 {
        0.0
    } else {
        2.0 * p * r / (p + r)
    }
}

/// Precision, recall and F1 of one class; undefined ratios are 0.
pub fn class_metrics(cm: &ConfusionMatrix, cls: Label) -> ClassMetrics {
    class_metrics_checked(cm, cls).0
}

/// Also returns which ratios had a zero denominator.
fn class_metrics_checked(cm: &ConfusionMatrix, cls: Label) -> (ClassMetrics, Vec<String>) {
    let v = cm.view(cls);
    let mut warnings = Vec::new();
    let precision = ratio(v.tp, v.tp + v.fp).unwrap_or_else(|| {
        warnings.push(format!(
            "precision of {cls} is undefined (no {cls} predictions); reported as 0"
        ));
        0.0
    });
    let recall = ratio(v.tp, v.tp + v.fn_).unwrap_or_else(|| {
        warnings.push(format!(
            "recall of {cls} is undefined (no true {cls} instances); reported as 0"
        ));
        0.0
    });
    (
        ClassMetrics {
            precision,
            recall,
            f1: harmonic_f1(precision, recall),
            support: v.tp + v.fn_,
        },
        warnings,
    )
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvaluationReport {
    pub per_class: BTreeMap<Label, ClassMetrics>,
    pub accuracy: f64,
    pub macro_avg: ClassMetrics,
    pub weighted_avg: ClassMetrics,
    pub confusion: ConfusionMatrix,
    /// Zero-denominator notices; empty when every ratio was defined.
    pub warnings: Vec<String>,
}

pub fn full_report(y_true: &[Label], y_pred: &[Label]) -> Result<EvaluationReport> {
    let cm = confusion(y_true, y_pred)?;
    Ok(report_from_confusion(&cm))
}

pub fn report_from_confusion(cm: &ConfusionMatrix) -> EvaluationReport {
    let total = cm.total();
    let n = total as f64;
    let mut per_class = BTreeMap::new();
    let mut warnings = Vec::new();
    for c in Label::ALL {
        let (m, w) = class_metrics_checked(cm, c);
        per_class.insert(c, m);
        warnings.extend(w);
    }
    let f = per_class[&Label::Fact];
    let m = per_class[&Label::Myth];
    let macro_avg = ClassMetrics {
        precision: (f.precision + m.precision) / 2.0,
        recall: (f.recall + m.recall) / 2.0,
        f1: (f.f1 + m.f1) / 2.0,
        support: total,
    };
    let (wf, wm) = (f.support as f64 / n, m.support as f64 / n);
    let weighted_avg = ClassMetrics {
        precision: wf * f.precision + wm * m.precision,
        recall: wf * f.recall + wm * m.recall,
        f1: wf * f.f1 + wm * m.f1,
        support: total,
    };
    EvaluationReport {
        per_class,
        accuracy: cm.correct() as f64 / n,
        macro_avg,
        weighted_avg,
        confusion: *cm,
        warnings,
    }
}

impl EvaluationReport {
    /// Aligned plain-text table in the usual classification-report layout.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let row = |s: &mut String, name: &str, m: &ClassMetrics| {
            let _ = writeln!(
                s,
                "{name:>12} {:>9.4} {:>9.4} {:>9.4} {:>9}",
                m.precision, m.recall, m.f1, m.support
            );
        };
        let _ = writeln!(
            s,
            "{:>12} {:>9} {:>9} {:>9} {:>9}",
            "", "precision", "recall", "f1-score", "support"
        );
        let _ = writeln!(s);
        for (label, m) in &self.per_class {
            row(&mut s, label.as_str(), m);
        }
        let _ = writeln!(s);
        let _ = writeln!(
            s,
            "{:>12} {:>9} {:>9} {:>9.4} {:>9}",
            "accuracy", "", "", self.accuracy, self.macro_avg.support
        );
        row(&mut s, "macro avg", &self.macro_avg);
        row(&mut s, "weighted avg", &self.weighted_avg);
        s
    }
}
