//! Testing time per statement: median of timed prediction passes.

use std::hint::black_box;
use std::io::Write;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::classify::{ModelKind, TrainedModel};
use crate::dataset::Label;
use crate::error::{Error, Result};
use crate::vectorize::{FeatureKind, FeatureMatrix};

/// Microsecond clock; injectable so tests can script readings.
pub trait Clock {
    fn now_us(&mut self) -> f64;
}

pub struct MonotonicClock {
    origin: Instant,
}

impl Default for MonotonicClock {
    fn default() -> Self {
        MonotonicClock { origin: Instant::now() }
    }
}

impl Clock for MonotonicClock {
    fn now_us(&mut self) -> f64 {
        self.origin.elapsed().as_secs_f64() * 1e6
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchResult {
    pub model: ModelKind,
    pub feature: FeatureKind,
    pub n_statements: usize,
    /// Median pass duration.
    pub total_us: f64,
    pub per_statement_us: f64,
    pub repeats: usize,
    pub aggregation: String,
    /// Myth predictions per pass; keeps the predictions observable.
    pub myth_predictions: usize,
}

pub fn median(xs: &[f64]) -> f64 {
    let mut v = xs.to_vec();
    v.sort_by(f64::total_cmp);
    let m = v.len() / 2;
    if v.len() % 2 == 1 {
        v[m]
    } else {
        (v[m - 1] + v[m]) / 2.0
    }
}

fn pass(model: &TrainedModel, test: &FeatureMatrix) -> Result<usize> {
    let mut myths = 0;
    for x in &test.rows {
        if black_box(model.predict(black_box(x))?) == Label::Myth {
            myths += 1;
        }
    }
    Ok(black_box(myths))
}

/// One untimed warm-up pass, then `repeats` timed passes on this thread.
/// Vectorization is outside the timed region.
pub fn measure_with_clock<C: Clock>(
    model: &TrainedModel,
    test: &FeatureMatrix,
    repeats: usize,
    clock: &mut C,
) -> Result<BenchResult> {
    if repeats < 3 {
        return Err(Error::InvalidConfig(format!(
            "benchmark needs at least 3 repeats, got {repeats}"
        )));
    }
    if test.is_empty() {
        return Err(Error::EmptyTestSet);
    }
    let myth_predictions = pass(model, test)?;
    let mut durations = Vec::with_capacity(repeats);
    for _ in 0..repeats {
        let start = clock.now_us();
        let myths = pass(model, test)?;
        let end = clock.now_us();
        debug_assert_eq!(myths, myth_predictions);
        durations.push(end - start);
    }
    let total_us = median(&durations);
    Ok(BenchResult {
        model: model.kind(),
        feature: test.kind,
        n_statements: test.len(),
        total_us,
        per_statement_us: total_us / test.len() as f64,
        repeats,
        aggregation: "median".to_string(),
        myth_predictions,
    })
}

pub fn measure_testing_time(model: &TrainedModel, test: &FeatureMatrix, repeats: usize) -> Result<BenchResult> {
    measure_with_clock(model, test, repeats, &mut MonotonicClock::default())
}

pub const BENCH_CSV_HEADER: &str = "model,feature,n,per_statement_us,total_us,repeats";

pub fn write_bench_csv<W: Write>(results: &[BenchResult], mut w: W) -> std::io::Result<()> {
    writeln!(w, "{BENCH_CSV_HEADER}")?;
    for r in results {
        writeln!(
            w,
            "{},{},{},{:.4},{:.3},{}",
            r.model, r.feature, r.n_statements, r.per_statement_us, r.total_us, r.repeats
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{fit, ModelConfig};

    /// Replays pass durations as pairs of clock readings.
    struct Scripted {
        readings: Vec<f64>,
        at: usize,
    }

    impl Scripted {
        fn durations(ds: &[f64]) -> Self {
            let mut readings = Vec::new();
            let mut t = 0.0;
            for d in ds {
                readings.push(t);
                t += d;
                readings.push(t);
            }
            Scripted { readings, at: 0 }
        }
    }

    impl Clock for Scripted {
        fn now_us(&mut self) -> f64 {
            self.at += 1;
            self.readings[self.at - 1]
        }
    }

    fn setup(n: usize) -> (TrainedModel, FeatureMatrix) {
        let rows: Vec<Vec<f64>> = (0..n).map(|i| vec![(i % 7) as f64, (i % 3) as f64]).collect();
        let labels = (0..n)
            .map(|i| if i % 7 > 3 { Label::Myth } else { Label::Fact })
            .collect();
        let m = FeatureMatrix::from_dense(&rows, labels).unwrap();
        (fit(ModelKind::Dt, &m, &ModelConfig::default()).unwrap(), m)
    }

    #[test]
    fn median_of_scripted_passes() {
        let (model, test) = setup(278);
        let r = measure_with_clock(&model, &test, 3, &mut Scripted::durations(&[100.0, 300.0, 200.0])).unwrap();
        assert_eq!(r.total_us, 200.0);
        let r = measure_with_clock(&model, &test, 3, &mut Scripted::durations(&[278.0, 278.0, 278.0])).unwrap();
        assert_eq!(r.per_statement_us, 1.0);
        assert_eq!(r.per_statement_us * r.n_statements as f64, r.total_us);
    }

    #[test]
    fn guards() {
        let (model, test) = setup(10);
        assert!(matches!(
            measure_testing_time(&model, &test, 2),
            Err(Error::InvalidConfig(_))
        ));
        let empty = test.select(&[]);
        assert!(matches!(
            measure_testing_time(&model, &empty, 3),
            Err(Error::EmptyTestSet)
        ));
    }

    #[test]
    fn doubling_the_test_set_keeps_per_statement_cost() {
        let (_, train) = setup(4000);
        let doubled: Vec<usize> = (0..train.len()).chain(0..train.len()).collect();
        let twice = train.select(&doubled);
        for kind in [ModelKind::Lr, ModelKind::Nb, ModelKind::Dt] {
            let model = fit(kind, &train, &ModelConfig::default()).unwrap();
            // Wall-clock measurement: allow a few attempts on a busy machine.
            let ok = (0..3).any(|_| {
                let a = measure_testing_time(&model, &train, 9).unwrap().per_statement_us;
                let b = measure_testing_time(&model, &twice, 9).unwrap().per_statement_us;
                (b - a).abs() < 0.5 * a
            });
            assert!(ok, "{kind} per-statement cost changed by 50% or more");
        }
    }

    #[test]
    fn median_even_and_odd() {
        assert_eq!(median(&[3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(&[4.0, 1.0, 3.0, 2.0]), 2.5);
    }

    #[test]
    fn deterministic_apart_from_durations() {
        let (model, test) = setup(50);
        let a = measure_testing_time(&model, &test, 3).unwrap();
        let b = measure_testing_time(&model, &test, 3).unwrap();
        assert_eq!(a.myth_predictions, b.myth_predictions);
        assert_eq!(
            (a.model, a.feature, a.n_statements, a.repeats),
            (b.model, b.feature, b.n_statements, b.repeats)
        );
        let mut buf = Vec::new();
        write_bench_csv(&[a], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with(BENCH_CSV_HEADER));
        assert!(text.lines().nth(1).unwrap().starts_with("DT,BoW,50,"));
    }
}
