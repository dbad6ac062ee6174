//! Acceptance checks, one line per criterion. Criteria 1-6 need the published
//! corpus: set `MYTHLAB_DATASET` to its CSV path, otherwise they are skipped
//! and the property checks 7-12 stand in for them.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use mythlab::classify::{fit, fit_logistic_traced, LogisticObjective, LrConfig, ModelConfig, ModelKind};
use mythlab::dataset::{load_corpus, Label};
use mythlab::evaluate::full_report;
use mythlab::experiment::{run_on_corpus, thread_pool, threads_from_env, BenchOptions, ExperimentConfig};
use mythlab::pipeline::PipelineSpec;
use mythlab::rng::substream;
use mythlab::textprep::{preprocess_corpus, stem, FrequencyTable, PrepConfig};
use mythlab::validate::{cross_validate_docs, make_kfold, make_loo, FoldPlan};
use mythlab::vectorize::{FeatureKind, FeatureMatrix, FeatureVector};
use rand::Rng;

enum Status {
    Pass,
    Fail,
    Skip,
}

struct Line {
    id: u32,
    name: &'static str,
    status: Status,
    detail: String,
}

fn check(id: u32, name: &'static str, ok: bool, detail: String) -> Line {
    let status = if ok { Status::Pass } else { Status::Fail };
    Line {
        id,
        name,
        status,
        detail,
    }
}

fn skip(id: u32, name: &'static str, detail: &str) -> Line {
    Line {
        id,
        name,
        status: Status::Skip,
        detail: detail.to_string(),
    }
}

fn fail(id: u32, name: &'static str, err: impl std::fmt::Display) -> Line {
    check(id, name, false, format!("error: {err}"))
}

// ---------------------------------------------------------------------------
// Published-corpus criteria.

struct PaperRun {
    bundle: mythlab::experiment::ReportBundle,
    grid_time: Duration,
}

fn paper_grid(path: &Path) -> mythlab::Result<PaperRun> {
    let corpus = load_corpus(path)?;
    let bytes = std::fs::read(path).map_err(|e| mythlab::Error::InvalidConfig(e.to_string()))?;
    let cfg = ExperimentConfig {
        dataset: Some(path.to_path_buf()),
        bench: Some(BenchOptions { repeats: 5 }),
        ..ExperimentConfig::default()
    };
    let pool = thread_pool(threads_from_env()?)?;
    let start = Instant::now();
    let out = pool.install(|| run_on_corpus(&corpus, &bytes, &cfg))?;
    Ok(PaperRun {
        bundle: out.bundle,
        grid_time: start.elapsed(),
    })
}

fn acc(run: &PaperRun, model: &str, feature: &str) -> f64 {
    run.bundle
        .accuracy_grid
        .get(&format!("{model}/{feature}/80-20"))
        .copied()
        .unwrap_or(f64::NAN)
}

fn paper_criteria(path: &Path) -> Vec<Line> {
    let mut lines = Vec::new();

    let start = Instant::now();
    let stats = Command::new(env!("CARGO_BIN_EXE_mythlab"))
        .args(["stats", "--data"])
        .arg(path)
        .output();
    let elapsed = start.elapsed();
    lines.push(match stats {
        Ok(o) => {
            let text = String::from_utf8_lossy(&o.stdout).trim().to_string();
            check(
                1,
                "dataset stats",
                text == r#"{"Fact":953,"Myth":436}"# && o.status.success() && elapsed < Duration::from_secs(1),
                format!("{text} in {:.3}s", elapsed.as_secs_f64()),
            )
        }
        Err(e) => fail(1, "dataset stats", e),
    });

    match paper_grid(path) {
        Err(e) => {
            for (id, name) in [
                (2, "headline accuracy"),
                (3, "accuracy orderings"),
                (5, "testing-time ordering"),
            ] {
                lines.push(fail(id, name, &e));
            }
        }
        Ok(run) => {
            let run = &run;
            let lr = acc(run, "LR", "BoW");
            let cells = run.bundle.accuracy_grid.len();
            lines.push(check(
                2,
                "headline accuracy",
                (lr - 0.90).abs() <= 0.05 && cells == 36 && run.grid_time < Duration::from_secs(600),
                format!(
                    "LR/BoW/80-20 = {lr:.4} (target 0.90 +/- 0.05), {cells} cells in {:.1}s",
                    run.grid_time.as_secs_f64()
                ),
            ));

            let nb_gap = acc(run, "NB", "BoW") - acc(run, "NB", "TF-IDF");
            let knn_gap = acc(run, "KNN", "TF-IDF") - acc(run, "KNN", "BoW");
            let best = ModelKind::ALL
                .iter()
                .flat_map(|m| FeatureKind::ALL.iter().map(move |f| acc(run, m.as_str(), f.as_str())))
                .fold(f64::NEG_INFINITY, f64::max);
            lines.push(check(
                3,
                "accuracy orderings",
                nb_gap >= 0.05 && knn_gap >= 0.05 && best - lr <= 0.03,
                format!(
                    "NB BoW-TFIDF = {nb_gap:.4}, KNN TFIDF-BoW = {knn_gap:.4}, best - LR = {:.4}",
                    best - lr
                ),
            ));

            let bench = run.bundle.bench_results.clone().unwrap_or_default();
            let t = |m: ModelKind, f: FeatureKind| {
                bench
                    .iter()
                    .find(|r| r.model == m && r.feature == f)
                    .map_or(f64::NAN, |r| r.per_statement_us)
            };
            let chain = [
                t(ModelKind::Lr, FeatureKind::Bow),
                t(ModelKind::Dt, FeatureKind::Bow),
                t(ModelKind::Rf, FeatureKind::Bow),
                t(ModelKind::Svm, FeatureKind::Bow),
                t(ModelKind::Knn, FeatureKind::TfIdf),
            ];
            let ordered = chain.windows(2).all(|w| w[0] < w[1]);
            let ratio = chain[4] / chain[0];
            lines.push(check(
                5,
                "testing-time ordering",
                ordered && ratio >= 100.0,
                format!(
                    "LR {:.3} DT {:.3} RF {:.3} SVM {:.3} KNN(TF-IDF) {:.3} us; KNN/LR = {ratio:.0}x",
                    chain[0], chain[1], chain[2], chain[3], chain[4]
                ),
            ));
        }
    }

    lines.push(match loo_lr(path) {
        Ok((mean, elapsed)) => check(
            4,
            "leave-one-out accuracy",
            (mean - 0.86).abs() <= 0.05 && elapsed < Duration::from_secs(1800),
            format!(
                "LR/BoW LOO mean = {mean:.4} (target 0.86 +/- 0.05) in {:.1}s",
                elapsed.as_secs_f64()
            ),
        ),
        Err(e) => fail(4, "leave-one-out accuracy", e),
    });

    lines.push(match load_corpus(path) {
        Ok(corpus) => {
            let table = FrequencyTable::from_docs(&preprocess_corpus(&corpus, &PrepConfig::default()));
            let top = table.entries.first().cloned().unwrap_or_default();
            check(
                6,
                "most frequent stem",
                top.0 == "develop",
                format!("top entry {top:?}"),
            )
        }
        Err(e) => fail(6, "most frequent stem", e),
    });
    lines.sort_by_key(|l| l.id);
    lines
}

fn loo_lr(path: &Path) -> mythlab::Result<(f64, Duration)> {
    let corpus = load_corpus(path)?;
    let prep = PrepConfig::default();
    let docs = preprocess_corpus(&corpus, &prep);
    let labels = corpus.labels();
    let spec = PipelineSpec {
        prep,
        feature: FeatureKind::Bow,
        model: ModelKind::Lr,
        models: ModelConfig::default(),
    };
    let plan = make_loo(labels.len())?;
    let start = Instant::now();
    let pool = thread_pool(threads_from_env()?)?;
    let r = pool.install(|| cross_validate_docs(&docs, &labels, &spec, &plan, &|_, _| {}))?;
    Ok((r.mean_accuracy, start.elapsed()))
}

// ---------------------------------------------------------------------------
// 7: metric oracle.

struct Brute {
    precision: [f64; 2],
    recall: [f64; 2],
    f1: [f64; 2],
    support: [usize; 2],
    accuracy: f64,
}

fn brute_metrics(t: &[Label], p: &[Label]) -> Brute {
    let mut b = Brute {
        precision: [0.0; 2],
        recall: [0.0; 2],
        f1: [0.0; 2],
        support: [0; 2],
        accuracy: 0.0,
    };
    for c in Label::ALL {
        let i = c.index();
        let tp = t.iter().zip(p).filter(|(a, b)| **a == c && **b == c).count();
        let pred_c = p.iter().filter(|&&b| b == c).count();
        let true_c = t.iter().filter(|&&a| a == c).count();
        b.precision[i] = if pred_c == 0 { 0.0 } else { tp as f64 / pred_c as f64 };
        b.recall[i] = if true_c == 0 { 0.0 } else { tp as f64 / true_c as f64 };
        let (pr, rc) = (b.precision[i], b.recall[i]);
        b.f1[i] = if pr + rc == 0.0 { 0.0 } else { 2.0 * pr * rc / (pr + rc) };
        b.support[i] = true_c;
    }
    b.accuracy = t.iter().zip(p).filter(|(a, b)| a == b).count() as f64 / t.len() as f64;
    b
}

fn metric_oracle() -> Line {
    let mut rng = substream(7, "acceptance-metrics", 0);
    let mut max_err = 0.0f64;
    let mut mismatches = 0usize;
    let mut equal_support_cases = 0usize;
    let mut macro_weighted_differ = 0usize;
    for case in 0..1000 {
        let n = rng.gen_range(1..=60);
        let balanced = case % 4 == 0;
        let n = if balanced { 2 * n.max(1) } else { n };
        let mut t: Vec<Label> = (0..n)
            .map(|_| if rng.gen_bool(0.5) { Label::Myth } else { Label::Fact })
            .collect();
        if balanced {
            t = (0..n)
                .map(|i| if i < n / 2 { Label::Fact } else { Label::Myth })
                .collect();
        }
        let flip = rng.gen_range(0.0..1.0);
        let p: Vec<Label> = t
            .iter()
            .map(|&l| if rng.gen_bool(flip) { l.other() } else { l })
            .collect();
        let r = full_report(&t, &p).unwrap();
        let b = brute_metrics(&t, &p);
        let mut err = |x: f64, y: f64| max_err = max_err.max((x - y).abs());
        for c in Label::ALL {
            let m = r.per_class[&c];
            let i = c.index();
            err(m.precision, b.precision[i]);
            err(m.recall, b.recall[i]);
            err(m.f1, b.f1[i]);
            if m.support != b.support[i] {
                mismatches += 1;
            }
        }
        err(r.accuracy, b.accuracy);
        let nf = n as f64;
        let w = |x: [f64; 2]| (b.support[0] as f64 / nf) * x[0] + (b.support[1] as f64 / nf) * x[1];
        err(r.macro_avg.precision, (b.precision[0] + b.precision[1]) / 2.0);
        err(r.macro_avg.recall, (b.recall[0] + b.recall[1]) / 2.0);
        err(r.macro_avg.f1, (b.f1[0] + b.f1[1]) / 2.0);
        err(r.weighted_avg.precision, w(b.precision));
        err(r.weighted_avg.recall, w(b.recall));
        err(r.weighted_avg.f1, w(b.f1));
        if r.macro_avg.support != n || r.weighted_avg.support != n {
            mismatches += 1;
        }
        for a in Label::ALL {
            for q in Label::ALL {
                let cnt = t.iter().zip(&p).filter(|(x, y)| **x == a && **y == q).count();
                if r.confusion.counts[a.index()][q.index()] != cnt {
                    mismatches += 1;
                }
            }
        }
        if b.support[0] == b.support[1] {
            equal_support_cases += 1;
            if r.macro_avg != r.weighted_avg {
                macro_weighted_differ += 1;
            }
        }
    }
    check(
        7,
        "metric oracle",
        max_err <= 1e-12 && mismatches == 0 && macro_weighted_differ == 0 && equal_support_cases > 0,
        format!(
            "1000 label-pair vectors, max error {max_err:.1e}, {mismatches} count mismatches, \
             macro == weighted in {}/{equal_support_cases} equal-support cases",
            equal_support_cases - macro_weighted_differ
        ),
    )
}

// ---------------------------------------------------------------------------
// 8: fold-plan properties.

fn plan_problems(plan: &FoldPlan, labels: &[Label], k: usize) -> Vec<String> {
    let n = labels.len();
    let mut problems = Vec::new();
    if plan.folds.len() != k {
        problems.push(format!("{} folds, expected {k}", plan.folds.len()));
    }
    let mut seen = vec![0usize; n];
    for (fi, f) in plan.folds.iter().enumerate() {
        let mut all: Vec<usize> = f.train.iter().chain(&f.validation).copied().collect();
        all.sort_unstable();
        if all != (0..n).collect::<Vec<_>>() {
            problems.push(format!("fold {fi}: train and validation do not partition 0..{n}"));
        }
        if f.validation.is_empty() {
            problems.push(format!("fold {fi}: empty validation part"));
        }
        for &i in &f.validation {
            seen[i] += 1;
        }
    }
    if seen.iter().any(|&s| s != 1) {
        problems.push("validation parts do not cover every index exactly once".into());
    }
    let spread = |xs: Vec<usize>| xs.iter().max().unwrap_or(&0) - xs.iter().min().unwrap_or(&0);
    if spread(plan.folds.iter().map(|f| f.validation.len()).collect()) > 1 {
        problems.push("fold sizes differ by more than 1".into());
    }
    if plan.stratified {
        for c in Label::ALL {
            let per_fold = plan
                .folds
                .iter()
                .map(|f| f.validation.iter().filter(|&&i| labels[i] == c).count())
                .collect();
            if spread(per_fold) > 1 {
                problems.push(format!("{c} counts differ by more than 1 across folds"));
            }
        }
    }
    problems
}

fn fold_properties() -> Line {
    let mut rng = substream(8, "acceptance-folds", 0);
    let mut problems = Vec::new();
    for case in 0..200 {
        let n = rng.gen_range(2..=300);
        let k = rng.gen_range(2..=n.min(20));
        let seed: u64 = rng.gen();
        let stratified = rng.gen_bool(0.5);
        let p_myth = rng.gen_range(0.05..0.95);
        let mut labels: Vec<Label> = (0..n)
            .map(|_| if rng.gen_bool(p_myth) { Label::Myth } else { Label::Fact })
            .collect();
        labels[0] = Label::Fact;
        labels[n - 1] = Label::Myth;
        match make_kfold(&labels, k, stratified, seed) {
            Ok(plan) => {
                for p in plan_problems(&plan, &labels, k) {
                    problems.push(format!("case {case} (n={n}, k={k}, stratified={stratified}): {p}"));
                }
                if make_kfold(&labels, k, stratified, seed).ok().as_ref() != Some(&plan) {
                    problems.push(format!("case {case}: plan not reproducible"));
                }
            }
            Err(e) => problems.push(format!("case {case}: {e}")),
        }
    }
    for n in [2, 3, 17, 100] {
        match make_loo(n) {
            Ok(plan) => {
                let singletons = plan
                    .folds
                    .iter()
                    .enumerate()
                    .all(|(i, f)| f.validation == vec![i] && f.train.len() == n - 1 && !f.train.contains(&i));
                if plan.folds.len() != n || !singletons {
                    problems.push(format!("LOO n={n}: folds are not the {n} singletons"));
                }
            }
            Err(e) => problems.push(format!("LOO n={n}: {e}")),
        }
    }
    check(
        8,
        "fold-plan properties",
        problems.is_empty(),
        if problems.is_empty() {
            "200 random (n, k, seed, stratification) tuples and 4 LOO plans".to_string()
        } else {
            format!("{} problems, first: {}", problems.len(), problems[0])
        },
    )
}

// ---------------------------------------------------------------------------
// 9: naive Bayes against exact Bayes-rule arithmetic.

/// Exact posterior comparison with alpha = 1 in integer arithmetic:
/// score_c = n_c * prod_j (N_cj + 1)^x_j / (N_c + V)^|x|.
fn bayes_rule(docs: &[(u32, Label)], v: usize, query: &[u32]) -> Label {
    let mut n_c = [0u128; 2];
    let mut tok = [vec![0u128; v], vec![0u128; v]];
    let mut tot = [0u128; 2];
    for &(bits, l) in docs {
        n_c[l.index()] += 1;
        for (j, t) in tok[l.index()].iter_mut().enumerate() {
            let x = u128::from((bits >> j) & 1);
            *t += x;
            tot[l.index()] += x;
        }
    }
    let len: u32 = query.iter().sum();
    let score = |c: usize| -> (u128, u128) {
        let mut num = n_c[c];
        for (j, &x) in query.iter().enumerate() {
            num *= (tok[c][j] + 1).pow(x);
        }
        (num, (tot[c] + v as u128).pow(len))
    };
    let (nf, df) = score(0);
    let (nm, dm) = score(1);
    // Myth only when strictly more probable.
    if nm * df > nf * dm {
        Label::Myth
    } else {
        Label::Fact
    }
}

fn multisets(m: usize, n: usize, start: usize, cur: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
    if cur.len() == n {
        visit(cur);
        return;
    }
    for i in start..m {
        cur.push(i);
        multisets(m, n, i, cur, visit);
        cur.pop();
    }
}

fn nb_exhaustive() -> Line {
    let cfg = ModelConfig::default();
    let mut instances = 0usize;
    let mut queries = 0usize;
    let mut disagreements = Vec::new();
    for v in 1..=4usize {
        // Training documents are 0/1 term vectors; queries use counts 0..=2.
        let items: Vec<(u32, Label)> = Label::ALL
            .iter()
            .flat_map(|&l| (0..1u32 << v).map(move |bits| (bits, l)))
            .collect();
        let qs: Vec<Vec<u32>> = (0..3usize.pow(v as u32))
            .map(|mut q| {
                (0..v)
                    .map(|_| {
                        let d = (q % 3) as u32;
                        q /= 3;
                        d
                    })
                    .collect()
            })
            .collect();
        for n in 2..=6usize {
            multisets(items.len(), n, 0, &mut Vec::new(), &mut |pick| {
                let docs: Vec<(u32, Label)> = pick.iter().map(|&i| items[i]).collect();
                if !docs.iter().any(|d| d.1 == Label::Fact) || !docs.iter().any(|d| d.1 == Label::Myth) {
                    return;
                }
                let rows: Vec<Vec<f64>> = docs
                    .iter()
                    .map(|&(bits, _)| (0..v).map(|j| f64::from((bits >> j) & 1)).collect())
                    .collect();
                let m = FeatureMatrix::from_dense(&rows, docs.iter().map(|d| d.1).collect()).unwrap();
                let model = fit(ModelKind::Nb, &m, &cfg).unwrap();
                let fp = m.fingerprint();
                instances += 1;
                for q in &qs {
                    let x: Vec<f64> = q.iter().map(|&c| f64::from(c)).collect();
                    let got = model.predict(&FeatureVector::from_dense(&x, fp)).unwrap();
                    let want = bayes_rule(&docs, v, q);
                    queries += 1;
                    if got != want && disagreements.len() < 5 {
                        disagreements.push(format!("V={v} docs={docs:?} query={q:?}: got {got}, want {want}"));
                    }
                }
            });
        }
    }
    check(
        9,
        "naive Bayes exhaustive",
        disagreements.is_empty(),
        if disagreements.is_empty() {
            format!("{instances} training sets (V <= 4, n <= 6, alpha = 1), {queries} queries agree")
        } else {
            format!("disagreements, first: {}", disagreements[0])
        },
    )
}

// ---------------------------------------------------------------------------
// 10: logistic regression gradient.

fn lr_gradient() -> Line {
    let mut rng = substream(10, "acceptance-gradient", 0);
    let h = 1e-5;
    let mut max_err = 0.0f64;
    let mut increases = 0usize;
    let mut epochs = 0usize;
    for _ in 0..50 {
        let n = rng.gen_range(2..=25);
        let dim = rng.gen_range(1..=8);
        let rows: Vec<Vec<f64>> = (0..n)
            .map(|_| {
                (0..dim)
                    .map(|_| {
                        if rng.gen_bool(0.4) {
                            0.0
                        } else {
                            rng.gen_range(0..4) as f64
                        }
                    })
                    .collect()
            })
            .collect();
        let mut labels: Vec<Label> = (0..n)
            .map(|_| if rng.gen_bool(0.4) { Label::Myth } else { Label::Fact })
            .collect();
        labels[0] = Label::Fact;
        labels[1] = Label::Myth;
        let lambda = [0.0, 1e-4, 1e-2, 0.5][rng.gen_range(0..4)];
        let m = FeatureMatrix::from_dense(&rows, labels.clone()).unwrap();
        let obj = LogisticObjective::new(&m.rows, &labels, dim, lambda);
        let params: Vec<f64> = (0..=dim).map(|_| rng.gen_range(-1.5..1.5)).collect();
        let g = obj.gradient(&params);
        for j in 0..=dim {
            let mut up = params.clone();
            let mut down = params.clone();
            up[j] += h;
            down[j] -= h;
            let fd = (obj.loss(&up) - obj.loss(&down)) / (2.0 * h);
            max_err = max_err.max((fd - g[j]).abs());
        }
        let cfg = LrConfig {
            learning_rate: [0.05, 0.5, 5.0][rng.gen_range(0..3)],
            l2_lambda: lambda,
            max_epochs: 300,
            ..LrConfig::default()
        };
        let trace = fit_logistic_traced(&m, &cfg).unwrap();
        epochs += trace.losses.len();
        increases += trace.losses.windows(2).filter(|w| w[1] > w[0]).count();
    }
    check(
        10,
        "logistic gradient",
        max_err < 1e-6 && increases == 0,
        format!("50 instances, max |analytic - central difference| = {max_err:.2e}, {increases} loss increases over {epochs} epochs"),
    )
}

// ---------------------------------------------------------------------------
// 11: Porter stemmer.

fn porter() -> Line {
    let table = include_str!("data/porter_reference.tsv");
    let pairs: Vec<(&str, &str)> = table
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .filter_map(|l| l.split_once('\t'))
        .collect();
    let wrong: Vec<String> = pairs
        .iter()
        .filter(|(w, s)| stem(w) != *s)
        .map(|(w, s)| format!("{w} -> {} (want {s})", stem(w)))
        .collect();
    check(
        11,
        "Porter reference",
        pairs.len() >= 30 && wrong.is_empty(),
        if wrong.is_empty() {
            format!("{} reference pairs match", pairs.len())
        } else {
            format!("{} of {} wrong, first: {}", wrong.len(), pairs.len(), wrong[0])
        },
    )
}

// ---------------------------------------------------------------------------
// 12: determinism across thread counts.

fn grid_bundle(data: &Path, out: &Path, threads: &str) -> Result<serde_json::Value, String> {
    let o = Command::new(env!("CARGO_BIN_EXE_mythlab"))
        .env("MYTHLAB_THREADS", threads)
        .env("RUST_LOG", "error")
        .args(["run", "--cv", "k=5", "--data"])
        .arg(data)
        .arg("--out")
        .arg(out)
        .output()
        .map_err(|e| e.to_string())?;
    if !o.status.success() {
        return Err(String::from_utf8_lossy(&o.stderr).into_owned());
    }
    let text = std::fs::read_to_string(out.join("bundle.json")).map_err(|e| e.to_string())?;
    let mut v: serde_json::Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    v["run_metadata"]
        .as_object_mut()
        .ok_or("no run_metadata")?
        .remove("timestamps");
    Ok(v)
}

fn determinism(data: &Path) -> Line {
    let dir = tempfile::tempdir().unwrap();
    let a = grid_bundle(data, &dir.path().join("t1"), "1");
    let b = grid_bundle(data, &dir.path().join("t4"), "4");
    match (a, b) {
        (Ok(a), Ok(b)) => {
            let cells = a["accuracy_grid"].as_object().map_or(0, |m| m.len());
            let same = serde_json::to_vec_pretty(&a).unwrap() == serde_json::to_vec_pretty(&b).unwrap();
            check(
                12,
                "determinism",
                same && cells == 36,
                format!(
                    "{cells}-cell grid plus 5-fold CV with MYTHLAB_THREADS=1 and 4: bundles {}",
                    if same { "byte-identical" } else { "differ" }
                ),
            )
        }
        (Err(e), _) | (_, Err(e)) => fail(12, "determinism", e),
    }
}

fn main() {
    // `cargo test` passes harness flags such as `--quiet`; a filter that
    // names another test target means this one should not run.
    let args: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    if !args.is_empty() && !args.iter().any(|a| "acceptance".contains(a.as_str())) {
        return;
    }
    let synthetic = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/synthetic_corpus.csv");

    let mut lines = match std::env::var_os("MYTHLAB_DATASET") {
        Some(p) => paper_criteria(Path::new(&p)),
        None => [
            (1, "dataset stats"),
            (2, "headline accuracy"),
            (3, "accuracy orderings"),
            (4, "leave-one-out accuracy"),
            (5, "testing-time ordering"),
            (6, "most frequent stem"),
        ]
        .into_iter()
        .map(|(id, name)| skip(id, name, "published corpus unavailable; set MYTHLAB_DATASET to run"))
        .collect(),
    };
    lines.push(metric_oracle());
    lines.push(fold_properties());
    lines.push(nb_exhaustive());
    lines.push(lr_gradient());
    lines.push(porter());
    lines.push(determinism(&synthetic));

    let mut failed = 0;
    for l in &lines {
        let tag = match l.status {
            Status::Pass => "PASS",
            Status::Fail => {
                failed += 1;
                "FAIL"
            }
            Status::Skip => "SKIP",
        };
        println!("{tag} {:>2} {}: {}", l.id, l.name, l.detail);
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
