//! Labelled fact/myth corpus: loading, validation, statistics and holdout splits.

use std::collections::BTreeMap;
use std::fmt;
use std::fs::File;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng;

/// Corpus label. `Fact` orders before `Myth`; every tie in the crate breaks
/// toward the smaller label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Label {
    Fact,
    Myth,
}

impl Label {
    pub const ALL: [Label; 2] = [Label::Fact, Label::Myth];

    pub fn as_str(self) -> &'static str {
        match self {
            Label::Fact => "Fact",
            Label::Myth => "Myth",
        }
    }

    /// Position in the fixed `[Fact, Myth]` order.
    pub fn index(self) -> usize {
        match self {
            Label::Fact => 0,
            Label::Myth => 1,
        }
    }

    pub fn from_index(i: usize) -> Label {
        if i == 0 {
            Label::Fact
        } else {
            Label::Myth
        }
    }

    pub fn other(self) -> Label {
        match self {
            Label::Fact => Label::Myth,
            Label::Myth => Label::Fact,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseLabelError(pub String);

impl fmt::Display for ParseLabelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unrecognized label {:?}", self.0)
    }
}

impl std::error::Error for ParseLabelError {}

impl FromStr for Label {
    type Err = ParseLabelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("fact") {
            Ok(Label::Fact)
        } else if t.eq_ignore_ascii_case("myth") {
            Ok(Label::Myth)
        } else {
            Err(ParseLabelError(s.to_string()))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledStatement {
    pub label: Label,
    pub text: String,
}

impl LabeledStatement {
    /// Trims `text` and checks that it has at least one alphabetic character.
    pub fn new(label: Label, text: &str) -> Option<Self> {
        let text = text.trim();
        if text.chars().any(char::is_alphabetic) {
            Some(LabeledStatement {
                label,
                text: text.to_string(),
            })
        } else {
            None
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Corpus {
    statements: Vec<LabeledStatement>,
    source_path: PathBuf,
}

pub type ClassCounts = BTreeMap<Label, usize>;

impl Corpus {
    pub fn new(statements: Vec<LabeledStatement>, source_path: impl Into<PathBuf>) -> Result<Self> {
        if statements.is_empty() {
            return Err(Error::EmptyCorpus);
        }
        Ok(Corpus {
            statements,
            source_path: source_path.into(),
        })
    }

    pub fn statements(&self) -> &[LabeledStatement] {
        &self.statements
    }

    pub fn len(&self) -> usize {
        self.statements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.statements.is_empty()
    }

    pub fn source_path(&self) -> &Path {
        &self.source_path
    }

    pub fn labels(&self) -> Vec<Label> {
        self.statements.iter().map(|s| s.label).collect()
    }

    pub fn texts(&self) -> impl Iterator<Item = &str> {
        self.statements.iter().map(|s| s.text.as_str())
    }

    /// Sub-corpus holding `indices` in the given order.
    pub fn subset(&self, indices: &[usize]) -> Result<Corpus> {
        Corpus::new(
            indices.iter().map(|&i| self.statements[i].clone()).collect(),
            self.source_path.clone(),
        )
    }

    /// Writes the corpus as `label,statement` CSV.
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        let to_err = |e: csv::Error| Error::Csv {
            line: 0,
            message: e.to_string(),
        };
        w.write_record(["label", "statement"]).map_err(to_err)?;
        for s in &self.statements {
            w.write_record([s.label.as_str(), s.text.as_str()]).map_err(to_err)?;
        }
        w.flush().map_err(|e| Error::io(&self.source_path, e))?;
        Ok(())
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let f = File::create(path).map_err(|e| Error::io(path, e))?;
        self.write_csv(std::io::BufWriter::new(f))
    }
}

fn find_column(headers: &csv::StringRecord, names: &[&str]) -> Option<usize> {
    headers
        .iter()
        .position(|h| names.iter().any(|n| h.trim().eq_ignore_ascii_case(n)))
}

/// Parses a corpus from CSV bytes. `source_path` is recorded for provenance only.
pub fn parse_corpus<R: Read>(reader: R, source_path: impl Into<PathBuf>) -> Result<Corpus> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .from_reader(reader);
    let headers = rdr
        .headers()
        .map_err(|e| Error::Csv {
            line: 1,
            message: e.to_string(),
        })?
        .clone();
    let label_col = find_column(&headers, &["label", "labels"]).ok_or(Error::MissingColumn("label"))?;
    let text_col = find_column(&headers, &["statement", "statements"]).ok_or(Error::MissingColumn("statement"))?;

    let mut statements = Vec::new();
    for record in rdr.records() {
        let record = record.map_err(|e| Error::Csv {
            line: e.position().map_or(0, |p| p.line()),
            message: e.to_string(),
        })?;
        let line = record.position().map_or(0, |p| p.line());
        if record.len() != headers.len() {
            return Err(Error::ColumnCount {
                line,
                expected: headers.len(),
                found: record.len(),
            });
        }
        let raw_label = &record[label_col];
        let label: Label = raw_label.parse().map_err(|_| Error::UnknownLabel {
            line,
            value: raw_label.to_string(),
        })?;
        let statement = LabeledStatement::new(label, &record[text_col]).ok_or(Error::EmptyStatement { line })?;
        statements.push(statement);
    }
    Corpus::new(statements, source_path)
}

pub fn load_corpus(path: &Path) -> Result<Corpus> {
    let f = File::open(path).map_err(|e| Error::io(path, e))?;
    parse_corpus(std::io::BufReader::new(f), path)
}

/// Per-class statement counts; both labels are always present.
pub fn corpus_stats(corpus: &Corpus) -> ClassCounts {
    class_counts(corpus.statements.iter().map(|s| s.label))
}

pub fn class_counts(labels: impl IntoIterator<Item = Label>) -> ClassCounts {
    let mut counts: ClassCounts = Label::ALL.iter().map(|&l| (l, 0)).collect();
    for l in labels {
        *counts.entry(l).or_default() += 1;
    }
    counts
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SplitSpec {
    train_fraction: f64,
    pub seed: u64,
    pub stratified: bool,
}

impl SplitSpec {
    pub fn new(train_fraction: f64, seed: u64, stratified: bool) -> Result<Self> {
        if !(train_fraction > 0.0 && train_fraction < 1.0) {
            return Err(Error::InvalidConfig(format!(
                "train fraction must lie strictly between 0 and 1, got {train_fraction}"
            )));
        }
        Ok(SplitSpec {
            train_fraction,
            seed,
            stratified,
        })
    }

    pub fn train_fraction(&self) -> f64 {
        self.train_fraction
    }
}

/// Index partition of a corpus; both halves are sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    pub train: Vec<usize>,
    pub test: Vec<usize>,
}

/// Largest-remainder apportionment of `target` slots over classes of the
/// given sizes, proportional to `fraction`. Remainder ties go to the class
/// listed first.
pub(crate) fn apportion(sizes: &[usize], fraction: f64, target: usize) -> Vec<usize> {
    let ideal: Vec<f64> = sizes.iter().map(|&n| fraction * n as f64).collect();
    let mut counts: Vec<usize> = ideal
        .iter()
        .zip(sizes)
        .map(|(&x, &n)| (x.floor() as usize).min(n))
        .collect();
    let assigned: usize = counts.iter().sum();
    let mut order: Vec<usize> = (0..sizes.len()).collect();
    order.sort_by(|&a, &b| {
        let ra = ideal[a] - counts[a] as f64;
        let rb = ideal[b] - counts[b] as f64;
        rb.partial_cmp(&ra).unwrap_or(std::cmp::Ordering::Equal).then(a.cmp(&b))
    });
    let mut remaining = target.saturating_sub(assigned);
    for &c in order.iter().cycle().take(order.len() * 2) {
        if remaining == 0 {
            break;
        }
        if counts[c] < sizes[c] {
            counts[c] += 1;
            remaining -= 1;
        }
    }
    counts
}

/// Splits `labels` into train/test index sets according to `spec`.
pub fn split_indices(labels: &[Label], spec: &SplitSpec) -> Result<Partition> {
    let n = labels.len();
    let target = (spec.train_fraction * n as f64).round() as usize;
    let mut rng = rng::substream(spec.seed, "holdout-split", 0);
    let mut train = Vec::with_capacity(target);

    if spec.stratified {
        let groups: Vec<Vec<usize>> = Label::ALL
            .iter()
            .map(|&l| (0..n).filter(|&i| labels[i] == l).collect())
            .collect();
        for (label, g) in Label::ALL.iter().zip(&groups) {
            if g.is_empty() {
                return Err(Error::EmptyClass(*label));
            }
        }
        let sizes: Vec<usize> = groups.iter().map(Vec::len).collect();
        let counts = apportion(&sizes, spec.train_fraction, target);
        for (mut g, take) in groups.into_iter().zip(counts) {
            g.shuffle(&mut rng);
            train.extend_from_slice(&g[..take]);
        }
    } else {
        let mut all: Vec<usize> = (0..n).collect();
        all.shuffle(&mut rng);
        train.extend_from_slice(&all[..target.min(n)]);
    }

    train.sort_unstable();
    let mut in_train = vec![false; n];
    for &i in &train {
        in_train[i] = true;
    }
    let test = (0..n).filter(|&i| !in_train[i]).collect();
    Ok(Partition { train, test })
}

pub fn stratified_split(corpus: &Corpus, spec: &SplitSpec) -> Result<(Corpus, Corpus)> {
    let part = split_indices(&corpus.labels(), spec)?;
    Ok((corpus.subset(&part.train)?, corpus.subset(&part.test)?))
}
