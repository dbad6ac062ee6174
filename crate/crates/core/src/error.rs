use std::path::PathBuf;

use thiserror::Error;

use crate::dataset::Label;
use crate::vectorize::Fingerprint;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("line {line}: malformed CSV: {message}")]
    Csv { line: u64, message: String },

    #[error("line {line}: expected {expected} fields, found {found}")]
    ColumnCount { line: u64, expected: usize, found: usize },

    #[error("header has no {0:?} column")]
    MissingColumn(&'static str),

    #[error("line {line}: empty statement")]
    EmptyStatement { line: u64 },

    #[error("line {line}: unrecognized label {value:?}")]
    UnknownLabel { line: u64, value: String },

    #[error("empty corpus")]
    EmptyCorpus,

    #[error("{source_name}:{line}: {message}")]
    WordList {
        source_name: String,
        line: usize,
        message: String,
    },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("class {0} has no members")]
    EmptyClass(Label),

    #[error("empty training set")]
    EmptyTrainingSet,

    #[error("dense copy of {rows} rows x {dim} columns does not fit in memory")]
    TooLarge { rows: usize, dim: usize },

    #[error("training data contains a single class")]
    SingleClass,

    #[error("every document is empty")]
    EmptyDocuments,

    #[error("vocabulary fingerprint mismatch: model expects {expected}, input has {found}")]
    FingerprintMismatch { expected: Fingerprint, found: Fingerprint },

    #[error("feature dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("operation requires a {expected} model, got {found}")]
    WrongModelKind {
        expected: &'static str,
        found: &'static str,
    },

    #[error("negative feature value {value} in column {column}")]
    NegativeFeature { column: usize, value: f64 },

    #[error("k = {k} exceeds the {n} stored training points")]
    NeighboursExceedTraining { k: usize, n: usize },

    #[error("label sequences differ in length ({truth} true vs {predicted} predicted)")]
    LengthMismatch { truth: usize, predicted: usize },

    #[error("nothing to evaluate")]
    EmptyEvaluation,

    #[error("empty test set")]
    EmptyTestSet,

    #[error("unsupported {what} format version {found} (expected {expected})")]
    FormatVersion {
        what: &'static str,
        found: u32,
        expected: u32,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Whether the error stems from input data (as opposed to a bad invocation).
    pub fn is_data_error(&self) -> bool {
        !matches!(self, Error::InvalidConfig(_))
    }
}
