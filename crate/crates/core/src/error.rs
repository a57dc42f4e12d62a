use std::io;
use std::path::{Path, PathBuf};

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },

    #[error("lexicon: {0}")]
    Lexicon(String),

    #[error("invalid corpus: {0}")]
    Corpus(String),

    #[error("not a propositional head: token {index} ({token:?})")]
    NotAHead { index: usize, token: String },

    #[error("misaligned inputs: {0}")]
    Misaligned(String),

    #[error("invalid feature configuration: {0}")]
    FeatureConfig(String),

    #[error("ngram order must be at least 1, got {0}")]
    NgramOrder(usize),

    #[error("degenerate labels: training data needs both classes")]
    DegenerateLabels,

    #[error("invalid training configuration: {0}")]
    TrainConfig(String),

    #[error("empty instance list")]
    EmptyInstances,

    #[error("model has no belief-appended lemma unigrams")]
    NoAppendFeatures,

    #[error("collinear design matrix: {0}")]
    Collinear(String),

    #[error("not enough observations: need at least {needed}, got {got}")]
    TooFewObservations { needed: usize, got: usize },

    #[error("outcome is perfectly separated by the predictor")]
    Separation,

    #[error("logistic regression did not converge after {iterations} iterations (step trace: {trace:?})")]
    NonConvergence { iterations: usize, trace: Vec<f64> },

    #[error("relative difference undefined: superior mean is zero")]
    ZeroBaseline,

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("infeasible generator configuration: {0}")]
    Infeasible(String),

    #[error("schema mismatch in {artifact}: expected version {expected}, found {found}")]
    Schema {
        artifact: String,
        expected: u32,
        found: String,
    },

    #[error("malformed {artifact}: {detail}")]
    Parse { artifact: String, detail: String },
}

impl Error {
    pub fn io(path: impl AsRef<Path>, source: io::Error) -> Self {
        Error::Io {
            path: path.as_ref().to_path_buf(),
            source,
        }
    }

    pub fn parse(artifact: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Parse {
            artifact: artifact.into(),
            detail: detail.into(),
        }
    }
}
