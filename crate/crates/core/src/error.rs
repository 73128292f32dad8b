use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown mapping `{0}`")]
    UnknownMapping(String),

    #[error("alphabet mismatch: `{left}` vs `{right}`")]
    AlphabetMismatch { left: String, right: String },

    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("invalid mapping: {0}")]
    InvalidMapping(String),

    #[error("target dimension {target} is smaller than mapping dimension {dim}")]
    DimensionTooSmall { dim: usize, target: usize },

    #[error("symbol index {index} out of range for alphabet of size {size}")]
    SymbolOutOfRange { index: usize, size: usize },

    #[error("symbol `{0}` is not in the alphabet")]
    UnknownSymbol(char),

    #[error("operator input is empty")]
    EmptySequence,

    #[error("lag {max_lag} out of range for sequence of length {len}")]
    LagOutOfRange { max_lag: usize, len: usize },

    #[error("weight vector has length {weights}, sequence has length {len}")]
    WeightLengthMismatch { weights: usize, len: usize },

    #[error("invalid operator weights: {0}")]
    InvalidWeights(String),

    #[error("profiles are defined on different index grids")]
    GridMismatch,

    #[error("profile has zero variance over the retained indices")]
    DegenerateProfile,

    #[error("profile too short: need at least {needed} points, got {got}")]
    TooShort { needed: usize, got: usize },

    #[error("mapping has only zero vectors")]
    ZeroMapping,

    #[error("series product support would reach {needed} terms, limit is {limit}")]
    SupportOverflow { needed: usize, limit: usize },

    #[error("malformed FASTA at line {line}: {reason}")]
    MalformedFasta { line: usize, reason: String },

    #[error("unknown residue `{residue}` at position {position} of record `{record}`")]
    UnknownResidue {
        record: String,
        residue: char,
        position: usize,
    },

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("prefix length {len} out of range 1..={max}")]
    LengthOutOfRange { len: usize, max: usize },

    #[error("report has fewer than two plottable rows")]
    EmptyReport,

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{path}: {source}")]
    File {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn file(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::File {
            path: path.into(),
            source,
        }
    }
}
