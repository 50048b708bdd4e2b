use thiserror::Error;

/// Errors produced anywhere in the toolkit.
///
/// Every variant is a validation or usage problem; statistical failures are
/// reported through [`crate::uniformity::TestReport`] instead.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("group family mismatch: expected {expected}, got {got}")]
    FamilyMismatch { expected: String, got: String },

    #[error("group table violates {axiom}: {witness}")]
    GroupAxiom { axiom: &'static str, witness: String },

    #[error("malformed group table: {0}")]
    MalformedTable(String),

    #[error("element index {index} out of range for group of order {order}")]
    IndexOutOfRange { index: usize, order: usize },

    #[error("invalid character index: {0}")]
    InvalidCharacter(String),

    #[error("invalid Levy triple: {0}")]
    InvalidTriple(String),

    #[error("invalid step distribution: {0}")]
    InvalidSteps(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("lattice point {point} lies on a bin boundary of the partition")]
    LatticeOnBoundary { point: String },

    #[error("checkpoint {checkpoint} lies beyond the path horizon {horizon}")]
    CheckpointBeyondHorizon { checkpoint: f64, horizon: f64 },

    #[error("length mismatch: {0}")]
    LengthMismatch(String),

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("malformed rational: {0}")]
    MalformedRational(String),

    #[error("cannot decide rationality: {0}")]
    Undecidable(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Config(err.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
