use alloc::string::String;
use alloc::vec::Vec;

/// Errors raised by the optimizer, the sampler and problem evaluation.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("step length must be positive, got {0}")]
    Domain(f64),

    #[error("dimension must be at least 1")]
    ZeroDimension,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("coordinate {coordinate} has an infinite bound")]
    UnboundedProblem { coordinate: usize },

    #[error("coordinate {coordinate}: lower bound {lower} is not below upper bound {upper}")]
    InvalidBounds {
        coordinate: usize,
        lower: f64,
        upper: f64,
    },

    #[error("objective returned a non-finite value at {position:?}")]
    NonFiniteObjective { position: Vec<f64> },

    #[error("unknown problem `{0}`")]
    UnknownProblem(String),
}

impl Error {
    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::InvalidConfig(msg.into())
    }
}
