use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not skew-symmetric")]
    NotSkewSymmetric,

    #[error("pfaffian needs an even dimension, got {0}")]
    OddDimension(usize),

    #[error("element does not belong to the expected group")]
    GroupMismatch,

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("tuple does not generate the group")]
    NotGenerating,

    #[error("wedge values differ: {0}")]
    WedgeMismatch(String),

    #[error("representations are not birationally equivalent")]
    NotEquivalent,

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
