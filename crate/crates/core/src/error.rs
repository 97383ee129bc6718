use thiserror::Error;

use crate::lattice::MultiIndex;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("dimension must be at least 1")]
    ZeroDimension,

    #[error("coordinate {j} is out of range for dimension {n}")]
    CoordinateOutOfRange { j: usize, n: usize },

    #[error("slant order must be an integer >= 2, got {0}")]
    InvalidOrder(i64),

    #[error("invalid box: {0}")]
    InvalidBox(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("box is too small: coefficient at {index} cannot be reached")]
    InsufficientBox { index: MultiIndex },

    #[error("{0} requires exact mode")]
    ExactModeRequired(&'static str),

    #[error("invalid input: {0}")]
    Input(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
        if expected == found {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected, found })
        }
    }
}
