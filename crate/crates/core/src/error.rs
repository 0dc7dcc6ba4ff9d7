use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("zero direction")]
    ZeroDirection,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid curve: {0}")]
    InvalidCurve(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("direction is not a unit vector (|xi| = {0})")]
    NonUnitDirection(f64),

    #[error("point {0:?} belongs to no cell of the partition")]
    Uncovered(Vec<f64>),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("solver did not converge: {0}")]
    NonConvergence(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) | Error::Io(_) => 1,
            Error::NonConvergence(_) => 3,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
