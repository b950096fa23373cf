use thiserror::Error;

/// Errors raised by the dual linear algebra routines and file formats.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("shape not valid for {kind}: {rows}x{cols}")]
    ShapeMismatch {
        kind: &'static str,
        rows: usize,
        cols: usize,
    },

    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("standard part is numerically singular (rcond estimate {rcond:e})")]
    SingularStandardPart { rcond: f64 },

    #[error("pivot r[{index}][{index}] = {value:e} is below the rank tolerance {tolerance:e}")]
    DegenerateDiagonal {
        index: usize,
        value: f64,
        tolerance: f64,
    },

    #[error("standard part is rank deficient: rank {rank}, required {required}")]
    RankDeficient { rank: usize, required: usize },

    #[error("existence condition violated: residual {residual:e} exceeds tolerance {tolerance:e}")]
    ExistenceConditionViolated { residual: f64, tolerance: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
