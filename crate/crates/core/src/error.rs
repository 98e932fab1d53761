use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by the compute, analysis and I/O layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("non-finite filtration coordinate {value} on axis {axis}")]
    NonFinite { axis: usize, value: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error(
        "divergent integral: curves end at different Euler characteristics ({a_tail} vs {b_tail}); pass an upper bound"
    )]
    DivergentIntegral { a_tail: i64, b_tail: i64 },

    #[error("truncation {bound} on axis {axis} does not exceed contribution coordinate {value}")]
    Truncation { axis: usize, bound: f64, value: f64 },

    #[error("births {first} and {second} are comparable; pass only minimal incomparable births")]
    ComparableBirths { first: usize, second: usize },

    #[error("missing cell count: this curve was not built from raw contributions")]
    MissingCellCount,

    #[error("format error at {location}: {message}")]
    Format { location: String, message: String },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn format(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Format {
            location: location.into(),
            message: message.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
