use std::path::PathBuf;

use thiserror::Error;

/// Errors produced anywhere in the cover / compile / benchmark pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("no points")]
    NoPoints,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("l* undefined: fewer than two classes present")]
    InterclassDistanceUndefined,

    #[error("nothing to separate: input contains a single class")]
    SingleClass,

    #[error("at least two classes are required, got {0}")]
    TooFewClasses(usize),

    #[error("no axes to score")]
    NoAxes,

    #[error("axis {axis} out of range for {n_dims}-dimensional cube")]
    AxisOutOfRange { axis: usize, n_dims: usize },

    #[error("uniform cover intractable: {cells} cells requested (limit {limit}, n <= 3)")]
    UniformCoverIntractable { cells: f64, limit: f64 },

    #[error("cover has no class-assigned leaves to fill from")]
    NoSeedLeaves,

    #[error("class {0} has no support")]
    ClassWithoutSupport(usize),

    #[error("cover still has unresolved inhomogeneous leaves")]
    IncompleteCover,

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("malformed document at `{field}`: {reason}")]
    Format { field: String, reason: String },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: row {row}, column {column}: {reason}")]
    Csv {
        path: PathBuf,
        row: usize,
        column: usize,
        reason: String,
    },

    #[error("{path}: no data rows")]
    NoDataRows { path: PathBuf },

    #[error("{path}: {reason}")]
    Idx { path: PathBuf, reason: String },

    #[error("non-finite loss at epoch {epoch}; learning rate {learning_rate} is likely too high")]
    Diverged { epoch: usize, learning_rate: f64 },
}

impl Error {
    pub(crate) fn format(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Format {
            field: field.into(),
            reason: reason.into(),
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
