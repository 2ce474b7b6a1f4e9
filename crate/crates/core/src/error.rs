use std::path::PathBuf;

use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("vector must have at least one entry")]
    EmptyVector,
    #[error("non-finite value {value} at index {index}")]
    NonFinite { index: usize, value: f64 },
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("character {0:?} has no codes")]
    EmptyCharacter(String),
    #[error("duplicate character name {0:?}")]
    DuplicateCharacter(String),
    #[error("unknown character {0:?}")]
    UnknownCharacter(String),
    #[error("dataset has no characters")]
    NoCharacters,
    #[error("need at least {needed} characters, found {found}")]
    TooFewCharacters { needed: usize, found: usize },
    #[error("requested {requested} steps but only {available} characters are available")]
    TooManySteps { requested: usize, available: usize },
    #[error("total variance is zero; residual fractions are undefined")]
    ZeroVariance,
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("io error: {0}")]
    Write(#[from] std::io::Error),
    #[error("malformed delimited input: {0}")]
    Csv(#[from] csv::Error),
    #[error("input has no header row")]
    MissingHeader,
    #[error("unknown column {0:?}")]
    UnknownColumn(String),
    #[error("row {row}: target column {column:?} has non-numeric value {value:?}")]
    NonNumericTarget {
        row: usize,
        column: String,
        value: String,
    },
    #[error("row {row}: missing value in column {column:?}")]
    MissingCell { row: usize, column: String },
    #[error("filter would leave no rows")]
    EmptyFilter,
    #[error("histogram bin width must be positive, got {0}")]
    InvalidBinWidth(f64),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

/// Coarse grouping of errors, used by front ends to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    /// Bad arguments or configuration.
    Usage,
    /// Unreadable, malformed or inconsistent data.
    Data,
    /// Numerically undefined request, such as fractions of a zero variance.
    Degenerate,
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::ZeroVariance => ErrorClass::Degenerate,
            Error::UnknownCharacter(_)
            | Error::DuplicateCharacter(_)
            | Error::TooManySteps { .. }
            | Error::TooFewCharacters { .. }
            | Error::NoCharacters
            | Error::InvalidConfig(_)
            | Error::InvalidBinWidth(_)
            | Error::UnknownColumn(_) => ErrorClass::Usage,
            _ => ErrorClass::Data,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
