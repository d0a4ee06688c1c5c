use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WaldError {
    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("malformed matrix: {rows}x{cols} with {len} entries")]
    MalformedMatrix {
        rows: usize,
        cols: usize,
        len: usize,
    },

    #[error("zero coordinate triple is not a projective point")]
    ZeroPoint,

    #[error("duplicate points at indices {first} and {second}")]
    DuplicatePoint { first: usize, second: usize },

    #[error("empty configuration")]
    EmptyConfig,

    #[error("inconclusive: {0}")]
    Inconclusive(String),

    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),

    #[error("realization of {name} failed validation: {reason}")]
    Validation { name: String, reason: String },

    #[error("cache: {0}")]
    Cache(String),
}

pub type Result<T, E = WaldError> = std::result::Result<T, E>;
