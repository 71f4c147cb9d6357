use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid map: {0}")]
    InvalidMap(String),
    #[error("domain mismatch: expected {expected}, found {found}")]
    DomainMismatch { expected: usize, found: usize },
    #[error("index {index} out of range (max {bound})")]
    IndexOutOfRange { index: usize, bound: usize },
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error("invalid shuffling: {0}")]
    InvalidShuffling(String),
    #[error("path is not Delannoy")]
    NotDelannoy,
    #[error("colour mismatch: input extent {input} vs output degree {output}")]
    ColourMismatch { input: usize, output: usize },
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("degree {degree} outside instance range 0..={max}")]
    DegreeOutOfRange { degree: usize, max: usize },
    #[error("characteristic {0} not supported for this operation")]
    Characteristic(u64),
    #[error("instance has no symmetric group action")]
    NoSymmetry,
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("invalid Lie algebra: {0}")]
    InvalidLie(String),
    #[error("{path}: {message}")]
    Schema { path: String, message: String },
    #[error("arity {0} not supported, expected 2")]
    Arity(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
