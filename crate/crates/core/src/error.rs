use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("{{{0}, {1}}} is not an edge")]
    NotAnEdge(usize, usize),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("numeric failure: {0}")]
    Numeric(String),
    #[error("matrix of order {order} exceeds the limit of {limit}")]
    Size { order: usize, limit: usize },
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
