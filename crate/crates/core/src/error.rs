use thiserror::Error;

/// Every fallible operation in the crate reports one of these.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("exchange axiom violated at ({b1}, {b2}, {i})")]
    Exchange { b1: String, b2: String, i: usize },
    #[error("Plücker relation ({i}, {j}) fails")]
    Plucker { i: String, j: String },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("ground too large: {what} has {size} elements, bound is {bound}")]
    TooLarge { what: String, size: usize, bound: usize },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("internal check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
