use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("invalid weight data: {0}")]
    InvalidWeight(String),
    #[error("unsupported Gaussian scale: {0}")]
    UnsupportedScale(String),
    #[error("unsupported word: generator {index} ({generator}) leaves the representable class: {reason}")]
    UnsupportedWord {
        index: usize,
        generator: String,
        reason: String,
    },
    #[error("monomial budget exceeded: {needed} unknowns > budget {budget}")]
    Budget { needed: usize, budget: usize },
    #[error("inconsistent linear system (row {row})")]
    Inconsistent { row: usize },
    #[error("internal inconsistency: {0}")]
    Internal(String),
    #[error("not invertible: {0}")]
    Singular(String),
}
