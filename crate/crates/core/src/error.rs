use thiserror::Error;

/// Errors raised by the series engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("constant term is not invertible")]
    NonInvertible,
    #[error("domain error: {0}")]
    Domain(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("torus weights are not generic: {0}")]
    Genericity(String),
    #[error("unexpected structure: {0}")]
    Structure(String),
    #[error("invalid complete-intersection data: {0}")]
    InvalidSpec(String),
}

pub type Result<T> = std::result::Result<T, Error>;
