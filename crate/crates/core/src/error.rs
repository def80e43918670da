use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("expected {expected} amplitudes, got {found}")]
    Shape { expected: usize, found: usize },

    #[error("squared norm {norm} differs from 1 by more than {tol}")]
    Normalization { norm: f64, tol: f64 },

    #[error("qubit position {0} is outside 1..=4")]
    Index(i64),

    #[error("{0}")]
    Domain(String),

    #[error("non-finite amplitude at basis index {0}")]
    NonFinite(usize),

    #[error("invalid density matrix: {0}")]
    InvalidDensity(String),

    #[error("numerical error: {0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, Error>;
