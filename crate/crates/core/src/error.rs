use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (asymmetry {asymmetry:e} exceeds {threshold:e})")]
    NotHermitian { asymmetry: f64, threshold: f64 },

    #[error(
        "matrix is not nonnegative Hermitian (eigenvalue {eigenvalue:e} below -{threshold:e})"
    )]
    NotPsd { eigenvalue: f64, threshold: f64 },

    #[error("{what} did not converge after {sweeps} sweeps")]
    NoConvergence { what: &'static str, sweeps: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error(
        "Hankel nonnegative definiteness is defined for odd-length sequences only (got {len} blocks); \
         truncate the sequence or use the Stieltjes path with an alpha"
    )]
    OddOrderUnsupported { len: usize },

    #[error("sequence is not Hankel nonnegative definite")]
    NotHnnd,

    #[error("sequence is not alpha-Stieltjes nonnegative definite")]
    NotKnnd,

    #[error("X + Y differs from A by {defect:e}")]
    SplitInvalid { defect: f64 },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("sequence too short: need at least {needed} blocks, got {got}")]
    TooShort { needed: usize, got: usize },

    #[error("invalid tolerance {0}: must be positive and finite")]
    InvalidTolerance(f64),

    #[error("invalid alpha {0}: must be a finite real number")]
    InvalidAlpha(f64),

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),
}

pub type Result<T> = std::result::Result<T, Error>;
