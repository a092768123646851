use moment_schur::Error;

/// Everything a command can fail with, mapped onto stable exit codes.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error(transparent)]
    Core(#[from] Error),
}

pub mod exit {
    pub const OK: i32 = 0;
    pub const OTHER: i32 = 1;
    pub const PARSE: i32 = 2;
    pub const NOT_PSD: i32 = 3;
    pub const DIMENSION: i32 = 4;
    pub const ODD_ORDER: i32 = 5;
    pub const NOT_HERMITIAN: i32 = 6;
    pub const SHAPE: i32 = 7;
    pub const NOT_NND: i32 = 8;
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => exit::PARSE,
            CliError::Core(e) => match e {
                Error::InvalidTolerance(_) | Error::InvalidAlpha(_) | Error::InvalidMatrix(_) => {
                    exit::PARSE
                }
                Error::NotPsd { .. } => exit::NOT_PSD,
                Error::DimensionMismatch(_) => exit::DIMENSION,
                Error::OddOrderUnsupported { .. } => exit::ODD_ORDER,
                Error::NotHermitian { .. } => exit::NOT_HERMITIAN,
                Error::ShapeMismatch(_) => exit::SHAPE,
                Error::NotHnnd | Error::NotKnnd => exit::NOT_NND,
                _ => exit::OTHER,
            },
        }
    }
}
