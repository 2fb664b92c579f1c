use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Unreadable or malformed input, bad parameters, or a library error
    /// raised by the input (non-Hermitian, wrong dimension, ...).
    #[error("{0}")]
    Input(String),

    #[error(transparent)]
    Core(#[from] portrait_core::Error),

    #[error("oracle disagreement on {what}: main {main}, oracle {oracle} (tolerance {tolerance:e})")]
    OracleMismatch {
        what: String,
        main: f64,
        oracle: f64,
        tolerance: f64,
    },
}

impl CliError {
    pub fn input(msg: impl Into<String>) -> Self {
        Self::Input(msg.into())
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Input(_) | Self::Core(_) => 2,
            Self::OracleMismatch { .. } => 3,
        }
    }
}
