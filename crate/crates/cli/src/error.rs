use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error(transparent)]
    Core(#[from] pifunc::Error),

    #[error("verification failed: {0}")]
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        use pifunc::Error as E;
        match self {
            CliError::Usage(_) | CliError::Io { .. } => 1,
            CliError::Core(E::Domain(_) | E::Overflow(_) | E::DivideByZero) => 2,
            CliError::Core(E::Parse(_)) => 1,
            CliError::Core(E::NonConvergence { .. }) => 3,
            CliError::Core(E::OracleMismatch { .. }) | CliError::Verification(_) => 4,
        }
    }
}
