use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// `pos` is a byte offset into the offending argument.
    #[error("syntax error at column {}: {message}", pos + 1)]
    Syntax { pos: usize, message: String },

    #[error("cannot read {}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Core(#[from] symbreak_core::Error),

    #[error("verification failed: {0}")]
    Verify(String),

    #[error("cannot write output: {0}")]
    Output(String),
}

impl CliError {
    /// 2 for bad input, 3 for exceeded bounds, 1 for failed checks.
    pub fn exit_code(&self) -> i32 {
        use symbreak_core::Error as E;
        match self {
            CliError::Syntax { .. } | CliError::Io { .. } | CliError::Usage(_) => 2,
            CliError::Core(E::Input(_) | E::Domain(_)) => 2,
            CliError::Core(E::Capacity(_)) => 3,
            CliError::Core(E::Invariant(_)) | CliError::Verify(_) | CliError::Output(_) => 1,
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Output(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Output(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;
