use thiserror::Error;

/// Command failures, split by exit code: parse and validation problems exit
/// with 1, internal numeric failures with 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Numeric(String),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::Io { .. } => 1,
            CliError::Numeric(_) => 2,
        }
    }
}
