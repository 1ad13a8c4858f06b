use std::fmt;

/// Failures surfaced to the user, each mapped to a process exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Malformed input data. Reported with the offending line.
    #[error("{path}: line {line}: {message}")]
    Parse { path: String, line: u64, message: String },
    /// The input could not be read, or output could not be written.
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    /// Well-formed input that describes an invalid request.
    #[error("{0}")]
    Spec(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse { .. } | CliError::Io { .. } => 2,
            CliError::Spec(_) => 3,
        }
    }

    pub fn parse(path: &str, line: u64, message: impl fmt::Display) -> CliError {
        CliError::Parse {
            path: path.to_string(),
            line,
            message: message.to_string(),
        }
    }

    pub fn io(path: &str, message: impl fmt::Display) -> CliError {
        CliError::Io {
            path: path.to_string(),
            message: message.to_string(),
        }
    }
}

impl From<renyi_risk::Error> for CliError {
    fn from(err: renyi_risk::Error) -> CliError {
        CliError::Spec(err.to_string())
    }
}
