use thiserror::Error;

/// Failures of a subcommand, grouped by exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// Filesystem or cache problems (exit code 3).
    #[error("io error: {0}")]
    Io(String),
    /// Malformed flags, files or graph names (exit code 3).
    #[error("invalid input: {0}")]
    Input(String),
    /// A wrapped computation refused its input or failed (exit code 2).
    #[error("computation failed: {0}")]
    Compute(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Compute(_) => 2,
            CliError::Io(_) | CliError::Input(_) => 3,
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

pub(crate) fn compute<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Compute(e.to_string())
}
