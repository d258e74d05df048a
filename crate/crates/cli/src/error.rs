use thiserror::Error;

/// Process exit codes. These are a stable contract.
pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error(transparent)]
    Library(#[from] orthocell::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// A library-level verification failure is a failed check, not a usage
    /// error.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Library(orthocell::Error::VerificationFailed(_)) => EXIT_FAIL,
            _ => EXIT_USAGE,
        }
    }
}
