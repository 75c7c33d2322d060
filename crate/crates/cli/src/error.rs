use std::fmt;

use hallint_core::Error;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const IDENTITY_FAILURE: i32 = 1;
    pub const DOMAIN: i32 = 2;
    pub const ACCURACY: i32 = 3;
}

/// Anything that stops a command before it can report.
#[derive(Debug)]
pub enum CliError {
    /// Bad flags, names or values rejected before any computation.
    Usage(String),
    /// An error from the numerical core.
    Core(Error),
    Io(std::io::Error),
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    /// Domain and divergence errors (and usage errors) map to 2, quadrature
    /// failures (budget exhausted or a non-finite sample) to 3.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => exit::DOMAIN,
            CliError::Core(e) => core_exit_code(e),
            CliError::Io(_) => exit::ACCURACY,
        }
    }
}

pub fn core_exit_code(e: &Error) -> i32 {
    match e {
        Error::Domain { .. } | Error::Divergence { .. } => exit::DOMAIN,
        Error::Evaluation { .. } | Error::Accuracy { .. } => exit::ACCURACY,
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "usage error: {msg}"),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.into())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Io(e.into())
    }
}
