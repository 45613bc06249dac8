use std::fmt;

/// Failure classes with their process exit codes.
#[derive(Debug)]
pub enum CliError {
    /// Bad input or arguments (exit 2).
    Usage(String),
    /// A checked invariant did not hold (exit 3).
    Contract(String),
    /// Reading or writing failed (exit 1).
    Io(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Contract(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Contract(m) => write!(f, "contract violation: {m}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl From<writhe::Error> for CliError {
    fn from(e: writhe::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        match e.into_kind() {
            csv::ErrorKind::Io(io) => CliError::Io(io),
            other => CliError::Usage(format!("csv: {other:?}")),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Io(e.into())
    }
}

pub type CliResult<T = ()> = Result<T, CliError>;
