use std::fmt;
use std::process::ExitCode;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Unsupported(String),
    /// A verification or consistency check did not pass.
    Failed(String),
    Io(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            CliError::Failed(_) => 1,
            CliError::Usage(_) | CliError::Io(_) => 2,
            CliError::Unsupported(_) => 3,
        })
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "error: {m}"),
            CliError::Unsupported(m) => write!(f, "unsupported: {m}"),
            CliError::Failed(m) => write!(f, "failed: {m}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl From<uqso5::Error> for CliError {
    fn from(e: uqso5::Error) -> Self {
        use uqso5::Error as E;
        match e {
            E::Unsupported(m) => CliError::Unsupported(m),
            E::InvalidIrrep { .. } | E::InvalidParameter(_) | E::Parse(_) | E::DimensionMismatch(..) => {
                CliError::Usage(e.to_string())
            }
            E::DivisionByZero(_)
            | E::ClosureViolation { .. }
            | E::NegativeRadicand { .. }
            | E::Consistency { .. }
            | E::Series(_) => CliError::Failed(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(std::io::Error::other(e))
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Usage(format!("json: {e}"))
    }
}
