use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),

    #[error("{path}: line {line}: field `{field}`: {message}")]
    Parse {
        path: String,
        line: usize,
        field: String,
        message: String,
    },

    #[error("{path}: {message}")]
    Io { path: String, message: String },

    #[error(transparent)]
    Math(#[from] onepoint::Error),
}

pub const EXIT_PASS: u8 = 0;
pub const EXIT_CHECK_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_CAP: u8 = 3;

impl CliError {
    pub fn exit_code(&self) -> u8 {
        use onepoint::Error as E;
        match self {
            CliError::Usage(_) | CliError::Parse { .. } | CliError::Io { .. } => EXIT_USAGE,
            CliError::Math(E::CapExceeded { .. }) => EXIT_CAP,
            CliError::Math(E::NotOnePoint { .. } | E::Internal(_)) => EXIT_CHECK_FAILED,
            CliError::Math(_) => EXIT_USAGE,
        }
    }
}
