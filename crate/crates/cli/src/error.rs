use benford::BenfordError;
use thiserror::Error;

/// Process exit codes. Every failure class has its own code.
pub mod exit {
    pub const OK: u8 = 0;
    pub const IO: u8 = 1;
    pub const USAGE: u8 = 2;
    pub const MISSING_FILE: u8 = 3;
    pub const UNKNOWN_COLUMN: u8 = 4;
    pub const NO_VALUES: u8 = 5;
    pub const EMPTY_SAMPLE: u8 = 6;
    pub const PARAMETER: u8 = 7;
    pub const VERIFICATION: u8 = 8;
    pub const MALFORMED: u8 = 9;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },

    #[error("{path}: malformed {format} input: {message}")]
    Malformed {
        path: String,
        format: &'static str,
        message: String,
    },

    #[error("{0}: no such file")]
    MissingFile(String),

    #[error("unknown column {selector:?} (available: {available})")]
    UnknownColumn { selector: String, available: String },

    #[error("{path}: no parseable numeric values in column {column:?}")]
    NoValues { path: String, column: String },

    #[error(transparent)]
    Core(#[from] BenfordError),

    #[error("{0} check(s) failed")]
    VerificationFailed(usize),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => exit::USAGE,
            CliError::Io { .. } => exit::IO,
            CliError::Malformed { .. } => exit::MALFORMED,
            CliError::MissingFile(_) => exit::MISSING_FILE,
            CliError::UnknownColumn { .. } => exit::UNKNOWN_COLUMN,
            CliError::NoValues { .. } => exit::NO_VALUES,
            CliError::Core(BenfordError::EmptySample) => exit::EMPTY_SAMPLE,
            CliError::Core(_) => exit::PARAMETER,
            CliError::VerificationFailed(_) => exit::VERIFICATION,
        }
    }

    pub(crate) fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
