use std::path::PathBuf;

use idealis::{Error, Field};

pub const EXIT_OK: u8 = 0;
pub const EXIT_INTERNAL: u8 = 1;
pub const EXIT_PARSE: u8 = 2;
pub const EXIT_UNSUPPORTED_FIELD: u8 = 3;
pub const EXIT_EMPTY_KERNEL: u8 = 4;
pub const EXIT_NON_REAL: u8 = 5;
pub const EXIT_BAD_PRIME: u8 = 6;
pub const EXIT_NON_CONTAINMENT: u8 = 10;
pub const EXIT_UNDECIDED: u8 = 11;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("write failed: {0}")]
    Output(#[from] std::io::Error),
    #[error("{path}: {source}")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
    #[error("rendering needs a real field, not {0}")]
    NonReal(Field),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) => core_exit_code(e),
            CliError::Io { .. } | CliError::Output(_) => EXIT_INTERNAL,
            CliError::Json { .. } | CliError::Usage(_) => EXIT_PARSE,
            CliError::NonReal(_) => EXIT_NON_REAL,
        }
    }
}

pub fn core_exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. } | Error::InvalidField(_) | Error::Invalid(_) => EXIT_PARSE,
        Error::UnsupportedFieldForModel { .. } => EXIT_UNSUPPORTED_FIELD,
        Error::EmptyKernel => EXIT_EMPTY_KERNEL,
        Error::BadPrime { .. } => EXIT_BAD_PRIME,
        Error::ResourceLimit { .. } => EXIT_UNDECIDED,
        _ => EXIT_INTERNAL,
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
