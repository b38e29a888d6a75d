use std::path::PathBuf;

use jch_core::Error as CoreError;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const VALIDATION_FAILED: i32 = 1;
    pub const CONFIG: i32 = 2;
    pub const PRECONDITION: i32 = 3;
    pub const RUNTIME: i32 = 4;
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{}:{line}:{column}: {message}", path.display())]
    Config {
        path: PathBuf,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{0}")]
    Precondition(CoreError),
    #[error("validation failed: {}", failed.join(", "))]
    ValidationFailed { failed: Vec<String> },
    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Core(CoreError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config { .. } => exit::CONFIG,
            CliError::Precondition(_) => exit::PRECONDITION,
            CliError::ValidationFailed { .. } => exit::VALIDATION_FAILED,
            CliError::Io { .. } | CliError::Core(_) | CliError::Json(_) => exit::RUNTIME,
        }
    }

    pub(crate) fn io(context: impl Into<String>, source: std::io::Error) -> Self {
        CliError::Io {
            context: context.into(),
            source,
        }
    }
}

/// Core errors raised while a regime is evaluated: anything the regime
/// refuses on physical grounds maps to the precondition exit code.
impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::Precondition(_)
            | CoreError::SingularDetuning { .. }
            | CoreError::ModeDegeneracy { .. }
            | CoreError::Topology { .. }
            | CoreError::Truncation { .. } => CliError::Precondition(e),
            other => CliError::Core(other),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
