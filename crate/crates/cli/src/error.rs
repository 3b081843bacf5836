use std::path::PathBuf;

use thiserror::Error;

/// Failures surfaced by the command-line front end, each mapped to a
/// process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("scenario syntax: {0}")]
    Syntax(String),

    #[error("invalid field `{field}`: {reason}")]
    Validation { field: String, reason: String },

    #[error("missing field `{0}`")]
    Missing(String),

    #[error("{0}")]
    Usage(String),

    /// A library operation rejected its numeric input.
    #[error("numerical error in {op}: {source}", op = source.operation())]
    Numeric {
        #[from]
        source: mmwave_link::Error,
    },

    #[error("cannot write {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn missing(field: &str) -> Self {
        CliError::Missing(field.to_string())
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Syntax(_) | CliError::Validation { .. } | CliError::Missing(_) | CliError::Usage(_) => 2,
            CliError::Numeric { .. } => 3,
            CliError::Io { .. } => 4,
        }
    }
}
