use std::path::PathBuf;

/// Failures of a CLI command, each mapped onto the process exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Malformed or invalid input; exit code 2.
    #[error("invalid input: {0}")]
    Input(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    /// A numerical routine failed while running the checks; exit code 1.
    #[error("computation failed: {0}")]
    Compute(#[source] galpha_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) | CliError::Io { .. } => 2,
            CliError::Compute(_) => 1,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }
}

/// Core errors raised while building objects from a spec are input errors.
pub(crate) fn input(e: galpha_core::Error) -> CliError {
    CliError::Input(e.to_string())
}

pub(crate) fn compute(e: galpha_core::Error) -> CliError {
    CliError::Compute(e)
}
