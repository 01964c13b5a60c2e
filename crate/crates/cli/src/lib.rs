//! Library side of the `galpha` command-line tool: spec files, the
//! verification battery, Blaschke round trips, rendering, and generation.

pub mod error;
pub mod generate;
pub mod render;
pub mod spec;
pub mod verify;

pub use error::CliError;
pub use spec::{FunctionSpecFile, LoadedSpec};
pub use verify::{Tolerances, VerifyConfig, VerifyReport};

/// Environment variable capping the worker threads of parallel sweeps.
pub const THREADS_ENV: &str = "GALPHA_THREADS";

/// Sizes the global rayon pool from [`THREADS_ENV`]; unset or `0` keeps the
/// automatic choice.
pub fn configure_threads() -> Result<(), CliError> {
    let Ok(value) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = value
        .trim()
        .parse()
        .map_err(|_| CliError::Input(format!("{THREADS_ENV} must be a non-negative integer, got {value:?}")))?;
    if n > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Input(format!("cannot configure {THREADS_ENV}: {e}")))?;
    }
    Ok(())
}
