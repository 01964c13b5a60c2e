//! Reproducible random specs.

use std::f64::consts::{PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::CliError;
use crate::spec::{AtomEntry, FunctionSpecFile, LoadedSpec};

/// `m` atoms with pairwise separated angles and exponential weights
/// normalised to 1, drawn from a ChaCha stream seeded by `seed`.
pub fn generate(seed: u64, m: usize, alpha: f64) -> Result<LoadedSpec, CliError> {
    if m == 0 {
        return Err(CliError::Input("atom count must be at least 1".into()));
    }
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(CliError::Input(format!("alpha must lie in (0, 1], got {alpha}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let separation = (PI / m as f64).min(1e-3);
    let mut angles: Vec<f64> = Vec::with_capacity(m);
    while angles.len() < m {
        let a = rng.random_range(0.0..TAU);
        let clear = angles.iter().all(|b| {
            let d = (a - b).abs();
            d.min(TAU - d) >= separation
        });
        if clear {
            angles.push(a);
        }
    }
    let raw: Vec<f64> = angles
        .iter()
        .map(|_| -(1.0 - rng.random::<f64>()).ln() + f64::MIN_POSITIVE)
        .collect();
    let total: f64 = raw.iter().sum();
    let atoms = angles
        .iter()
        .zip(&raw)
        .map(|(&theta, w)| AtomEntry {
            theta,
            weight: w / total,
        })
        .collect();
    LoadedSpec::from_file_spec(FunctionSpecFile {
        alpha,
        atoms: Some(atoms),
        dilatation: None,
        blaschke: None,
    })
}
