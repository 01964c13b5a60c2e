//! Numeric kernel: principal-branch powers, disk sampling grids, Taylor
//! coefficients by contour quadrature and sup-norm estimation on the disk.

mod grid;
mod quadrature;
mod supnorm;

pub use grid::{DiskGrid, GridDescriptor};
pub use quadrature::{cauchy_coefficients, CoefficientQuadrature};
pub use supnorm::{sup_norm_estimate, NormEstimate, DEFAULT_REFINE_ITERS};

use num_complex::Complex;

use crate::error::{domain, Result};
use crate::Real;

/// `base^exponent` on the principal branch, `exp(exponent * Log base)`.
///
/// Only bases in the open right half-plane are accepted. Every power
/// `(1 - ζz)^{αt}` built by this crate has such a base whenever `|z| < 1`,
/// so a rejection here means the caller left the disk.
pub fn principal_power<T: Real>(base: Complex<T>, exponent: T) -> Result<Complex<T>> {
    if !is_finite(base) || !exponent.is_finite() {
        return Err(domain!("non-finite input to principal_power: ({base}, {exponent})"));
    }
    if base.re <= T::zero() {
        return Err(domain!("principal_power needs Re(base) > 0, got {base}"));
    }
    Ok((base.ln() * exponent).exp())
}

#[inline]
pub(crate) fn is_finite<T: Real>(z: Complex<T>) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// Rejects points outside the open unit disk.
#[inline]
pub(crate) fn check_open_disk<T: Real>(z: Complex<T>, what: &str) -> Result<()> {
    if !is_finite(z) {
        return Err(domain!("{what}: non-finite point {z}"));
    }
    if z.norm_sqr() >= T::one() {
        return Err(domain!("{what}: needs |z| < 1, got |z| = {}", z.norm()));
    }
    Ok(())
}
