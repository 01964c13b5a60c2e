//! Pre-Schwarzian and Schwarzian derivatives of atomic members, their
//! hyperbolic norms, and the sharp bounds `‖T_h‖ <= 2α`, `‖S_h‖ <= 2α(2+α)`.

use num_complex::Complex;

use crate::complexfn::{check_open_disk, sup_norm_estimate, DiskGrid, NormEstimate, DEFAULT_REFINE_ITERS};
use crate::error::Result;
use crate::galpha::GAlphaFunction;
use crate::Real;

/// Estimated norms of one member next to the sharp bounds for its `α`.
#[derive(Debug, Clone, PartialEq)]
pub struct SchwarzReport<T> {
    pub alpha: T,
    pub pre_schwarzian_norm: NormEstimate<T>,
    pub schwarzian_norm: NormEstimate<T>,
    pub bound_pre_schwarzian: T,
    pub bound_schwarzian: T,
    /// `(1+2α)/(1-2α)`, present only for `α < 1/2`.
    pub qc_constant: Option<T>,
}

impl<T: Real> SchwarzReport<T> {
    /// Both estimates stay below their bounds up to `slack`.
    pub fn within_bounds(&self, slack: T) -> bool {
        self.pre_schwarzian_norm.value <= self.bound_pre_schwarzian + slack
            && self.schwarzian_norm.value <= self.bound_schwarzian + slack
    }
}

pub fn pre_schwarzian_bound<T: Real>(alpha: T) -> T {
    T::lit(2.0) * alpha
}

pub fn schwarzian_bound<T: Real>(alpha: T) -> T {
    T::lit(2.0) * alpha * (T::lit(2.0) + alpha)
}

/// Quasiconformal extension constant `(1+2α)/(1-2α)`; `None` for `α >= 1/2`.
pub fn qc_constant<T: Real>(alpha: T) -> Option<T> {
    let k = T::lit(2.0) * alpha;
    (k < T::one()).then(|| (T::one() + k) / (T::one() - k))
}

/// `P_h = h''/h'`.
pub fn pre_schwarzian<T: Real>(f: &GAlphaFunction<T>, z: Complex<T>) -> Result<Complex<T>> {
    f.log_derivative_hpp(z)
}

/// `S_h = P_h' - P_h^2/2` with `P_h' = -α Σ t_k ζ_k^2/(1 - ζ_k z)^2`.
pub fn schwarzian<T: Real>(f: &GAlphaFunction<T>, z: Complex<T>) -> Result<Complex<T>> {
    check_open_disk(z, "schwarzian")?;
    let one = Complex::new(T::one(), T::zero());
    let mut sum1 = Complex::new(T::zero(), T::zero());
    let mut sum2 = Complex::new(T::zero(), T::zero());
    for a in f.measure().atoms() {
        let zeta = a.zeta();
        let q = zeta / (one - zeta * z);
        sum1 += q * a.weight;
        sum2 += q * q * a.weight;
    }
    let alpha = f.alpha();
    let p = sum1 * (-alpha);
    let dp = sum2 * (-alpha);
    Ok(dp - p * p / T::lit(2.0))
}

pub fn norms<T: Real>(f: &GAlphaFunction<T>, grid: &DiskGrid<T>) -> Result<SchwarzReport<T>> {
    norms_with(f, grid, DEFAULT_REFINE_ITERS)
}

/// Estimates `sup (1-|z|^2)|P_h|` and `sup (1-|z|^2)^2 |S_h|`.
pub fn norms_with<T: Real>(f: &GAlphaFunction<T>, grid: &DiskGrid<T>, refine_iters: usize) -> Result<SchwarzReport<T>> {
    let pre = sup_norm_estimate(
        |z| Ok((T::one() - z.norm_sqr()) * pre_schwarzian(f, z)?.norm()),
        grid,
        refine_iters,
    )?;
    let full = sup_norm_estimate(
        |z| Ok((T::one() - z.norm_sqr()).powi(2) * schwarzian(f, z)?.norm()),
        grid,
        refine_iters,
    )?;
    let alpha = f.alpha();
    Ok(SchwarzReport {
        alpha,
        pre_schwarzian_norm: pre,
        schwarzian_norm: full,
        bound_pre_schwarzian: pre_schwarzian_bound(alpha),
        bound_schwarzian: schwarzian_bound(alpha),
        qc_constant: qc_constant(alpha),
    })
}

/// The quantities from the proof of the Schwarzian bound at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProofSample<T> {
    /// `M(α)`
    pub m: T,
    /// `M(0)`
    pub m0: T,
    /// `N = (1-|z|^2)|w| - 2|zw - 1|`
    pub n: T,
}

/// Evaluates
/// `M(α) = ((2+α)|z|^4 - (10+6α)|z|^2 + α)|w|^2 + 8(2+α)Re(zw) - 2(|z|^2 + 2α + 3)`,
/// `M(0)` and `N`, with `w` standing for `φ(z)`.
pub fn proof_inequality_sample<T: Real>(alpha: T, z: Complex<T>, w: Complex<T>) -> ProofSample<T> {
    let m_at = |a: T| {
        let r2 = z.norm_sqr();
        let two = T::lit(2.0);
        ((two + a) * r2 * r2 - (T::lit(10.0) + T::lit(6.0) * a) * r2 + a) * w.norm_sqr()
            + T::lit(8.0) * (two + a) * (z * w).re
            - two * (r2 + two * a + T::lit(3.0))
    };
    let n = (T::one() - z.norm_sqr()) * w.norm() - T::lit(2.0) * (z * w - T::one()).norm();
    ProofSample {
        m: m_at(alpha),
        m0: m_at(T::zero()),
        n,
    }
}
