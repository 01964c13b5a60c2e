use num_complex::Complex;
use rayon::prelude::*;

use crate::error::{invalid, Result};
use crate::Real;

/// Contour and sample count for [`cauchy_coefficients`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoefficientQuadrature<T> {
    pub radius: T,
    pub samples: usize,
}

impl<T: Real> CoefficientQuadrature<T> {
    pub const MIN_SAMPLES: usize = 256;
    pub const SAMPLES_PER_ORDER: usize = 32;

    /// Default contour for coefficients up to `n_max`.
    ///
    /// Rounding error in `c_n` grows like `eps / radius^n` and aliasing like
    /// `radius^(samples - n)`. `radius = max(0.5, e^{-2/n_max})` caps the first
    /// at `e^2 eps`; `samples = max(256, 32 n_max)` pushes the second below `e^{-60}`.
    pub fn for_order(n_max: usize) -> Self {
        let n = T::from_usize_lossy(n_max.max(1));
        let radius = T::lit(0.5).max((-T::lit(2.0) / n).exp());
        let samples = Self::MIN_SAMPLES.max(Self::SAMPLES_PER_ORDER * n_max);
        Self { radius, samples }
    }
}

/// Taylor coefficients `c_0..=c_{n_max}` at the origin by the trapezoidal
/// rule on the circle `|z| = radius`.
///
/// For `f` analytic past the circle, the error in `c_n` is
/// `O(radius^(samples - n))` plus rounding amplified by `radius^-n`.
pub fn cauchy_coefficients<T, F>(f: F, n_max: usize, radius: T, samples: usize) -> Result<Vec<Complex<T>>>
where
    T: Real,
    F: Fn(Complex<T>) -> Result<Complex<T>> + Sync,
{
    if !(radius > T::zero() && radius < T::one()) {
        return Err(invalid!("quadrature radius must lie in (0, 1), got {radius}"));
    }
    if n_max == 0 || samples < 4 * n_max {
        return Err(invalid!(
            "need n_max >= 1 and samples >= 4 * n_max, got n_max = {n_max}, samples = {samples}"
        ));
    }
    let step = T::tau() / T::from_usize_lossy(samples);
    let roots: Vec<Complex<T>> = (0..samples)
        .map(|j| Complex::from_polar(T::one(), step * T::from_usize_lossy(j)))
        .collect();
    let values: Vec<Complex<T>> = roots.par_iter().map(|w| f(*w * radius)).collect::<Result<_>>()?;

    let scale = T::one() / T::from_usize_lossy(samples);
    let coeffs = (0..=n_max)
        .map(|n| {
            let mut acc = Complex::new(T::zero(), T::zero());
            for (j, v) in values.iter().enumerate() {
                // e^{-2πi jn/N} = conj(roots[jn mod N])
                acc += v * roots[(j * n) % samples].conj();
            }
            acc * scale * radius.powi(-(n as i32))
        })
        .collect();
    Ok(coeffs)
}
