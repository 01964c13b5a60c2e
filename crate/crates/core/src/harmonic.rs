//! Sense-preserving harmonic maps `f = h + conj(g)` whose analytic part is a
//! G(α) member and whose dilatation `ω = g'/h'` is prescribed.

use num_complex::Complex;
use rayon::prelude::*;

use crate::blaschke::BlaschkeProduct;
use crate::complexfn::{check_open_disk, is_finite, DiskGrid};
use crate::error::{domain, invalid, invariant, Error, Result};
use crate::galpha::GAlphaFunction;
use crate::{series, Real};

/// Analytic dilatation `ω`.
#[derive(Debug, Clone, PartialEq)]
pub enum Dilatation<T> {
    Constant(Complex<T>),
    /// `coefficient · z^power`
    Monomial {
        coefficient: Complex<T>,
        power: u32,
    },
    /// Ascending coefficients.
    Polynomial(Vec<Complex<T>>),
    /// `scale · φ(z)`
    BlaschkeScaled {
        product: BlaschkeProduct<T>,
        scale: T,
    },
}

impl<T: Real> Dilatation<T> {
    pub fn eval(&self, z: Complex<T>) -> Result<Complex<T>> {
        match self {
            Self::Constant(c) => Ok(*c),
            Self::Monomial { coefficient, power } => Ok(coefficient * z.powu(*power)),
            Self::Polynomial(p) => Ok(series::eval(p, z)),
            Self::BlaschkeScaled { product, scale } => Ok(product.eval(z)? * *scale),
        }
    }

    /// Taylor coefficients `ω_0..ω_{len-1}`.
    pub fn taylor(&self, len: usize) -> Vec<Complex<T>> {
        let zero = Complex::new(T::zero(), T::zero());
        let mut out = vec![zero; len];
        match self {
            Self::Constant(c) => {
                if len > 0 {
                    out[0] = *c;
                }
            }
            Self::Monomial { coefficient, power } => {
                if let Some(slot) = out.get_mut(*power as usize) {
                    *slot = *coefficient;
                }
            }
            Self::Polynomial(p) => {
                for (slot, c) in out.iter_mut().zip(p) {
                    *slot = *c;
                }
            }
            Self::BlaschkeScaled { product, scale } => {
                if len == 0 {
                    return out;
                }
                let mut acc = vec![zero; len];
                acc[0] = product.prefactor() * *scale;
                for b in product.zeros() {
                    // (z - b)/(1 - conj(b) z) = -b + Σ_{k>=1} conj(b)^{k-1}(1 - |b|^2) z^k
                    let bc = b.conj();
                    let gain = T::one() - b.norm_sqr();
                    let mut factor = Vec::with_capacity(len);
                    factor.push(-b);
                    let mut power = Complex::new(T::one(), T::zero());
                    for _ in 1..len {
                        factor.push(power * gain);
                        power *= bc;
                    }
                    acc = series::mul(&acc, &factor, len);
                }
                out = acc;
            }
        }
        out
    }
}

/// A dilatation checked to be sense-preserving: `sup |ω| <= 1 - 1e-9` on the
/// default grid plus 1024 samples on `|z| = 1 - 1e-4`.
#[derive(Debug, Clone, PartialEq)]
pub struct DilatationSpec<T> {
    kind: Dilatation<T>,
    sup_modulus: T,
}

impl<T: Real> DilatationSpec<T> {
    pub const BOUNDARY_SAMPLES: usize = 1024;

    pub fn new(kind: Dilatation<T>) -> Result<Self> {
        let grid = DiskGrid::default();
        let edge = T::one() - T::lit(1e-4);
        let n = Self::BOUNDARY_SAMPLES;
        let points: Vec<Complex<T>> = grid
            .points()
            .chain((0..n).map(|k| {
                let t = T::tau() * T::from_usize_lossy(k) / T::from_usize_lossy(n);
                Complex::from_polar(edge, t)
            }))
            .collect();
        let sup_modulus = points
            .par_iter()
            .map(|z| kind.eval(*z).map(|w| w.norm()))
            .collect::<Result<Vec<T>>>()?
            .into_iter()
            .fold(T::zero(), T::max);
        if !sup_modulus.is_finite() || sup_modulus > T::one() - T::lit(1e-9) {
            return Err(invariant!(
                "dilatation is not sense-preserving: sup |omega| = {sup_modulus} > 1 - 1e-9"
            ));
        }
        Ok(Self { kind, sup_modulus })
    }

    pub fn zero() -> Self {
        Self {
            kind: Dilatation::Constant(Complex::new(T::zero(), T::zero())),
            sup_modulus: T::zero(),
        }
    }

    pub fn kind(&self) -> &Dilatation<T> {
        &self.kind
    }

    pub fn sup_modulus(&self) -> T {
        self.sup_modulus
    }

    pub fn eval(&self, z: Complex<T>) -> Result<Complex<T>> {
        self.kind.eval(z)
    }
}

/// Outcome of the dilatation criterion `|ω(z)| <= 1 - α|z|(1+|z|)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Eq17Outcome<T> {
    pub holds: bool,
    /// `min (1 - α|z|(1+|z|) - |ω(z)|)` over the grid.
    pub worst_margin: T,
    pub worst_at: Complex<T>,
}

/// `f = h + conj(g)` with `g' = ω h'` and `g(0) = 0`, carried as truncated
/// Taylor series for evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct HarmonicMap<T> {
    analytic: GAlphaFunction<T>,
    dilatation: DilatationSpec<T>,
    series_terms: usize,
    h_coeffs: Vec<Complex<T>>,
    g_coeffs: Vec<Complex<T>>,
}

impl<T: Real> HarmonicMap<T> {
    pub const DEFAULT_SERIES_TERMS: usize = 512;
    pub const CURVE_SAMPLES: usize = 4096;

    pub fn new(analytic: GAlphaFunction<T>, dilatation: DilatationSpec<T>, series_terms: usize) -> Result<Self> {
        if series_terms < 2 {
            return Err(invalid!("series_terms must be at least 2, got {series_terms}"));
        }
        let hp = analytic.hprime_series(series_terms);
        let omega = dilatation.kind.taylor(series_terms);
        let zero = Complex::new(T::zero(), T::zero());
        let mut h_coeffs = vec![zero; series_terms + 1];
        let mut g_coeffs = vec![zero; series_terms + 1];
        for n in 1..=series_terms {
            let nn = T::from_usize_lossy(n);
            h_coeffs[n] = hp[n - 1] / nn;
            // g_n = Σ_j ω_j c_{n-1-j} / n, each term divided separately so that
            // constant ω gives g_n = ω_0 · h_n bit for bit
            let mut acc = zero;
            for j in 0..n {
                acc += omega[j] * (hp[n - 1 - j] / nn);
            }
            g_coeffs[n] = acc;
        }
        let map = Self {
            analytic,
            dilatation,
            series_terms,
            h_coeffs,
            g_coeffs,
        };
        let j0 = map.jacobian(zero)?;
        if j0.is_nan() || j0 <= T::zero() {
            return Err(invariant!("Jacobian at the origin is {j0}, must be positive"));
        }
        Ok(map)
    }

    pub fn analytic_part(&self) -> &GAlphaFunction<T> {
        &self.analytic
    }

    pub fn dilatation(&self) -> &DilatationSpec<T> {
        &self.dilatation
    }

    pub fn series_terms(&self) -> usize {
        self.series_terms
    }

    /// `b_0..=b_N` of `g`, `b_0 = 0`.
    pub fn g_coefficients(&self) -> &[Complex<T>] {
        &self.g_coeffs
    }

    /// `a_0..=a_N` of `h`, `a_0 = 0`.
    pub fn h_coefficients(&self) -> &[Complex<T>] {
        &self.h_coeffs
    }

    /// `J_f = |h'|^2 (1 - |ω|^2)`.
    pub fn jacobian(&self, z: Complex<T>) -> Result<T> {
        check_open_disk(z, "jacobian")?;
        let hp = self.analytic.hprime(z)?;
        let w = self.dilatation.eval(z)?;
        Ok(hp.norm_sqr() * (T::one() - w.norm_sqr()))
    }

    /// `J_f = |h'|^2 - |g'|^2` with `g' = ω h'`.
    pub fn jacobian_direct(&self, z: Complex<T>) -> Result<T> {
        check_open_disk(z, "jacobian")?;
        let hp = self.analytic.hprime(z)?;
        let gp = self.dilatation.eval(z)? * hp;
        Ok(hp.norm_sqr() - gp.norm_sqr())
    }

    pub fn jacobian_min(&self, grid: &DiskGrid<T>) -> Result<T> {
        Ok((0..grid.len())
            .into_par_iter()
            .map(|k| self.jacobian(grid.point(k)))
            .collect::<Result<Vec<T>>>()?
            .into_iter()
            .fold(T::infinity(), T::min))
    }

    /// `g'/h'` from the truncated series; reproduces `ω` where the series converge.
    pub fn series_dilatation(&self, z: Complex<T>) -> Complex<T> {
        series::eval(&series::derivative(&self.g_coeffs), z) / series::eval(&series::derivative(&self.h_coeffs), z)
    }

    /// `h(z) + conj(g(z))` from the truncated series.
    pub fn eval(&self, z: Complex<T>) -> Result<Complex<T>> {
        if !is_finite(z) || z.norm() > T::one() - T::lit(1e-6) {
            return Err(domain!("harmonic map evaluation needs |z| <= 1 - 1e-6, got {z}"));
        }
        Ok(series::eval(&self.h_coeffs, z) + series::eval(&self.g_coeffs, z).conj())
    }

    /// Checks `|ω(z)| <= 1 - α|z|(1+|z|)` on the grid.
    pub fn criterion_eq17(&self, grid: &DiskGrid<T>) -> Result<Eq17Outcome<T>> {
        let alpha = self.analytic.alpha();
        let margins: Vec<T> = (0..grid.len())
            .into_par_iter()
            .map(|k| {
                let z = grid.point(k);
                let r = z.norm();
                Ok(T::one() - alpha * r * (T::one() + r) - self.dilatation.eval(z)?.norm())
            })
            .collect::<Result<_>>()?;
        let mut k_worst = 0;
        for (k, m) in margins.iter().enumerate() {
            if *m < margins[k_worst] {
                k_worst = k;
            }
        }
        let worst_margin = margins[k_worst];
        Ok(Eq17Outcome {
            holds: worst_margin >= T::zero(),
            worst_margin,
            worst_at: grid.point(k_worst),
        })
    }

    /// Winding-number test of injectivity on `|z| <= radius`.
    pub fn winding_injectivity_probe(&self, radius: T, targets: usize) -> Result<bool> {
        winding_probe(|z| self.eval(z), radius, targets, Self::CURVE_SAMPLES)
    }
}

/// Winding number of the closed polygon `curve` about `w`, from summed
/// argument increments.
pub fn winding_number<T: Real>(curve: &[Complex<T>], w: Complex<T>) -> T {
    let n = curve.len();
    let mut total = T::zero();
    for k in 0..n {
        let a = curve[k] - w;
        let b = curve[(k + 1) % n] - w;
        total += (b / a).arg();
    }
    total / T::tau()
}

/// Samples `f` on `|z| = radius` and checks that the image curve winds
/// exactly once around `f(ρ e^{iφ})` for `targets` interior points with
/// `ρ < 0.8 radius`.
///
/// Fails with [`Error::Inconclusive`] if a target lies within `1e-6` of a
/// curve sample.
pub fn winding_probe<T, F>(f: F, radius: T, targets: usize, samples: usize) -> Result<bool>
where
    T: Real,
    F: Fn(Complex<T>) -> Result<Complex<T>> + Sync,
{
    if !(radius > T::zero() && radius < T::one()) {
        return Err(invalid!("probe radius must lie in (0, 1), got {radius}"));
    }
    if targets == 0 || samples < 8 {
        return Err(invalid!("probe needs targets >= 1 and samples >= 8"));
    }
    let curve: Vec<Complex<T>> = (0..samples)
        .into_par_iter()
        .map(|k| {
            let t = T::tau() * T::from_usize_lossy(k) / T::from_usize_lossy(samples);
            f(Complex::from_polar(radius, t))
        })
        .collect::<Result<_>>()?;

    // golden-angle spiral of targets strictly inside 0.8 * radius
    let golden = T::PI() * (T::lit(3.0) - T::lit(5.0).sqrt());
    let windings: Vec<Result<bool>> = (0..targets)
        .into_par_iter()
        .map(|j| {
            let jj = T::from_usize_lossy(j);
            let rho = T::lit(0.8) * radius * (jj + T::lit(0.5)) / T::from_usize_lossy(targets);
            let w = f(Complex::from_polar(rho, golden * jj))?;
            let gap = curve.iter().map(|c| (c - w).norm()).fold(T::infinity(), T::min);
            if gap < T::lit(1e-6) {
                return Err(Error::Inconclusive(format!(
                    "target {w} lies within 1e-6 of the image curve"
                )));
            }
            Ok((winding_number(&curve, w) - T::one()).abs() < T::lit(0.5))
        })
        .collect();
    let mut all = true;
    for w in windings {
        all &= w?;
    }
    Ok(all)
}
