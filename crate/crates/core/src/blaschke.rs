//! Finite Blaschke products, their boundary phase, and the boundary roots of
//! `zφ(z) = 1` together with the residues of `φ/(zφ - 1)` there.

use num_complex::Complex;

use crate::complexfn::is_finite;
use crate::error::{domain, invariant, Error, Result};
use crate::Real;

/// `c · Π (z - b_k)/(1 - conj(b_k) z)` with `|b_k| < 1` and `|c| = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct BlaschkeProduct<T> {
    zeros: Vec<Complex<T>>,
    prefactor: Complex<T>,
}

/// Roots `z_k` of `zφ(z) = 1` on the unit circle (ascending angle in
/// `[0, 2π)`) and the matching residues `t_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryRootSet<T> {
    pub roots: Vec<Complex<T>>,
    pub angles: Vec<T>,
    pub residues: Vec<T>,
}

impl<T: Real> BoundaryRootSet<T> {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }
}

impl<T: Real> BlaschkeProduct<T> {
    /// Zeros closer than this to the unit circle are rejected.
    pub fn boundary_margin() -> T {
        T::lit(1e-12)
    }

    pub fn new(zeros: Vec<Complex<T>>, prefactor: Complex<T>) -> Result<Self> {
        let limit = T::one() - Self::boundary_margin();
        for b in &zeros {
            if !is_finite(*b) {
                return Err(invariant!("Blaschke zero {b} is not finite"));
            }
            if b.norm() >= limit {
                return Err(invariant!(
                    "Blaschke zero {b} has modulus {} >= 1 - 1e-12 (too close to the unit circle)",
                    b.norm()
                ));
            }
        }
        if !is_finite(prefactor) || (prefactor.norm() - T::one()).abs() > T::lit(1e-12) {
            return Err(invariant!("prefactor {prefactor} is not unimodular"));
        }
        Ok(Self { zeros, prefactor })
    }

    /// Prefactor 1.
    pub fn from_zeros(zeros: Vec<Complex<T>>) -> Result<Self> {
        Self::new(zeros, Complex::new(T::one(), T::zero()))
    }

    pub fn with_prefactor_angle(zeros: Vec<Complex<T>>, angle: T) -> Result<Self> {
        Self::new(zeros, Complex::from_polar(T::one(), angle))
    }

    pub fn zeros(&self) -> &[Complex<T>] {
        &self.zeros
    }

    pub fn prefactor(&self) -> Complex<T> {
        self.prefactor
    }

    pub fn degree(&self) -> usize {
        self.zeros.len()
    }

    pub fn eval(&self, z: Complex<T>) -> Result<Complex<T>> {
        if !is_finite(z) || z.norm() > T::one() + T::lit(1e-9) {
            return Err(domain!("Blaschke evaluation needs |z| <= 1 + 1e-9, got {z}"));
        }
        let mut acc = self.prefactor;
        for b in &self.zeros {
            let den = Complex::new(T::one(), T::zero()) - b.conj() * z;
            if den.norm() == T::zero() {
                return Err(domain!("{z} is a pole of the Blaschke product"));
            }
            acc *= (z - b) / den;
        }
        Ok(acc)
    }

    /// `φ'/φ = Σ [1/(z - b_k) + conj(b_k)/(1 - conj(b_k) z)]`.
    pub fn log_derivative(&self, z: Complex<T>) -> Result<Complex<T>> {
        let one = Complex::new(T::one(), T::zero());
        let mut acc = Complex::new(T::zero(), T::zero());
        for b in &self.zeros {
            let bc = b.conj();
            acc += (z - b).inv() + bc / (one - bc * z);
        }
        if is_finite(acc) {
            Ok(acc)
        } else {
            Err(domain!("{z} is a zero or pole of the Blaschke product"))
        }
    }

    /// Continuous lift of `arg(e^{iθ} φ(e^{iθ}))`.
    ///
    /// Each factor satisfies `(e^{iθ} - b)/(1 - conj(b) e^{iθ}) = e^{iθ} w / conj(w)`
    /// with `w = 1 - b e^{-iθ}` in the right half-plane, so
    /// `phase(θ) = arg(c) + (m + 1)θ + 2 Σ Arg(1 - b_k e^{-iθ})` is continuous
    /// on the real line and gains exactly `2π(m + 1)` per turn.
    pub fn phase(&self, theta: T) -> T {
        let one = Complex::new(T::one(), T::zero());
        let turn = Complex::from_polar(T::one(), -theta);
        let corr = self
            .zeros
            .iter()
            .map(|b| (one - b * turn).arg())
            .fold(T::zero(), |a, x| a + x);
        self.prefactor.arg() + T::from_usize_lossy(self.degree() + 1) * theta + T::lit(2.0) * corr
    }

    /// `d/dθ phase = 1 + Σ (1 - |b_k|^2)/|e^{iθ} - b_k|^2`, always >= 1.
    pub fn phase_derivative(&self, theta: T) -> T {
        let z = Complex::from_polar(T::one(), theta);
        T::one()
            + self
                .zeros
                .iter()
                .map(|b| (T::one() - b.norm_sqr()) / (z - b).norm_sqr())
                .fold(T::zero(), |a, x| a + x)
    }

    /// The `m + 1` roots of `zφ(z) = 1` on the unit circle with residues
    /// `t_k = 1/(1 + z_k φ'(z_k)/φ(z_k))`.
    ///
    /// Roots are bracketed by bisection on the monotone lifted phase (one
    /// per level `2πj`), then polished by at most five Newton steps.
    pub fn boundary_roots(&self) -> Result<BoundaryRootSet<T>> {
        let tau = T::tau();
        let count = self.degree() + 1;
        let p0 = self.phase(T::zero());
        let first_level = (p0 / tau).ceil();

        let mut angles = Vec::with_capacity(count);
        for j in 0..count {
            let target = (first_level + T::from_usize_lossy(j)) * tau;
            angles.push(self.solve_phase(target)?);
        }

        // a root that bisection places a hair below 2π is the root at angle 0
        let snap = T::lit(1e-13);
        for a in angles.iter_mut() {
            if tau - *a < snap {
                *a = T::zero();
            }
        }
        angles.sort_by(|a, b| a.partial_cmp(b).expect("finite angles"));

        let separation = T::lit(1e-9);
        for k in 0..count {
            let next = if k + 1 < count { angles[k + 1] } else { angles[0] + tau };
            if count > 1 && next - angles[k] <= separation {
                return Err(Error::Convergence(format!(
                    "boundary roots at angles {} and {next} are not separated",
                    angles[k]
                )));
            }
        }

        let one = Complex::new(T::one(), T::zero());
        let mut roots = Vec::with_capacity(count);
        let mut residues = Vec::with_capacity(count);
        for &a in &angles {
            let z = Complex::from_polar(T::one(), a);
            let zk_log = z * self.log_derivative(z)?;
            let t = (one / (one + zk_log)).re;
            if !(t > T::zero() && t < T::one()) && count > 1 {
                return Err(Error::Convergence(format!("residue {t} at angle {a} outside (0, 1)")));
            }
            roots.push(z);
            residues.push(t);
        }
        Ok(BoundaryRootSet {
            roots,
            angles,
            residues,
        })
    }

    fn solve_phase(&self, target: T) -> Result<T> {
        let (mut lo, mut hi) = (T::zero(), T::tau());
        if self.phase(lo) >= target {
            return Ok(lo);
        }
        if self.phase(hi) < target {
            return Err(Error::Convergence(format!("phase level {target} is not bracketed")));
        }
        for _ in 0..200 {
            let mid = (lo + hi) / T::lit(2.0);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.phase(mid) < target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let mut theta = (lo + hi) / T::lit(2.0);
        for _ in 0..5 {
            let step = (self.phase(theta) - target) / self.phase_derivative(theta);
            let next = theta - step;
            if !(next >= T::zero() && next <= T::tau()) || step.abs() <= T::epsilon() {
                break;
            }
            theta = next;
        }
        Ok(theta)
    }

    /// Rotation that removes the prefactor.
    ///
    /// Returns `(θ, ψ)` with `ψ(z) = e^{iθ} φ(e^{iθ} z)` having prefactor 1;
    /// this corresponds to replacing `h` by `e^{-iθ} h(e^{iθ} z)`. The boundary
    /// roots of `ψ` are those of `φ` multiplied by `e^{-iθ}`.
    pub fn normalized(&self) -> (T, Self) {
        let theta = -self.prefactor.arg() / T::from_usize_lossy(self.degree() + 1);
        let rot = Complex::from_polar(T::one(), -theta);
        let zeros = self.zeros.iter().map(|b| b * rot).collect();
        (
            theta,
            Self {
                zeros,
                prefactor: Complex::new(T::one(), T::zero()),
            },
        )
    }
}
