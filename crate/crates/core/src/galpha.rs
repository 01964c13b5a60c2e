//! Members of G(α) generated by finitely many atoms:
//! `h'(z) = Π (1 - ζ_k z)^{α t_k}` with `ζ_k = e^{iθ_k}`, `t_k > 0`, `Σ t_k = 1`.

use num_complex::Complex;
use rayon::prelude::*;

use crate::blaschke::BlaschkeProduct;
use crate::complexfn::{cauchy_coefficients, check_open_disk, principal_power, CoefficientQuadrature, DiskGrid};
use crate::error::{domain, invalid, invariant, Result};
use crate::{poly, series, Real};

/// Point mass `weight` at `e^{i angle}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Atom<T> {
    pub angle: T,
    pub weight: T,
}

impl<T: Real> Atom<T> {
    pub fn new(angle: T, weight: T) -> Self {
        Self { angle, weight }
    }

    pub fn zeta(&self) -> Complex<T> {
        Complex::from_polar(T::one(), self.angle)
    }
}

/// Probability measure on the unit circle with finitely many atoms, kept in
/// ascending angle order in `[0, 2π)`.
#[derive(Debug, Clone, PartialEq)]
pub struct AtomicMeasure<T> {
    atoms: Vec<Atom<T>>,
}

impl<T: Real> AtomicMeasure<T> {
    pub fn weight_tolerance() -> T {
        T::lit(1e-12)
    }

    pub fn min_separation() -> T {
        T::lit(1e-9)
    }

    /// Canonicalises angles into `[0, 2π)`, sorts them, and renormalises
    /// weights whose sum is off by more than rounding but at most `1e-12`.
    pub fn new(atoms: Vec<Atom<T>>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(invariant!("measure needs at least one atom"));
        }
        let tau = T::tau();
        let mut atoms: Vec<Atom<T>> = atoms
            .into_iter()
            .map(|a| Atom {
                angle: a.angle.wrap_angle(),
                weight: a.weight,
            })
            .collect();
        for a in &atoms {
            if !a.angle.is_finite() || !a.weight.is_finite() {
                return Err(invariant!("atom ({}, {}) is not finite", a.angle, a.weight));
            }
            if a.weight <= T::zero() {
                return Err(invariant!("atom weights must be positive, got {}", a.weight));
            }
        }

        let sum = atoms.iter().fold(T::zero(), |s, a| s + a.weight);
        let deviation = (sum - T::one()).abs();
        if deviation > Self::weight_tolerance() {
            return Err(invariant!("weights must sum to 1 (sum is {sum})"));
        }
        // only rescale beyond summation rounding, so reloading is idempotent
        let rounding = T::epsilon() * T::from_usize_lossy(4 * atoms.len());
        if deviation > rounding {
            for a in atoms.iter_mut() {
                a.weight /= sum;
            }
        }
        if let Some(a) = atoms.iter().find(|a| a.weight > T::one()) {
            return Err(invariant!("atom weight {} exceeds 1", a.weight));
        }

        atoms.sort_by(|a, b| a.angle.partial_cmp(&b.angle).expect("finite angles"));
        let n = atoms.len();
        for k in 0..n {
            let next = if k + 1 < n {
                atoms[k + 1].angle
            } else {
                atoms[0].angle + tau
            };
            if n > 1 && next - atoms[k].angle <= Self::min_separation() {
                return Err(invariant!(
                    "atom angles must be distinct (separation > 1e-9), got {} and {}",
                    atoms[k].angle,
                    next
                ));
            }
        }
        Ok(Self { atoms })
    }

    pub fn single(angle: T) -> Self {
        Self::new(vec![Atom::new(angle, T::one())]).expect("single atom is well formed")
    }

    /// Equal weights at the `k`-th roots of unity; with exponent `α` this is
    /// `h' = (1 - z^k)^{α/k}`, the equality case of the coefficient bound at
    /// index `k + 1`.
    pub fn roots_of_unity(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(invalid!("roots_of_unity needs k >= 1"));
        }
        let w = T::one() / T::from_usize_lossy(k);
        let atoms = (0..k)
            .map(|j| Atom::new(T::tau() * T::from_usize_lossy(j) * w, w))
            .collect();
        Self::new(atoms)
    }

    pub fn atoms(&self) -> &[Atom<T>] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// Largest difference in angle (on the circle) or weight against `other`,
    /// pairing atoms in order. Infinite when the atom counts differ.
    pub fn max_parameter_error(&self, other: &Self) -> T {
        if self.len() != other.len() {
            return T::infinity();
        }
        let tau = T::tau();
        self.atoms
            .iter()
            .zip(&other.atoms)
            .map(|(a, b)| {
                let d = (a.angle - b.angle).abs();
                d.min(tau - d).max((a.weight - b.weight).abs())
            })
            .fold(T::zero(), T::max)
    }
}

/// `h ∈ G(α)` with `h'` generated by an atomic measure.
#[derive(Debug, Clone, PartialEq)]
pub struct GAlphaFunction<T> {
    alpha: T,
    measure: AtomicMeasure<T>,
}

impl<T: Real> GAlphaFunction<T> {
    pub fn new(alpha: T, measure: AtomicMeasure<T>) -> Result<Self> {
        if !(alpha > T::zero() && alpha <= T::one()) {
            return Err(invariant!("alpha must lie in (0, 1], got {alpha}"));
        }
        Ok(Self { alpha, measure })
    }

    /// `h' = (1 - e^{iθ} z)^α`, the extremal member.
    pub fn extremal(alpha: T, angle: T) -> Result<Self> {
        Self::new(alpha, AtomicMeasure::single(angle))
    }

    /// Residues from nearly coincident boundary roots lose digits to
    /// cancellation in `1 - |b|^2`; their sum is projected back to 1 when it
    /// is within this distance.
    pub fn residue_sum_tolerance() -> T {
        T::lit(1e-8)
    }

    /// Member whose `φ` is the given Blaschke product: atoms sit at
    /// `ζ_k = conj(z_k)` for the boundary roots `z_k` of `zφ(z) = 1`, with
    /// the residues as weights.
    pub fn from_blaschke(alpha: T, phi: &BlaschkeProduct<T>) -> Result<Self> {
        let roots = phi.boundary_roots()?;
        let sum = roots.residues.iter().fold(T::zero(), |s, t| s + *t);
        if (sum - T::one()).abs() > Self::residue_sum_tolerance() {
            return Err(invariant!("boundary residues must sum to 1 (sum is {sum})"));
        }
        let atoms = roots
            .angles
            .iter()
            .zip(&roots.residues)
            .map(|(a, t)| Atom::new(-*a, *t / sum))
            .collect();
        Self::new(alpha, AtomicMeasure::new(atoms)?)
    }

    pub fn alpha(&self) -> T {
        self.alpha
    }

    pub fn measure(&self) -> &AtomicMeasure<T> {
        &self.measure
    }

    pub fn is_extremal(&self) -> bool {
        self.measure.len() == 1
    }

    fn terms(&self) -> impl Iterator<Item = (Complex<T>, T)> + '_ {
        self.measure.atoms.iter().map(|a| (a.zeta(), a.weight))
    }

    pub fn hprime(&self, z: Complex<T>) -> Result<Complex<T>> {
        check_open_disk(z, "hprime")?;
        let one = Complex::new(T::one(), T::zero());
        self.terms().try_fold(one, |acc, (zeta, t)| {
            Ok(acc * principal_power(one - zeta * z, self.alpha * t)?)
        })
    }

    /// `h''/h' = -α Σ t_k ζ_k/(1 - ζ_k z)`.
    pub fn log_derivative_hpp(&self, z: Complex<T>) -> Result<Complex<T>> {
        check_open_disk(z, "log_derivative_hpp")?;
        Ok(self.kernel_mean(z) * (-self.alpha))
    }

    /// `Σ t_k ζ_k/(1 - ζ_k z)`.
    fn kernel_mean(&self, z: Complex<T>) -> Complex<T> {
        let one = Complex::new(T::one(), T::zero());
        self.terms()
            .map(|(zeta, t)| zeta * t / (one - zeta * z))
            .fold(Complex::new(T::zero(), T::zero()), |a, x| a + x)
    }

    /// Taylor coefficients `c_0..c_{len-1}` of `h'`, by exponentiating
    /// `log h' = -α Σ_n (Σ_k t_k ζ_k^n) z^n / n`.
    pub fn hprime_series(&self, len: usize) -> Vec<Complex<T>> {
        let mut log = vec![Complex::new(T::zero(), T::zero()); len];
        for (zeta, t) in self.terms() {
            let mut power = Complex::new(T::one(), T::zero());
            for (n, slot) in log.iter_mut().enumerate().skip(1) {
                power *= zeta;
                *slot -= power * (self.alpha * t / T::from_usize_lossy(n));
            }
        }
        series::exp(&log, len)
    }

    /// Coefficients `a_0..=a_{n_terms}` of `h` (with `a_0 = 0`).
    pub fn h_series(&self, n_terms: usize) -> Vec<Complex<T>> {
        let hp = self.hprime_series(n_terms);
        std::iter::once(Complex::new(T::zero(), T::zero()))
            .chain(hp.iter().enumerate().map(|(k, c)| c / T::from_usize_lossy(k + 1)))
            .collect()
    }

    /// Partial sum of `h` through degree `n_terms`; see [`Self::h_tail_bound`].
    pub fn h_eval(&self, z: Complex<T>, n_terms: usize) -> Result<Complex<T>> {
        if n_terms == 0 {
            return Err(invalid!("h_eval needs n_terms >= 1"));
        }
        if !crate::complexfn::is_finite(z) || z.norm() > T::one() - T::lit(1e-6) {
            return Err(domain!("h_eval needs |z| <= 1 - 1e-6, got {z}"));
        }
        Ok(series::eval(&self.h_series(n_terms), z))
    }

    /// Bound on `|h(z) - partial sum|` for `|z| = r` from `|a_n| <= α/(n(n-1))`:
    /// `α r^{N+1}/(N(N+1)(1-r))`, capped by `α/N`.
    pub fn h_tail_bound(&self, r: T, n_terms: usize) -> T {
        let n = T::from_usize_lossy(n_terms.max(1));
        let geometric = self.alpha * r.powf(n + T::one()) / (n * (n + T::one()) * (T::one() - r));
        geometric.min(self.alpha / n)
    }

    /// `a_1..=a_{n_max}` from Cauchy quadrature of `h'` on the default contour.
    pub fn coefficients(&self, n_max: usize) -> Result<Vec<Complex<T>>> {
        let q = CoefficientQuadrature::for_order(n_max.saturating_sub(1).max(1));
        self.coefficients_with(n_max, q)
    }

    pub fn coefficients_with(&self, n_max: usize, quad: CoefficientQuadrature<T>) -> Result<Vec<Complex<T>>> {
        if n_max < 2 {
            return Err(invalid!("coefficients needs n_max >= 2, got {n_max}"));
        }
        let c = cauchy_coefficients(|z| self.hprime(z), n_max - 1, quad.radius, quad.samples)?;
        Ok(c.iter()
            .enumerate()
            .map(|(k, ck)| ck / T::from_usize_lossy(k + 1))
            .collect())
    }

    /// `1/2 - max Re(z h''/(α h'))` over the grid; positive certifies the
    /// sampled defining inequality.
    pub fn membership_margin(&self, grid: &DiskGrid<T>) -> Result<T> {
        let half = T::lit(0.5);
        let worst = (0..grid.len())
            .into_par_iter()
            .map(|k| {
                let z = grid.point(k);
                Ok((z * self.log_derivative_hpp(z)?).re / self.alpha)
            })
            .collect::<Result<Vec<T>>>()?
            .into_iter()
            .fold(T::neg_infinity(), T::max);
        Ok(half - worst)
    }

    /// `α/2 - (1-|z|^2)|P|^2/(2α) - Re(zP)` with `P = h''/h'`.
    ///
    /// Evaluated through the identity
    /// `residual = (α/2)(1-|z|^2) Σ t_k |v_k - v̄|^2`, `v_k = ζ_k/(1-ζ_k z)`,
    /// `v̄ = Σ t_k v_k`, which avoids the cancellation of the direct form near
    /// the circle and is exactly zero for a single atom.
    pub fn inequality_3e_residual(&self, z: Complex<T>) -> Result<T> {
        check_open_disk(z, "inequality_3e_residual")?;
        let one = Complex::new(T::one(), T::zero());
        let mean = self.kernel_mean(z);
        let spread = self
            .terms()
            .map(|(zeta, t)| (zeta / (one - zeta * z) - mean).norm_sqr() * t)
            .fold(T::zero(), |a, x| a + x);
        Ok(self.alpha / T::lit(2.0) * (T::one() - z.norm_sqr()) * spread)
    }

    /// The direct form of [`Self::inequality_3e_residual`].
    pub fn inequality_3e_residual_direct(&self, z: Complex<T>) -> Result<T> {
        let p = self.log_derivative_hpp(z)?;
        let a = self.alpha;
        Ok(a / T::lit(2.0) - (T::one() - z.norm_sqr()) * p.norm_sqr() / (T::lit(2.0) * a) - (z * p).re)
    }

    /// `ω(z) = 1 - h'(z)^{1/α}`, the Schwarz function with `h' = (1 - ω)^α`.
    pub fn subordination_witness(&self, z: Complex<T>) -> Result<Complex<T>> {
        let hp = self.hprime(z)?;
        if hp.re <= T::zero() {
            return Err(domain!("h'({z}) = {hp} left the right half-plane"));
        }
        Ok(Complex::new(T::one(), T::zero()) - principal_power(hp, T::one() / self.alpha)?)
    }

    /// The self-map `φ` with `h''/h' = αφ/(zφ - 1)`.
    ///
    /// Away from the origin `zφ = S/(S - 1)` with `S = Σ t_k z/(z - conj ζ_k)`,
    /// evaluated as `φ = R/(zR - 1)`, `R = S/z`; at the origin
    /// `φ(0) = Σ t_k ζ_k`.
    pub fn to_blaschke(&self, z: Complex<T>) -> Result<Complex<T>> {
        check_open_disk(z, "to_blaschke")?;
        if z == Complex::new(T::zero(), T::zero()) {
            return Ok(self.terms().map(|(zeta, t)| zeta * t).sum());
        }
        let r: Complex<T> = self.terms().map(|(zeta, t)| (z - zeta.conj()).inv() * t).sum();
        Ok(r / (z * r - T::one()))
    }

    /// The finite Blaschke product `φ` as zeros and prefactor.
    ///
    /// With `z_k = conj ζ_k`, `D = Π (z - z_k)` and `N = Σ t_k Π_{j≠k}(z - z_j)`,
    /// `φ = N/(zN - D)`; `N` is monic of degree `m` and its roots are the
    /// zeros of `φ`, and the prefactor is `-1/D(0)`.
    pub fn blaschke_product(&self) -> Result<BlaschkeProduct<T>> {
        let nodes: Vec<Complex<T>> = self.terms().map(|(zeta, _)| zeta.conj()).collect();
        let m = nodes.len() - 1;
        let mut numerator = vec![Complex::new(T::zero(), T::zero()); m + 1];
        for (k, (_, t)) in self.terms().enumerate() {
            let others: Vec<Complex<T>> = nodes
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != k)
                .map(|(_, z)| *z)
                .collect();
            for (slot, c) in numerator.iter_mut().zip(poly::from_roots(&others)) {
                *slot += c * t;
            }
        }
        let zeros = poly::roots(&numerator)?;
        let d0 = nodes
            .iter()
            .fold(Complex::new(T::one(), T::zero()), |acc, z| acc * (-z));
        let prefactor = -d0.inv();
        let prefactor = prefactor / prefactor.norm();
        BlaschkeProduct::new(zeros, prefactor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::{PI, TAU};

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    fn quarter_three_quarters(alpha: f64) -> GAlphaFunction<f64> {
        let m = AtomicMeasure::new(vec![Atom::new(0.0, 0.25), Atom::new(PI, 0.75)]).unwrap();
        GAlphaFunction::new(alpha, m).unwrap()
    }

    fn symmetric(alpha: f64) -> GAlphaFunction<f64> {
        GAlphaFunction::new(alpha, AtomicMeasure::roots_of_unity(2).unwrap()).unwrap()
    }

    /// Gauss-Legendre (16 nodes) on the segment [0, z], for h = ∫ h'.
    fn radial_integral(f: &GAlphaFunction<f64>, z: Complex<f64>) -> Complex<f64> {
        // positive nodes and weights of the 16-point rule on [-1, 1]
        const X: [f64; 8] = [
            0.0950125098376375,
            0.2816035507792589,
            0.4580167776572274,
            0.6178762444026438,
            0.755404408355003,
            0.8656312023878318,
            0.9445750230732326,
            0.9894009349916499,
        ];
        const W: [f64; 8] = [
            0.1894506104550686,
            0.1826034150449236,
            0.1691565193950026,
            0.1495959888165768,
            0.124628971255534,
            0.0951585116824926,
            0.0622535239386477,
            0.027152459411754,
        ];
        let mut acc = c(0.0, 0.0);
        for (x, w) in X.iter().zip(W) {
            for s in [-x, *x] {
                let u = 0.5 * (s + 1.0);
                acc += f.hprime(z * u).unwrap() * (0.5 * w);
            }
        }
        acc * z
    }

    #[test]
    fn measure_validation() {
        assert!(AtomicMeasure::new(vec![Atom::new(0.0, 0.5), Atom::new(1.0, 0.4)])
            .unwrap_err()
            .to_string()
            .contains("weights must sum to 1"));
        assert!(AtomicMeasure::new(vec![Atom::new(0.0, 0.5), Atom::new(2.0 * PI, 0.5)]).is_err());
        assert!(AtomicMeasure::new(vec![Atom::new(0.0, 1.5), Atom::new(1.0, -0.5)]).is_err());
        assert!(AtomicMeasure::<f64>::new(vec![]).is_err());
        let m = AtomicMeasure::new(vec![Atom::new(-PI / 2.0, 0.5), Atom::new(0.1, 0.5 + 5e-13)]).unwrap();
        assert!((m.atoms()[0].angle - 0.1).abs() < 1e-15);
        assert!((m.atoms()[1].angle - 1.5 * PI).abs() < 1e-15);
        let total: f64 = m.atoms().iter().map(|a| a.weight).sum();
        assert!((total - 1.0).abs() < 1e-15);
        assert!(GAlphaFunction::new(0.0, AtomicMeasure::single(0.0)).is_err());
        assert!(GAlphaFunction::new(1.2, AtomicMeasure::single(0.0)).is_err());
    }

    #[test]
    fn renormalisation_is_idempotent() {
        let m = AtomicMeasure::new(vec![
            Atom::new(0.3, 0.1),
            Atom::new(1.3, 0.2),
            Atom::new(2.3, 0.7 + 3e-13),
        ])
        .unwrap();
        let again = AtomicMeasure::new(m.atoms().to_vec()).unwrap();
        assert_eq!(m, again);
    }

    #[test]
    fn hprime_examples() {
        let f = GAlphaFunction::extremal(1.0, 0.0).unwrap();
        assert!((f.hprime(c(0.3, 0.0)).unwrap() - c(0.7, 0.0)).norm() < 1e-15);
        let g = GAlphaFunction::extremal(0.5, 0.0).unwrap();
        assert_eq!(g.hprime(c(0.0, 0.0)).unwrap(), c(1.0, 0.0));
        let want = 0.8f64.powf(0.25) * 1.2f64.powf(0.75);
        assert!((quarter_three_quarters(1.0).hprime(c(0.2, 0.0)).unwrap() - c(want, 0.0)).norm() < 1e-15);
        // 30-digit value of 0.8^0.25 * 1.2^0.75
        assert!((want - 1.084_322_404_331_813_8).abs() < 1e-15);
        assert!(f.hprime(c(1.0, 0.0)).is_err());
    }

    #[test]
    fn log_derivative_examples() {
        let f = GAlphaFunction::extremal(1.0, 0.0).unwrap();
        assert!((f.log_derivative_hpp(c(0.0, 0.0)).unwrap() - c(-1.0, 0.0)).norm() < 1e-15);
        assert!((f.log_derivative_hpp(c(0.5, 0.0)).unwrap() - c(-2.0, 0.0)).norm() < 1e-15);
        assert!(symmetric(1.0).log_derivative_hpp(c(0.0, 0.0)).unwrap().norm() < 1e-15);
        assert!(f.log_derivative_hpp(c(0.0, -1.0)).is_err());
    }

    #[test]
    fn h_eval_examples() {
        let f = GAlphaFunction::extremal(1.0, 0.0).unwrap();
        assert!((f.h_eval(c(0.5, 0.0), 2).unwrap() - c(0.375, 0.0)).norm() < 1e-15);
        assert!((f.h_eval(c(0.5, 0.0), 40).unwrap() - c(0.375, 0.0)).norm() < 1e-15);
        assert_eq!(
            quarter_three_quarters(0.7).h_eval(c(0.0, 0.0), 10).unwrap(),
            c(0.0, 0.0)
        );
        let g = quarter_three_quarters(1.0);
        let z = c(0.3, 0.0);
        let oracle = radial_integral(&g, z);
        assert!((g.h_eval(z, 60).unwrap() - oracle).norm() < 1e-9);
        assert!(g.h_eval(c(0.9999999, 0.0), 10).is_err());
    }

    #[test]
    fn h_eval_matches_path_integral_off_axis() {
        let m = AtomicMeasure::new(vec![Atom::new(0.4, 0.3), Atom::new(2.0, 0.5), Atom::new(4.4, 0.2)]).unwrap();
        let f = GAlphaFunction::new(0.6, m).unwrap();
        for z in [c(0.2, 0.4), c(-0.5, 0.1), c(0.05, -0.6)] {
            let n = 200;
            let approx = f.h_eval(z, n).unwrap();
            assert!((approx - radial_integral(&f, z)).norm() < 1e-10);
            assert!(f.h_tail_bound(z.norm(), n) < 1e-12);
        }
    }

    #[test]
    fn coefficient_examples() {
        let f = GAlphaFunction::extremal(1.0, 0.0).unwrap();
        let a = f.coefficients(5).unwrap();
        assert!((a[0] - c(1.0, 0.0)).norm() < 1e-12);
        assert!((a[1] - c(-0.5, 0.0)).norm() < 1e-12);
        assert!(a[2..].iter().all(|x| x.norm() < 1e-12));
        // h' = (1 - z^2)^{1/2}: a_3 = -1/6
        let b = symmetric(1.0).coefficients(4).unwrap();
        assert!((b[2] - c(-1.0 / 6.0, 0.0)).norm() < 1e-12);
        assert!(b[1].norm() < 1e-12);
        assert!(f.coefficients(1).is_err());
    }

    #[test]
    fn quadrature_and_series_routes_agree() {
        let m = AtomicMeasure::new(vec![Atom::new(0.4, 0.3), Atom::new(2.0, 0.5), Atom::new(4.4, 0.2)]).unwrap();
        let f = GAlphaFunction::new(0.8, m).unwrap();
        let quad = f.coefficients(40).unwrap();
        let exact = f.h_series(40);
        for n in 1..=40 {
            assert!((quad[n - 1] - exact[n]).norm() < 1e-13, "n = {n}");
        }
    }

    #[test]
    fn membership_examples() {
        let grid = DiskGrid::default();
        for alpha in [0.1, 0.5, 1.0] {
            let f = GAlphaFunction::extremal(alpha, 1.0).unwrap();
            assert!(f.membership_margin(&grid).unwrap() > 0.0);
        }
        let only_origin = DiskGrid::new(vec![0.0], 8, 0.5).unwrap();
        let margin = quarter_three_quarters(0.4).membership_margin(&only_origin).unwrap();
        assert_eq!(margin, 0.5);
    }

    #[test]
    fn inequality_3e_examples() {
        let f = GAlphaFunction::extremal(0.7, 0.0).unwrap();
        for r in [0.0, 0.3, 0.9, 0.9999] {
            assert!(f.inequality_3e_residual(c(r, 0.0)).unwrap().abs() < 1e-12);
        }
        assert!((symmetric(0.6).inequality_3e_residual(c(0.0, 0.0)).unwrap() - 0.3).abs() < 1e-15);
        let g = quarter_three_quarters(0.9);
        let p0 = g.log_derivative_hpp(c(0.0, 0.0)).unwrap();
        let want = 0.45 - p0.norm_sqr() / 1.8;
        assert!((g.inequality_3e_residual(c(0.0, 0.0)).unwrap() - want).abs() < 1e-15);
    }

    #[test]
    fn subordination_examples() {
        let f = GAlphaFunction::extremal(0.3, 0.0).unwrap();
        let z = c(0.4, -0.2);
        assert!((f.subordination_witness(z).unwrap() - z).norm() < 1e-14);
        assert!(
            quarter_three_quarters(0.5)
                .subordination_witness(c(0.0, 0.0))
                .unwrap()
                .norm()
                < 1e-15
        );
        // h' = (1 - z^2)^{1/2}, so ω = 1 - (1 - z^2)^{1/2} = z^2/2 + O(z^4)
        let s = symmetric(1.0);
        for k in 0..100 {
            let z = Complex::from_polar(0.009 * k as f64, 0.7 * k as f64);
            let want = c(1.0, 0.0) - (c(1.0, 0.0) - z * z).sqrt();
            assert!((s.subordination_witness(z).unwrap() - want).norm() < 1e-14);
        }
        // squaring h' recovers 1 - z^2
        let m = AtomicMeasure::roots_of_unity(2).unwrap();
        let pts = [c(0.3, 0.1), c(-0.5, 0.6)];
        for z in pts {
            let hp = GAlphaFunction::new(1.0, m.clone()).unwrap().hprime(z).unwrap();
            assert!((hp * hp - (c(1.0, 0.0) - z * z)).norm() < 1e-14);
        }
    }

    #[test]
    fn to_blaschke_examples() {
        assert!(symmetric(1.0).to_blaschke(c(0.0, 0.0)).unwrap().norm() < 1e-15);
        let f = GAlphaFunction::extremal(1.0, 0.0).unwrap();
        for z in [c(0.0, 0.0), c(0.3, 0.2), c(-0.8, 0.1)] {
            assert!((f.to_blaschke(z).unwrap() - c(1.0, 0.0)).norm() < 1e-14);
        }
        let phi = BlaschkeProduct::from_zeros(vec![c(0.5, 0.0)]).unwrap();
        let g = quarter_three_quarters(1.0);
        for k in 0..100 {
            let z = Complex::from_polar(0.009 * k as f64, 1.3 * k as f64);
            assert!((g.to_blaschke(z).unwrap() - phi.eval(z).unwrap()).norm() < 1e-9);
        }
        // origin value agrees with the limit from nearby points
        let near = g.to_blaschke(c(1e-9, 0.0)).unwrap();
        assert!((near - g.to_blaschke(c(0.0, 0.0)).unwrap()).norm() < 1e-8);
    }

    #[test]
    fn blaschke_fit_of_worked_example() {
        let phi = quarter_three_quarters(1.0).blaschke_product().unwrap();
        assert_eq!(phi.degree(), 1);
        assert!((phi.zeros()[0] - c(0.5, 0.0)).norm() < 1e-14);
        assert!((phi.prefactor() - c(1.0, 0.0)).norm() < 1e-14);
        // a single atom at ζ gives the constant φ ≡ ζ
        let single = GAlphaFunction::extremal(1.0, 2.0).unwrap().blaschke_product().unwrap();
        assert_eq!(single.degree(), 0);
        assert!((single.prefactor() - Complex::from_polar(1.0, 2.0)).norm() < 1e-14);
    }

    #[test]
    fn from_blaschke_worked_example() {
        let phi = BlaschkeProduct::from_zeros(vec![c(0.5, 0.0)]).unwrap();
        let f = GAlphaFunction::from_blaschke(0.5, &phi).unwrap();
        let atoms = f.measure().atoms();
        assert!((atoms[0].angle).abs() < 1e-12 && (atoms[0].weight - 0.25).abs() < 1e-12);
        assert!((atoms[1].angle - PI).abs() < 1e-12 && (atoms[1].weight - 0.75).abs() < 1e-12);
    }

    fn arb_measure(max_atoms: usize) -> impl Strategy<Value = AtomicMeasure<f64>> {
        prop::collection::vec((0.0f64..2.0 * PI, 0.05f64..1.0), 1..=max_atoms).prop_filter_map(
            "distinct atoms",
            |raw| {
                let total: f64 = raw.iter().map(|(_, w)| w).sum();
                let atoms = raw.iter().map(|&(a, w)| Atom::new(a, w / total)).collect();
                let m = AtomicMeasure::new(atoms).ok()?;
                let n = m.len();
                let ok = (0..n).all(|k| {
                    let next = if k + 1 < n {
                        m.atoms()[k + 1].angle
                    } else {
                        m.atoms()[0].angle + 2.0 * PI
                    };
                    n == 1 || next - m.atoms()[k].angle > 0.05
                });
                ok.then_some(m)
            },
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn log_derivative_matches_finite_difference(m in arb_measure(6), alpha in 0.05f64..1.0, r in 0.0f64..0.9, t in 0.0f64..TAU) {
            let f = GAlphaFunction::new(alpha, m).unwrap();
            let z = Complex::from_polar(r, t);
            let h = 1e-5;
            let log_hp = |w: Complex<f64>| f.hprime(w).unwrap().ln();
            let fd = (log_hp(z + h) - log_hp(z - h)) / (2.0 * h);
            prop_assert!((fd - f.log_derivative_hpp(z).unwrap()).norm() < 1e-6);
        }

        #[test]
        fn coefficient_bound(m in arb_measure(6), alpha in 0.05f64..1.0) {
            let f = GAlphaFunction::new(alpha, m).unwrap();
            let a = f.coefficients(50).unwrap();
            for n in 2..=50 {
                prop_assert!(a[n - 1].norm() <= alpha / (n * (n - 1)) as f64 + 1e-9);
            }
        }

        #[test]
        fn residual_routes_agree(m in arb_measure(5), alpha in 0.05f64..1.0, r in 0.0f64..0.95, t in 0.0f64..TAU) {
            let f = GAlphaFunction::new(alpha, m).unwrap();
            let z = Complex::from_polar(r, t);
            let stable = f.inequality_3e_residual(z).unwrap();
            let direct = f.inequality_3e_residual_direct(z).unwrap();
            prop_assert!(stable >= 0.0);
            prop_assert!((stable - direct).abs() <= 1e-9 * (1.0 + stable.abs()));
        }

        #[test]
        fn subordination_stays_in_disk(m in arb_measure(6), alpha in 0.05f64..1.0, r in 0.0f64..0.999, t in 0.0f64..TAU) {
            let f = GAlphaFunction::new(alpha, m).unwrap();
            prop_assert!(f.subordination_witness(Complex::from_polar(r, t)).unwrap().norm() < 1.0);
            prop_assert!(f.subordination_witness(c(0.0, 0.0)).unwrap().norm() < 1e-12);
        }

        #[test]
        fn measure_round_trip_through_blaschke(m in arb_measure(7), alpha in 0.05f64..1.0) {
            let f = GAlphaFunction::new(alpha, m).unwrap();
            let phi = f.blaschke_product().unwrap();
            for k in 0..20 {
                let z = Complex::from_polar(0.045 * k as f64, 0.9 * k as f64);
                prop_assert!((phi.eval(z).unwrap() - f.to_blaschke(z).unwrap()).norm() < 1e-9);
            }
            let back = GAlphaFunction::from_blaschke(alpha, &phi).unwrap();
            prop_assert!(f.measure().max_parameter_error(back.measure()) < 1e-8);
        }
    }
}
