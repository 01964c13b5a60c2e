//! Dense complex polynomials: construction from roots and simultaneous root
//! finding by the Aberth-Ehrlich iteration.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::Real;

/// Coefficients in ascending degree.
pub type Poly<T> = Vec<Complex<T>>;

/// Monic `Π (z - r)`.
pub fn from_roots<T: Real>(roots: &[Complex<T>]) -> Poly<T> {
    let mut p = vec![Complex::new(T::one(), T::zero())];
    for r in roots {
        let mut next = vec![Complex::new(T::zero(), T::zero()); p.len() + 1];
        for (k, c) in p.iter().enumerate() {
            next[k + 1] += c;
            next[k] -= c * r;
        }
        p = next;
    }
    p
}

/// `(p(z), p'(z))` by Horner.
pub fn eval_with_derivative<T: Real>(p: &[Complex<T>], z: Complex<T>) -> (Complex<T>, Complex<T>) {
    let zero = Complex::new(T::zero(), T::zero());
    let mut value = zero;
    let mut deriv = zero;
    for c in p.iter().rev() {
        deriv = deriv * z + value;
        value = value * z + c;
    }
    (value, deriv)
}

/// All roots of `p` (ascending coefficients, nonzero leading term).
pub fn roots<T: Real>(p: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
    let degree = p.len().saturating_sub(1);
    if degree == 0 {
        return Ok(Vec::new());
    }
    let lead = p[degree];
    if lead.norm() == T::zero() {
        return Err(Error::InvalidArgument("leading coefficient is zero".into()));
    }
    let monic: Poly<T> = p.iter().map(|c| c / lead).collect();
    if degree == 1 {
        return Ok(vec![-monic[0]]);
    }

    // initial guesses on a circle of Cauchy-bound-like radius, off the axes
    let radius = monic[..degree]
        .iter()
        .enumerate()
        .map(|(k, c)| c.norm().powf(T::one() / T::from_usize_lossy(degree - k)))
        .fold(T::zero(), T::max)
        .max(T::lit(0.5));
    let mut z: Vec<Complex<T>> = (0..degree)
        .map(|k| {
            let angle = T::tau() * T::from_usize_lossy(k) / T::from_usize_lossy(degree) + T::lit(0.4);
            Complex::from_polar(radius, angle)
        })
        .collect();

    let abs_coeffs: Vec<T> = monic.iter().map(|c| c.norm()).collect();
    let backward_error = |z: Complex<T>| {
        let r = z.norm();
        abs_coeffs.iter().rev().fold(T::zero(), |acc, c| acc * r + *c) * T::epsilon() * T::lit(16.0)
    };
    let mut done = vec![false; degree];
    for _ in 0..500 {
        for i in 0..degree {
            if done[i] {
                continue;
            }
            let (v, d) = eval_with_derivative(&monic, z[i]);
            if v.norm() <= backward_error(z[i]) {
                done[i] = true;
                continue;
            }
            let ratio = v / d;
            let mut repulsion = Complex::new(T::zero(), T::zero());
            for (j, zj) in z.iter().enumerate() {
                if j != i {
                    repulsion += (z[i] - zj).inv();
                }
            }
            let step = ratio / (Complex::new(T::one(), T::zero()) - ratio * repulsion);
            if step.re.is_finite() && step.im.is_finite() {
                z[i] -= step;
                if step.norm() <= T::epsilon() * z[i].norm().max(T::one()) {
                    done[i] = true;
                }
            }
        }
        if done.iter().all(|d| *d) {
            return Ok(polish(&monic, z));
        }
    }
    Err(Error::Convergence(format!(
        "Aberth iteration did not converge for degree {degree}"
    )))
}

fn polish<T: Real>(p: &[Complex<T>], mut z: Vec<Complex<T>>) -> Vec<Complex<T>> {
    for zi in z.iter_mut() {
        for _ in 0..3 {
            let (v, d) = eval_with_derivative(p, *zi);
            let step = v / d;
            if !(step.re.is_finite() && step.im.is_finite()) {
                break;
            }
            *zi -= step;
        }
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::TAU;

    #[test]
    fn quadratic() {
        let p = from_roots(&[Complex::new(0.5, 0.0), Complex::new(-0.25, 0.3)]);
        let mut r = roots(&p).unwrap();
        r.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap());
        assert!((r[0] - Complex::new(-0.25, 0.3)).norm() < 1e-14);
        assert!((r[1] - Complex::new(0.5, 0.0)).norm() < 1e-14);
    }

    proptest! {
        #[test]
        fn recovers_roots_in_the_disk(raw in prop::collection::vec((0.0f64..0.95, 0.0f64..TAU), 1..9)) {
            let given: Vec<Complex<f64>> = raw.iter().map(|&(r, t)| Complex::from_polar(r, t)).collect();
            // skip near-coincident roots where the problem is ill-conditioned
            for i in 0..given.len() {
                for j in 0..i {
                    prop_assume!((given[i] - given[j]).norm() > 1e-2);
                }
            }
            let found = roots(&from_roots(&given)).unwrap();
            for g in &given {
                let nearest = found.iter().map(|f| (f - g).norm()).fold(f64::INFINITY, f64::min);
                prop_assert!(nearest < 1e-9, "{g} not recovered: {nearest}");
            }
        }
    }
}
