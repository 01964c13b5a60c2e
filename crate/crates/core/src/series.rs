//! Truncated power series `Σ c_n z^n` stored as coefficient vectors.

use num_complex::Complex;

use crate::Real;

pub type Series<T> = Vec<Complex<T>>;

/// Horner evaluation.
pub fn eval<T: Real>(coeffs: &[Complex<T>], z: Complex<T>) -> Complex<T> {
    coeffs
        .iter()
        .rev()
        .fold(Complex::new(T::zero(), T::zero()), |acc, c| acc * z + c)
}

/// Term-by-term derivative.
pub fn derivative<T: Real>(coeffs: &[Complex<T>]) -> Series<T> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(n, c)| c * T::from_usize_lossy(n))
        .collect()
}

/// Product truncated to `len` coefficients.
pub fn mul<T: Real>(a: &[Complex<T>], b: &[Complex<T>], len: usize) -> Series<T> {
    let mut out = vec![Complex::new(T::zero(), T::zero()); len];
    for (i, ai) in a.iter().enumerate().take(len) {
        for (j, bj) in b.iter().enumerate().take(len - i) {
            out[i + j] += ai * bj;
        }
    }
    out
}

/// `exp(L)` truncated to `len` coefficients, from `F' = L' F`:
/// `n F_n = Σ_{j=1}^{n} j L_j F_{n-j}`.
pub fn exp<T: Real>(log_coeffs: &[Complex<T>], len: usize) -> Series<T> {
    let zero = Complex::new(T::zero(), T::zero());
    let l = |j: usize| log_coeffs.get(j).copied().unwrap_or(zero);
    let mut out = Vec::with_capacity(len);
    if len == 0 {
        return out;
    }
    out.push(l(0).exp());
    // j L_j, reused across n
    let weighted: Vec<Complex<T>> = (0..len).map(|j| l(j) * T::from_usize_lossy(j)).collect();
    for n in 1..len {
        let mut acc = zero;
        for j in 1..=n {
            acc += weighted[j] * out[n - j];
        }
        out.push(acc / T::from_usize_lossy(n));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex<f64> {
        Complex::new(re, 0.0)
    }

    #[test]
    fn exp_of_log_one_minus_z_is_one_minus_z() {
        // log(1 - z) = -Σ z^n / n
        let log: Vec<_> = (0..20)
            .map(|n| if n == 0 { c(0.0) } else { c(-1.0 / n as f64) })
            .collect();
        let e = exp(&log, 20);
        assert!((e[0] - c(1.0)).norm() < 1e-15);
        assert!((e[1] - c(-1.0)).norm() < 1e-15);
        assert!(e[2..].iter().all(|v| v.norm() < 1e-15));
    }

    #[test]
    fn product_and_horner() {
        let a = vec![c(1.0), c(1.0)];
        let p = mul(&a, &a, 4);
        assert_eq!(p, vec![c(1.0), c(2.0), c(1.0), c(0.0)]);
        assert_eq!(eval(&p, c(2.0)), c(9.0));
        assert_eq!(derivative(&p), vec![c(2.0), c(2.0), c(0.0)]);
    }
}
