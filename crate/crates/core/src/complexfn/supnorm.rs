use num_complex::Complex;
use rayon::prelude::*;

use super::grid::{DiskGrid, GridDescriptor};
use crate::error::{domain, Result};
use crate::Real;

pub const DEFAULT_REFINE_ITERS: usize = 40;

/// Alternating radius/angle golden-section passes per refinement.
const COORDINATE_PASSES: usize = 2;

/// Sampled supremum of a real objective on the disk.
///
/// `value` is the objective evaluated at `argmax`, so it is always a lower
/// bound for the true supremum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormEstimate<T> {
    pub value: T,
    pub argmax: Complex<T>,
    pub grid: GridDescriptor<T>,
    pub refined: bool,
    pub refine_iters: usize,
}

struct Best<T> {
    value: T,
    at: Complex<T>,
}

impl<T: Real> Best<T> {
    fn offer(&mut self, value: T, at: Complex<T>) {
        if value > self.value {
            self.value = value;
            self.at = at;
        }
    }
}

fn eval_checked<T: Real, F>(objective: &F, z: Complex<T>) -> Result<T>
where
    F: Fn(Complex<T>) -> Result<T>,
{
    let v = objective(z)?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(domain!("objective is not finite at {z}"))
    }
}

/// Golden-section maximisation of `g` on `[lo, hi]`; every evaluation is
/// offered to `best`. Returns the abscissa of the best value seen here.
fn golden_section_max<T: Real, G>(mut g: G, mut lo: T, mut hi: T, iters: usize, start: (T, T)) -> Result<T>
where
    G: FnMut(T) -> Result<T>,
{
    let inv_phi = (T::lit(5.0).sqrt() - T::one()) / T::lit(2.0);
    let (mut best_x, mut best_v) = start;
    let mut c = hi - inv_phi * (hi - lo);
    let mut d = lo + inv_phi * (hi - lo);
    let mut fc = g(c)?;
    let mut fd = g(d)?;
    for (x, v) in [(c, fc), (d, fd)] {
        if v > best_v {
            best_x = x;
            best_v = v;
        }
    }
    for _ in 0..iters {
        if fc > fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - inv_phi * (hi - lo);
            fc = g(c)?;
            if fc > best_v {
                best_x = c;
                best_v = fc;
            }
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + inv_phi * (hi - lo);
            fd = g(d)?;
            if fd > best_v {
                best_x = d;
                best_v = fd;
            }
        }
    }
    Ok(best_x)
}

/// Maximum of `objective` over `grid`, then local refinement around the best
/// grid point: two alternating passes of `refine_iters` golden-section steps
/// in radius (from the next inner grid radius out to `r_max`) and in angle
/// (within one angular step). The radial bracket reaches `r_max` because a
/// boundary peak between grid angles shows up on the grid at a smaller radius.
///
/// Grid values are computed in parallel and reduced in grid order; ties go
/// to the smallest angle and then the smallest radius.
pub fn sup_norm_estimate<T, F>(objective: F, grid: &DiskGrid<T>, refine_iters: usize) -> Result<NormEstimate<T>>
where
    T: Real,
    F: Fn(Complex<T>) -> Result<T> + Sync,
{
    let values: Vec<T> = (0..grid.len())
        .into_par_iter()
        .map(|k| eval_checked(&objective, grid.point(k)))
        .collect::<Result<_>>()?;

    let mut k_best = 0;
    for (k, v) in values.iter().enumerate() {
        if *v > values[k_best] {
            k_best = k;
        }
    }
    let mut best = Best {
        value: values[k_best],
        at: grid.point(k_best),
    };

    if refine_iters > 0 {
        let (a, i) = grid.indices(k_best);
        let radii = grid.radii();
        let theta0 = grid.angle(a);
        let r_lo = if i > 0 { radii[i - 1] } else { radii[i] };
        let r_hi = grid.r_max();
        let step = grid.angle_step();

        for _ in 0..COORDINATE_PASSES {
            let theta = best.at.arg();
            let r_now = best.at.norm();
            if r_hi > r_lo {
                let v = best.value;
                golden_section_max(
                    |r| {
                        let z = Complex::from_polar(r, theta);
                        let v = eval_checked(&objective, z)?;
                        best.offer(v, z);
                        Ok(v)
                    },
                    r_lo,
                    r_hi,
                    refine_iters,
                    (r_now, v),
                )?;
            }
            let r_star = best.at.norm();
            if r_star > T::zero() {
                let (theta, v) = (best.at.arg(), best.value);
                golden_section_max(
                    |t| {
                        let z = Complex::from_polar(r_star, t);
                        let v = eval_checked(&objective, z)?;
                        best.offer(v, z);
                        Ok(v)
                    },
                    theta0 - step,
                    theta0 + step,
                    refine_iters,
                    (theta, v),
                )?;
            }
        }
    }

    Ok(NormEstimate {
        value: best.value,
        argmax: best.at,
        grid: grid.descriptor(),
        refined: refine_iters > 0,
        refine_iters,
    })
}
