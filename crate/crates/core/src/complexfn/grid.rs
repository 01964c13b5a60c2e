use num_complex::Complex;

use crate::error::{invalid, Result};
use crate::Real;

/// Polar sampling grid of the disk `|z| <= r_max < 1`.
///
/// Points are `radii[i] * e^{2πi a / angles_per_circle}`. The angle index is
/// the outer loop of [`DiskGrid::points`], so ties in a sweep resolve to the
/// smallest angle first and then the smallest radius.
#[derive(Debug, Clone, PartialEq)]
pub struct DiskGrid<T> {
    radii: Vec<T>,
    angles_per_circle: usize,
    r_max: T,
}

/// Size summary of a [`DiskGrid`], carried by norm estimates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridDescriptor<T> {
    pub n_radii: usize,
    pub angles_per_circle: usize,
    pub r_max: T,
}

impl<T: Real> DiskGrid<T> {
    pub const DEFAULT_RADII: usize = 64;
    pub const DEFAULT_ANGLES: usize = 512;
    pub const MIN_ANGLES: usize = 8;

    pub fn default_r_max() -> T {
        T::one() - T::lit(1e-4)
    }

    pub fn new(radii: Vec<T>, angles_per_circle: usize, r_max: T) -> Result<Self> {
        if !(r_max > T::zero() && r_max < T::one()) {
            return Err(invalid!("r_max must lie in (0, 1), got {r_max}"));
        }
        if angles_per_circle < Self::MIN_ANGLES {
            return Err(invalid!(
                "angles_per_circle must be at least {}, got {angles_per_circle}",
                Self::MIN_ANGLES
            ));
        }
        if radii.is_empty() {
            return Err(invalid!("grid needs at least one radius"));
        }
        for r in &radii {
            if !r.is_finite() || *r < T::zero() || *r > r_max {
                return Err(invalid!("radius {r} outside [0, {r_max}]"));
            }
        }
        if radii.windows(2).any(|w| w[1] <= w[0]) {
            return Err(invalid!("radii must be strictly increasing"));
        }
        Ok(Self {
            radii,
            angles_per_circle,
            r_max,
        })
    }

    /// `n_radii` radii from 0 to `r_max` whose distances to the unit circle
    /// shrink geometrically, so the samples accumulate at the boundary.
    pub fn geometric(n_radii: usize, angles_per_circle: usize, r_max: T) -> Result<Self> {
        if n_radii < 2 {
            return Err(invalid!("geometric grid needs at least 2 radii, got {n_radii}"));
        }
        let gap = T::one() - r_max;
        let last = T::from_usize_lossy(n_radii - 1);
        let mut radii: Vec<T> = (0..n_radii)
            .map(|i| T::one() - gap.powf(T::from_usize_lossy(i) / last))
            .collect();
        radii[0] = T::zero();
        radii[n_radii - 1] = r_max;
        Self::new(radii, angles_per_circle, r_max)
    }

    /// Equally spaced radii `r_max * i / (n_radii - 1)`.
    pub fn uniform(n_radii: usize, angles_per_circle: usize, r_max: T) -> Result<Self> {
        if n_radii < 2 {
            return Err(invalid!("uniform grid needs at least 2 radii, got {n_radii}"));
        }
        let last = T::from_usize_lossy(n_radii - 1);
        let mut radii: Vec<T> = (0..n_radii).map(|i| r_max * T::from_usize_lossy(i) / last).collect();
        radii[n_radii - 1] = r_max;
        Self::new(radii, angles_per_circle, r_max)
    }

    pub fn radii(&self) -> &[T] {
        &self.radii
    }

    pub fn angles_per_circle(&self) -> usize {
        self.angles_per_circle
    }

    pub fn r_max(&self) -> T {
        self.r_max
    }

    pub fn len(&self) -> usize {
        self.radii.len() * self.angles_per_circle
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn angle(&self, index: usize) -> T {
        T::tau() * T::from_usize_lossy(index) / T::from_usize_lossy(self.angles_per_circle)
    }

    /// Angular spacing between neighbouring samples on a circle.
    pub fn angle_step(&self) -> T {
        T::tau() / T::from_usize_lossy(self.angles_per_circle)
    }

    /// Grid point with flat index `k` (angle-major).
    pub fn point(&self, k: usize) -> Complex<T> {
        let (a, i) = (k / self.radii.len(), k % self.radii.len());
        Complex::from_polar(self.radii[i], self.angle(a))
    }

    /// `(angle index, radius index)` of flat index `k`.
    pub fn indices(&self, k: usize) -> (usize, usize) {
        (k / self.radii.len(), k % self.radii.len())
    }

    pub fn points(&self) -> impl Iterator<Item = Complex<T>> + '_ {
        (0..self.len()).map(move |k| self.point(k))
    }

    pub fn descriptor(&self) -> GridDescriptor<T> {
        GridDescriptor {
            n_radii: self.radii.len(),
            angles_per_circle: self.angles_per_circle,
            r_max: self.r_max,
        }
    }
}

impl<T: Real> Default for DiskGrid<T> {
    /// 64 geometric radii accumulating at `1 - 1e-4`, 512 angles.
    fn default() -> Self {
        Self::geometric(Self::DEFAULT_RADII, Self::DEFAULT_ANGLES, Self::default_r_max())
            .expect("default grid parameters are valid")
    }
}
