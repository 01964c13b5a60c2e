//! Scalar abstraction shared by every numeric routine in the crate.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};

/// Real floating-point scalar: `f32` or `f64`.
pub trait Real:
    Float + FloatConst + FromPrimitive + NumAssign + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts an `f64` literal into this scalar type.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    #[inline]
    fn from_usize_lossy(n: usize) -> Self {
        Self::from_usize(n).expect("usize representable")
    }

    #[inline]
    fn tau() -> Self {
        Self::TAU()
    }

    /// Reduces an angle into `[0, 2π)`.
    #[inline]
    fn wrap_angle(self) -> Self {
        let tau = Self::tau();
        let mut r = self % tau;
        if r < Self::zero() {
            r += tau;
        }
        // also maps -0 to +0
        if r >= tau || r == Self::zero() {
            r = Self::zero();
        }
        r
    }
}

impl Real for f32 {}
impl Real for f64 {}
