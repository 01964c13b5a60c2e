//! Numerics for the family G(α) of normalised analytic functions on the unit
//! disk with `Re(z h''/(α h')) < 1/2`, restricted to members whose `h'` is
//! generated by finitely many atoms on the unit circle.
//!
//! - [`complexfn`]: principal powers, disk grids, Cauchy coefficients, sup norms
//! - [`blaschke`]: finite Blaschke products and the boundary roots of `zφ = 1`
//! - [`galpha`]: atomic measures, members, and the map between them and Blaschke products
//! - [`schwarz`]: pre-Schwarzian/Schwarzian derivatives and norms
//! - [`harmonic`]: sheared harmonic maps `f = h + conj(g)`
//!
//! Everything is generic over [`Real`] (`f32` or `f64`); the `*64` aliases
//! below fix the double-precision instantiation used by the CLI.

pub mod blaschke;
pub mod complexfn;
mod error;
pub mod galpha;
pub mod harmonic;
pub mod poly;
mod scalar;
pub mod schwarz;
pub mod series;

pub use error::{Error, Result};
pub use scalar::Real;

pub use blaschke::{BlaschkeProduct, BoundaryRootSet};
pub use complexfn::{DiskGrid, NormEstimate};
pub use galpha::{Atom, AtomicMeasure, GAlphaFunction};
pub use harmonic::{Dilatation, DilatationSpec, HarmonicMap};
pub use schwarz::SchwarzReport;

pub use num_complex::Complex;

pub type Complex64 = Complex<f64>;
pub type BlaschkeProduct64 = BlaschkeProduct<f64>;
pub type BoundaryRootSet64 = BoundaryRootSet<f64>;
pub type DiskGrid64 = DiskGrid<f64>;
pub type NormEstimate64 = NormEstimate<f64>;
pub type AtomicMeasure64 = AtomicMeasure<f64>;
pub type GAlphaFunction64 = GAlphaFunction<f64>;
pub type SchwarzReport64 = SchwarzReport<f64>;
pub type DilatationSpec64 = DilatationSpec<f64>;
pub type HarmonicMap64 = HarmonicMap<f64>;
