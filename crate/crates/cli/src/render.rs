//! Boundary-curve export: samples `h` (or `h + conj(g)`) on a circle and
//! writes CSV or a single-path SVG.

use std::f64::consts::TAU;
use std::fmt::Write as _;

use galpha_core::{Complex64, HarmonicMap};

use crate::error::{compute, CliError};
use crate::spec::LoadedSpec;

pub const MAX_RADIUS: f64 = 1.0 - 1e-6;
pub const MIN_SAMPLES: usize = 4;
pub const MIN_SERIES_TERMS: usize = 64;
pub const MAX_SERIES_TERMS: usize = 8192;
/// Target for the truncation bound when choosing the number of series terms.
pub const SERIES_TOLERANCE: f64 = 1e-12;
pub const VIEWBOX: f64 = 1000.0;
const SVG_MARGIN: f64 = 50.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Svg,
}

/// Sampled curve `θ_k = 2πk/samples`, `k < samples`.
#[derive(Debug, Clone)]
pub struct Curve {
    pub thetas: Vec<f64>,
    pub points: Vec<Complex64>,
    pub series_terms: usize,
    pub truncation_bound: f64,
}

/// Smallest power of two (clamped to the allowed range) whose tail bound at
/// `radius` is below [`SERIES_TOLERANCE`].
pub fn series_terms_for(spec: &LoadedSpec, radius: f64) -> usize {
    let f = spec.function();
    let mut n = MIN_SERIES_TERMS;
    while n < MAX_SERIES_TERMS && f.h_tail_bound(radius, n) > SERIES_TOLERANCE {
        n *= 2;
    }
    n
}

pub fn sample_curve(spec: &LoadedSpec, radius: f64, samples: usize) -> Result<Curve, CliError> {
    if !(radius > 0.0 && radius <= MAX_RADIUS) {
        return Err(CliError::Input(format!(
            "radius must lie in (0, 1 - 1e-6], got {radius}"
        )));
    }
    if samples < MIN_SAMPLES {
        return Err(CliError::Input(format!(
            "samples must be at least {MIN_SAMPLES}, got {samples}"
        )));
    }
    let n_terms = series_terms_for(spec, radius);
    let thetas: Vec<f64> = (0..samples).map(|k| TAU * k as f64 / samples as f64).collect();
    let zs = thetas.iter().map(|&t| Complex64::from_polar(radius, t));
    let points = match spec.dilatation() {
        Some(d) => {
            let map = HarmonicMap::new(spec.function().clone(), d.clone(), n_terms).map_err(compute)?;
            zs.map(|z| map.eval(z)).collect::<Result<Vec<_>, _>>()
        }
        None => {
            let coeffs = spec.function().h_series(n_terms);
            Ok(zs.map(|z| galpha_core::series::eval(&coeffs, z)).collect())
        }
    }
    .map_err(compute)?;
    Ok(Curve {
        thetas,
        points,
        series_terms: n_terms,
        truncation_bound: spec.function().h_tail_bound(radius, n_terms),
    })
}

pub fn to_csv(curve: &Curve) -> String {
    let mut out = String::from("theta,re,im\n");
    for (t, p) in curve.thetas.iter().zip(&curve.points) {
        writeln!(out, "{t},{},{}", p.re, p.im).expect("writing to a String");
    }
    out
}

/// SVG 1.1 document with one closed path, uniformly scaled into the view box
/// with `y` pointing up.
pub fn to_svg(curve: &Curve) -> String {
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for p in &curve.points {
        x0 = x0.min(p.re);
        x1 = x1.max(p.re);
        y0 = y0.min(p.im);
        y1 = y1.max(p.im);
    }
    let span = (x1 - x0).max(y1 - y0);
    let scale = if span > 0.0 {
        (VIEWBOX - 2.0 * SVG_MARGIN) / span
    } else {
        1.0
    };
    let (cx, cy) = ((x0 + x1) / 2.0, (y0 + y1) / 2.0);
    let map = |p: &Complex64| (VIEWBOX / 2.0 + (p.re - cx) * scale, VIEWBOX / 2.0 - (p.im - cy) * scale);

    let mut d = String::new();
    for (k, p) in curve.points.iter().chain(curve.points.first()).enumerate() {
        let (x, y) = map(p);
        let cmd = if k == 0 { "M" } else { " L" };
        write!(d, "{cmd} {x:.4} {y:.4}").expect("writing to a String");
    }
    format!(
        concat!(
            "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n",
            "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" ",
            "width=\"{v}\" height=\"{v}\" viewBox=\"0 0 {v} {v}\">\n",
            "<path d=\"{d}\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n",
            "</svg>\n"
        ),
        v = VIEWBOX,
        d = d
    )
}

pub fn render(spec: &LoadedSpec, radius: f64, samples: usize, format: Format) -> Result<String, CliError> {
    let curve = sample_curve(spec, radius, samples)?;
    Ok(match format {
        Format::Csv => to_csv(&curve),
        Format::Svg => to_svg(&curve),
    })
}
