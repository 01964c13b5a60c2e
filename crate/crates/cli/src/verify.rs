//! The full verification battery behind `galpha verify`, plus the round trip
//! and norm reports.

use galpha_core::schwarz::norms;
use galpha_core::{BlaschkeProduct64, Complex64, DiskGrid64, Error, GAlphaFunction64, HarmonicMap, SchwarzReport64};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{compute, CliError};
use crate::spec::{atom_entries, AtomEntry, ComplexEntry, LoadedSpec};

/// Highest coefficient index checked against `|a_n| <= α/(n(n-1))`.
pub const COEFFICIENT_ORDER: usize = 50;
pub const ROUNDTRIP_RADIUS: f64 = 0.9;
pub const WINDING_RADII: [f64; 2] = [0.5, 0.9];
pub const WINDING_TARGETS: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    pub roundtrip: f64,
    pub norm: f64,
    pub pointwise: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            roundtrip: 1e-8,
            norm: 1e-3,
            pointwise: 1e-9,
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct VerifyConfig {
    pub tolerances: Tolerances,
    pub grid: DiskGrid64,
}

#[derive(Debug, Clone, Serialize)]
pub struct GridSummary {
    pub n_radii: usize,
    pub angles_per_circle: usize,
    pub r_max: f64,
}

impl From<&DiskGrid64> for GridSummary {
    fn from(grid: &DiskGrid64) -> Self {
        let d = grid.descriptor();
        GridSummary {
            n_radii: d.n_radii,
            angles_per_circle: d.angles_per_circle,
            r_max: d.r_max,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SchwarzSummary {
    pub alpha: f64,
    pub pre_schwarzian_norm: f64,
    pub pre_schwarzian_argmax: ComplexEntry,
    pub schwarzian_norm: f64,
    pub schwarzian_argmax: ComplexEntry,
    pub bound_pre_schwarzian: f64,
    pub bound_schwarzian: f64,
    pub qc_constant: Option<f64>,
    pub extremal: bool,
}

impl SchwarzSummary {
    fn new(report: &SchwarzReport64, extremal: bool) -> Self {
        SchwarzSummary {
            alpha: report.alpha,
            pre_schwarzian_norm: report.pre_schwarzian_norm.value,
            pre_schwarzian_argmax: report.pre_schwarzian_norm.argmax.into(),
            schwarzian_norm: report.schwarzian_norm.value,
            schwarzian_argmax: report.schwarzian_norm.argmax.into(),
            bound_pre_schwarzian: report.bound_pre_schwarzian,
            bound_schwarzian: report.bound_schwarzian,
            qc_constant: report.qc_constant,
            extremal,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct HarmonicSummary {
    pub eq17_holds: bool,
    pub eq17_worst_margin: f64,
    pub jacobian_min: f64,
    pub winding_ok: bool,
}

fn number(v: f64) -> String {
    if v == 0.0 || (1e-3..1e6).contains(&v.abs()) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

/// One named comparison of a measured value against its threshold.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub requirement: String,
    pub pass: bool,
}

impl Check {
    fn at_most(name: &str, value: f64, limit: f64) -> Self {
        Check {
            name: name.into(),
            value,
            requirement: format!("<= {limit:e}"),
            pass: value <= limit,
        }
    }

    fn above(name: &str, value: f64, limit: f64) -> Self {
        Check {
            name: name.into(),
            value,
            requirement: format!("> {limit:e}"),
            pass: value > limit,
        }
    }

    fn below(name: &str, value: f64, limit: f64) -> Self {
        Check {
            name: name.into(),
            value,
            requirement: format!("< {limit:e}"),
            pass: value < limit,
        }
    }

    fn at_least(name: &str, value: f64, limit: f64) -> Self {
        Check {
            name: name.into(),
            value,
            requirement: format!(">= {limit:e}"),
            pass: value >= limit,
        }
    }

    fn flag(name: &str, ok: bool) -> Self {
        Check {
            name: name.into(),
            value: if ok { 1.0 } else { 0.0 },
            requirement: "true".into(),
            pass: ok,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub membership_margin: f64,
    pub coefficient_max_ratio: f64,
    pub eq3e_min_residual: f64,
    pub subordination_max_modulus: f64,
    pub schwarz: SchwarzSummary,
    pub roundtrip_error: Option<f64>,
    pub atom_parameter_error: Option<f64>,
    pub harmonic: Option<HarmonicSummary>,
    pub recovered_atoms: Option<Vec<AtomEntry>>,
    pub tolerances: Tolerances,
    pub grid: GridSummary,
    pub checks: Vec<Check>,
    pub pass: bool,
}

impl VerifyReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let line = |out: &mut String, s: String| {
            out.push_str(&s);
            out.push('\n');
        };
        line(&mut out, format!("alpha: {}", self.schwarz.alpha));
        line(
            &mut out,
            format!(
                "grid: {} radii x {} angles, r_max {}",
                self.grid.n_radii, self.grid.angles_per_circle, self.grid.r_max
            ),
        );
        line(&mut out, format!("membership_margin: {:e}", self.membership_margin));
        line(
            &mut out,
            format!("coefficient_max_ratio: {}", self.coefficient_max_ratio),
        );
        line(&mut out, format!("eq3e_min_residual: {:e}", self.eq3e_min_residual));
        line(
            &mut out,
            format!("subordination_max_modulus: {}", self.subordination_max_modulus),
        );
        line(
            &mut out,
            format!(
                "pre_schwarzian_norm: {} (bound {})",
                self.schwarz.pre_schwarzian_norm, self.schwarz.bound_pre_schwarzian
            ),
        );
        line(
            &mut out,
            format!(
                "schwarzian_norm: {} (bound {})",
                self.schwarz.schwarzian_norm, self.schwarz.bound_schwarzian
            ),
        );
        if let Some(k) = self.schwarz.qc_constant {
            line(&mut out, format!("qc_constant: {k}"));
        }
        if let Some(e) = self.roundtrip_error {
            line(&mut out, format!("roundtrip_error: {e:e}"));
        }
        if let Some(e) = self.atom_parameter_error {
            line(&mut out, format!("atom_parameter_error: {e:e}"));
        }
        if let Some(h) = &self.harmonic {
            line(
                &mut out,
                format!(
                    "harmonic: eq17_holds {} (worst margin {:e}), jacobian_min {:e}, winding_ok {}",
                    h.eq17_holds, h.eq17_worst_margin, h.jacobian_min, h.winding_ok
                ),
            );
        }
        if let Some(atoms) = &self.recovered_atoms {
            line(&mut out, "recovered_atoms:".into());
            for a in atoms {
                line(&mut out, format!("  theta {} weight {}", a.theta, a.weight));
            }
        }
        for c in &self.checks {
            let tag = if c.pass { "PASS" } else { "FAIL" };
            line(
                &mut out,
                format!("[{tag}] {}: {} (required {})", c.name, number(c.value), c.requirement),
            );
        }
        line(&mut out, format!("result: {}", if self.pass { "PASS" } else { "FAIL" }));
        out
    }
}

fn grid_fold<F>(grid: &DiskGrid64, init: f64, pick: fn(f64, f64) -> f64, f: F) -> Result<f64, CliError>
where
    F: Fn(Complex64) -> galpha_core::Result<f64> + Sync,
{
    let values: Vec<f64> = (0..grid.len())
        .into_par_iter()
        .map(|k| f(grid.point(k)))
        .collect::<galpha_core::Result<_>>()
        .map_err(compute)?;
    Ok(values.into_iter().fold(init, pick))
}

fn coefficient_max_ratio(f: &GAlphaFunction64) -> Result<f64, CliError> {
    let a = f.coefficients(COEFFICIENT_ORDER).map_err(compute)?;
    Ok((2..=COEFFICIENT_ORDER)
        .map(|n| a[n - 1].norm() * (n * (n - 1)) as f64 / f.alpha())
        .fold(0.0, f64::max))
}

fn roundtrip_points() -> impl Iterator<Item = Complex64> {
    (0..=18).flat_map(|i| {
        let r = ROUNDTRIP_RADIUS * i as f64 / 18.0;
        (0..64).map(move |k| Complex64::from_polar(r, std::f64::consts::TAU * k as f64 / 64.0))
    })
}

/// Result of `φ -> atoms -> φ̂`.
#[derive(Debug, Clone, Serialize)]
pub struct RoundTrip {
    pub degree: usize,
    pub pointwise_error: f64,
    pub atom_parameter_error: f64,
    pub atoms: Vec<AtomEntry>,
}

/// Recovers atoms from `phi`, rebuilds the Blaschke product from them, and
/// measures both the pointwise and the atom-parameter discrepancy.
pub fn blaschke_round_trip(alpha: f64, phi: &BlaschkeProduct64) -> Result<RoundTrip, CliError> {
    let f = GAlphaFunction64::from_blaschke(alpha, phi).map_err(crate::error::input)?;
    let mut pointwise_error = 0.0f64;
    for z in roundtrip_points() {
        let d = (phi.eval(z).map_err(compute)? - f.to_blaschke(z).map_err(compute)?).norm();
        pointwise_error = pointwise_error.max(d);
    }
    let rebuilt = f.blaschke_product().map_err(compute)?;
    let again = GAlphaFunction64::from_blaschke(alpha, &rebuilt).map_err(compute)?;
    Ok(RoundTrip {
        degree: phi.degree(),
        pointwise_error,
        atom_parameter_error: f.measure().max_parameter_error(again.measure()),
        atoms: atom_entries(f.measure()),
    })
}

fn harmonic_summary(map: &HarmonicMap<f64>, grid: &DiskGrid64) -> Result<HarmonicSummary, CliError> {
    let eq17 = map.criterion_eq17(grid).map_err(compute)?;
    let jacobian_min = map.jacobian_min(grid).map_err(compute)?;
    let mut winding_ok = true;
    for r in WINDING_RADII {
        winding_ok &= match map.winding_injectivity_probe(r, WINDING_TARGETS) {
            Ok(ok) => ok,
            // a target on the image curve proves nothing either way
            Err(Error::Inconclusive(_)) => false,
            Err(e) => return Err(compute(e)),
        };
    }
    Ok(HarmonicSummary {
        eq17_holds: eq17.holds,
        eq17_worst_margin: eq17.worst_margin,
        jacobian_min,
        winding_ok,
    })
}

fn norm_checks(report: &SchwarzReport64, extremal: bool, tol: &Tolerances, checks: &mut Vec<Check>) {
    checks.push(Check::at_most(
        "pre_schwarzian_norm within bound",
        report.pre_schwarzian_norm.value - report.bound_pre_schwarzian,
        tol.pointwise,
    ));
    checks.push(Check::at_most(
        "schwarzian_norm within bound",
        report.schwarzian_norm.value - report.bound_schwarzian,
        tol.pointwise,
    ));
    if extremal {
        checks.push(Check::at_most(
            "pre_schwarzian_norm matches sharp value",
            (report.pre_schwarzian_norm.value - report.bound_pre_schwarzian).abs(),
            tol.norm,
        ));
        checks.push(Check::at_most(
            "schwarzian_norm matches sharp value",
            (report.schwarzian_norm.value - report.bound_schwarzian).abs(),
            tol.norm,
        ));
    }
}

pub fn verify(spec: &LoadedSpec, config: &VerifyConfig) -> Result<VerifyReport, CliError> {
    let f = spec.function();
    let grid = &config.grid;
    let tol = &config.tolerances;

    let membership_margin = f.membership_margin(grid).map_err(compute)?;
    let coefficient_max_ratio = coefficient_max_ratio(f)?;
    let eq3e_min_residual = grid_fold(grid, f64::INFINITY, f64::min, |z| f.inequality_3e_residual(z))?;
    let subordination_max_modulus = grid_fold(grid, 0.0, f64::max, |z| f.subordination_witness(z).map(|w| w.norm()))?;
    let origin = f
        .subordination_witness(Complex64::new(0.0, 0.0))
        .map_err(compute)?
        .norm();
    let report = norms(f, grid).map_err(compute)?;

    let phi = match spec.blaschke() {
        Some(phi) => phi.clone(),
        None => f.blaschke_product().map_err(compute)?,
    };
    let round_trip = blaschke_round_trip(f.alpha(), &phi)?;
    let harmonic = spec
        .harmonic_map(HarmonicMap::<f64>::DEFAULT_SERIES_TERMS)?
        .map(|map| harmonic_summary(&map, grid))
        .transpose()?;

    let mut checks = vec![
        Check::above("membership_margin", membership_margin, -tol.pointwise),
        Check::at_most("coefficient_max_ratio", coefficient_max_ratio, 1.0 + tol.pointwise),
        Check::at_least("eq3e_min_residual", eq3e_min_residual, -tol.pointwise),
        Check::below(
            "subordination_max_modulus",
            subordination_max_modulus,
            1.0 + tol.pointwise,
        ),
        Check::at_most("subordination_at_origin", origin, tol.pointwise),
    ];
    norm_checks(&report, f.is_extremal(), tol, &mut checks);
    checks.push(Check::at_most(
        "roundtrip_error",
        round_trip.pointwise_error,
        tol.roundtrip,
    ));
    checks.push(Check::at_most(
        "atom_parameter_error",
        round_trip.atom_parameter_error,
        tol.roundtrip,
    ));
    if let Some(h) = &harmonic {
        checks.push(Check::flag("eq17_holds", h.eq17_holds));
        checks.push(Check::above("jacobian_min", h.jacobian_min, 0.0));
        checks.push(Check::flag("winding_ok", h.winding_ok));
    }
    let pass = checks.iter().all(|c| c.pass);

    Ok(VerifyReport {
        membership_margin,
        coefficient_max_ratio,
        eq3e_min_residual,
        subordination_max_modulus,
        schwarz: SchwarzSummary::new(&report, f.is_extremal()),
        roundtrip_error: Some(round_trip.pointwise_error),
        atom_parameter_error: Some(round_trip.atom_parameter_error),
        harmonic,
        recovered_atoms: spec.blaschke().map(|_| round_trip.atoms),
        tolerances: *tol,
        grid: grid.into(),
        checks,
        pass,
    })
}

/// Norm report for `galpha norms`.
#[derive(Debug, Clone, Serialize)]
pub struct NormsReport {
    pub schwarz: SchwarzSummary,
    pub grid: GridSummary,
    pub checks: Vec<Check>,
    pub pass: bool,
}

impl NormsReport {
    pub fn to_text(&self) -> String {
        let s = &self.schwarz;
        let mut out = format!(
            "alpha: {}\npre_schwarzian_norm: {} at {}{:+}i (bound {})\nschwarzian_norm: {} at {}{:+}i (bound {})\n",
            s.alpha,
            s.pre_schwarzian_norm,
            s.pre_schwarzian_argmax.re,
            s.pre_schwarzian_argmax.im,
            s.bound_pre_schwarzian,
            s.schwarzian_norm,
            s.schwarzian_argmax.re,
            s.schwarzian_argmax.im,
            s.bound_schwarzian
        );
        match s.qc_constant {
            Some(k) => out.push_str(&format!("qc_constant: {k}\n")),
            None => out.push_str("qc_constant: none (alpha >= 1/2)\n"),
        }
        for c in &self.checks {
            let tag = if c.pass { "PASS" } else { "FAIL" };
            out.push_str(&format!(
                "[{tag}] {}: {} (required {})\n",
                c.name,
                number(c.value),
                c.requirement
            ));
        }
        out
    }
}

pub fn norms_report(spec: &LoadedSpec, config: &VerifyConfig) -> Result<NormsReport, CliError> {
    let f = spec.function();
    let report = norms(f, &config.grid).map_err(compute)?;
    let mut checks = Vec::new();
    norm_checks(&report, f.is_extremal(), &config.tolerances, &mut checks);
    let pass = checks.iter().all(|c| c.pass);
    Ok(NormsReport {
        schwarz: SchwarzSummary::new(&report, f.is_extremal()),
        grid: (&config.grid).into(),
        checks,
        pass,
    })
}
