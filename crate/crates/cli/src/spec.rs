//! The JSON function-spec file: a member of G(α) given either by atoms on the
//! unit circle or by a Blaschke product, plus an optional dilatation.

use std::fs;
use std::path::Path;

use galpha_core::{
    Atom, AtomicMeasure64, BlaschkeProduct64, Complex64, Dilatation, DilatationSpec, GAlphaFunction64, HarmonicMap,
};
use serde::{Deserialize, Serialize};

use crate::error::{input, CliError};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtomEntry {
    pub theta: f64,
    pub weight: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexEntry {
    pub re: f64,
    pub im: f64,
}

impl From<ComplexEntry> for Complex64 {
    fn from(c: ComplexEntry) -> Self {
        Complex64::new(c.re, c.im)
    }
}

impl From<Complex64> for ComplexEntry {
    fn from(c: Complex64) -> Self {
        ComplexEntry { re: c.re, im: c.im }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlaschkeEntry {
    pub zeros: Vec<ComplexEntry>,
    #[serde(default)]
    pub prefactor_angle: f64,
}

impl BlaschkeEntry {
    fn build(&self) -> Result<BlaschkeProduct64, CliError> {
        let zeros = self.zeros.iter().map(|&c| c.into()).collect();
        BlaschkeProduct64::with_prefactor_angle(zeros, self.prefactor_angle).map_err(input)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "params", rename_all = "snake_case", deny_unknown_fields)]
pub enum DilatationEntry {
    Constant(ComplexEntry),
    Monomial {
        coefficient: ComplexEntry,
        power: u32,
    },
    Polynomial {
        coefficients: Vec<ComplexEntry>,
    },
    BlaschkeScaled {
        zeros: Vec<ComplexEntry>,
        prefactor_angle: f64,
        scale: f64,
    },
}

impl DilatationEntry {
    fn build(&self) -> Result<DilatationSpec<f64>, CliError> {
        let kind = match self {
            DilatationEntry::Constant(c) => Dilatation::Constant((*c).into()),
            DilatationEntry::Monomial { coefficient, power } => Dilatation::Monomial {
                coefficient: (*coefficient).into(),
                power: *power,
            },
            DilatationEntry::Polynomial { coefficients } => {
                Dilatation::Polynomial(coefficients.iter().map(|&c| c.into()).collect())
            }
            DilatationEntry::BlaschkeScaled {
                zeros,
                prefactor_angle,
                scale,
            } => {
                let entry = BlaschkeEntry {
                    zeros: zeros.clone(),
                    prefactor_angle: *prefactor_angle,
                };
                Dilatation::BlaschkeScaled {
                    product: entry.build()?,
                    scale: *scale,
                }
            }
        };
        DilatationSpec::new(kind).map_err(input)
    }
}

/// On-disk layout. Exactly one of `atoms` and `blaschke` must be present.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionSpecFile {
    pub alpha: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub atoms: Option<Vec<AtomEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dilatation: Option<DilatationEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub blaschke: Option<BlaschkeEntry>,
}

/// A validated spec. `file` holds the canonical form (sorted, wrapped,
/// normalised atoms), so saving and reloading reproduces it exactly.
#[derive(Debug, Clone)]
pub struct LoadedSpec {
    file: FunctionSpecFile,
    function: GAlphaFunction64,
    blaschke: Option<BlaschkeProduct64>,
    dilatation: Option<DilatationSpec<f64>>,
}

impl LoadedSpec {
    pub fn from_file_spec(file: FunctionSpecFile) -> Result<Self, CliError> {
        let (function, blaschke) = match (&file.atoms, &file.blaschke) {
            (Some(_), Some(_)) => {
                return Err(CliError::Input(
                    "spec must give exactly one of atoms and blaschke, found both".into(),
                ))
            }
            (None, None) => {
                return Err(CliError::Input(
                    "spec must give exactly one of atoms and blaschke, found neither".into(),
                ))
            }
            (Some(atoms), None) => {
                let measure = AtomicMeasure64::new(atoms.iter().map(|a| Atom::new(a.theta, a.weight)).collect())
                    .map_err(input)?;
                (GAlphaFunction64::new(file.alpha, measure).map_err(input)?, None)
            }
            (None, Some(entry)) => {
                let phi = entry.build()?;
                (
                    GAlphaFunction64::from_blaschke(file.alpha, &phi).map_err(input)?,
                    Some(phi),
                )
            }
        };
        let dilatation = file.dilatation.as_ref().map(DilatationEntry::build).transpose()?;
        let mut file = file;
        if file.atoms.is_some() {
            file.atoms = Some(atom_entries(function.measure()));
        }
        Ok(Self {
            file,
            function,
            blaschke,
            dilatation,
        })
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let file: FunctionSpecFile =
            serde_json::from_str(text).map_err(|e| CliError::Input(format!("malformed spec: {e}")))?;
        Self::from_file_spec(file)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::parse(&text).map_err(|e| match e {
            CliError::Input(msg) => CliError::Input(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(&self.file).expect("spec serialises");
        text.push('\n');
        text
    }

    pub fn save(&self, path: &Path) -> Result<(), CliError> {
        fs::write(path, self.to_json()).map_err(|e| CliError::io(path, e))
    }

    pub fn file(&self) -> &FunctionSpecFile {
        &self.file
    }

    pub fn function(&self) -> &GAlphaFunction64 {
        &self.function
    }

    pub fn blaschke(&self) -> Option<&BlaschkeProduct64> {
        self.blaschke.as_ref()
    }

    pub fn dilatation(&self) -> Option<&DilatationSpec<f64>> {
        self.dilatation.as_ref()
    }

    /// The sheared map `h + conj(g)`, when the spec carries a dilatation.
    pub fn harmonic_map(&self, series_terms: usize) -> Result<Option<HarmonicMap<f64>>, CliError> {
        self.dilatation
            .as_ref()
            .map(|d| HarmonicMap::new(self.function.clone(), d.clone(), series_terms).map_err(crate::error::compute))
            .transpose()
    }
}

pub fn atom_entries(measure: &AtomicMeasure64) -> Vec<AtomEntry> {
    measure
        .atoms()
        .iter()
        .map(|a| AtomEntry {
            theta: a.angle,
            weight: a.weight,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reload_reproduces_values() {
        let spec = LoadedSpec::parse(
            r#"{"alpha": 0.7, "atoms": [{"theta": 7.0, "weight": 0.3}, {"theta": -1.0, "weight": 0.7}],
                "dilatation": {"kind": "monomial", "params": {"coefficient": {"re": 0.1, "im": -0.2}, "power": 2}}}"#,
        )
        .unwrap();
        let again = LoadedSpec::parse(&spec.to_json()).unwrap();
        assert_eq!(spec.file(), again.file());
        assert_eq!(spec.function().measure(), again.function().measure());
        assert_eq!(spec.to_json(), again.to_json());
    }

    #[test]
    fn source_must_be_unique() {
        let both = r#"{"alpha": 1, "atoms": [{"theta": 0, "weight": 1}], "blaschke": {"zeros": []}}"#;
        let err = LoadedSpec::parse(both).unwrap_err();
        assert!(err.to_string().contains("exactly one of atoms and blaschke"));
        assert!(LoadedSpec::parse(r#"{"alpha": 1}"#).is_err());
    }

    #[test]
    fn unknown_fields_and_kinds_are_rejected() {
        assert!(LoadedSpec::parse(r#"{"alpha": 1, "atoms": [{"theta": 0, "weight": 1}], "beta": 2}"#).is_err());
        let bad_kind =
            r#"{"alpha": 0.2, "atoms": [{"theta": 0, "weight": 1}], "dilatation": {"kind": "spiral", "params": {}}}"#;
        assert!(LoadedSpec::parse(bad_kind).is_err());
    }

    #[test]
    fn dilatation_must_stay_inside_the_disk() {
        let text = r#"{"alpha": 0.2, "atoms": [{"theta": 0, "weight": 1}],
                       "dilatation": {"kind": "constant", "params": {"re": 1.0, "im": 0.0}}}"#;
        assert_eq!(LoadedSpec::parse(text).unwrap_err().exit_code(), 2);
    }
}
