use galpha_cli::spec::LoadedSpec;
use proptest::prelude::*;

const SPECS: &[&str] = &[
    r#"{"alpha": 0.5, "blaschke": {"zeros": [{"re": 0.3, "im": 0.4}, {"re": -0.2, "im": 0}], "prefactor_angle": 2.5}}"#,
    r#"{"alpha": 0.1, "atoms": [{"theta": 0.1, "weight": 0.25}, {"theta": 6.5, "weight": 0.75}],
        "dilatation": {"kind": "constant", "params": {"re": 0.1, "im": 0.2}}}"#,
    r#"{"alpha": 0.1, "atoms": [{"theta": 3, "weight": 1}],
        "dilatation": {"kind": "polynomial", "params": {"coefficients": [{"re": 0.1, "im": 0}, {"re": 0, "im": 0.3}]}}}"#,
    r#"{"alpha": 0.3, "atoms": [{"theta": -2, "weight": 1}],
        "dilatation": {"kind": "blaschke_scaled", "params": {"zeros": [{"re": 0.1, "im": 0.5}], "prefactor_angle": 0.3, "scale": 0.3}}}"#,
];

#[test]
fn every_kind_survives_save_and_reload() {
    let dir = tempfile::TempDir::new().unwrap();
    for (k, text) in SPECS.iter().enumerate() {
        let first = LoadedSpec::parse(text).unwrap();
        let path = dir.path().join(format!("{k}.json"));
        first.save(&path).unwrap();
        let second = LoadedSpec::load(&path).unwrap();
        assert_eq!(first.file(), second.file());
        assert_eq!(first.function(), second.function());
        assert_eq!(first.to_json(), second.to_json());
    }
}

proptest! {
    #[test]
    fn random_atoms_reload_bit_for_bit(
        raw in prop::collection::vec((-20.0f64..20.0, 0.01f64..1.0), 1..7),
        alpha in 0.01f64..=1.0,
    ) {
        let total: f64 = raw.iter().map(|(_, w)| w).sum();
        let atoms: Vec<String> = raw
            .iter()
            .map(|(t, w)| format!(r#"{{"theta": {t:?}, "weight": {:?}}}"#, w / total))
            .collect();
        let text = format!(r#"{{"alpha": {alpha:?}, "atoms": [{}]}}"#, atoms.join(","));
        // angles that collide after wrapping are legitimately rejected
        if let Ok(first) = LoadedSpec::parse(&text) {
            let second = LoadedSpec::parse(&first.to_json()).unwrap();
            prop_assert_eq!(first.file(), second.file());
            prop_assert_eq!(first.function(), second.function());
        }
    }
}
