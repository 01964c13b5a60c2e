use std::f64::consts::PI;

use galpha_core::harmonic::Dilatation;
use galpha_core::{
    Atom, AtomicMeasure64, BlaschkeProduct64, Complex64, DilatationSpec, DiskGrid64, GAlphaFunction64, HarmonicMap,
};
use proptest::prelude::*;

fn measure() -> impl Strategy<Value = AtomicMeasure64> {
    prop::collection::vec((0.0f64..2.0 * PI, 0.05f64..1.0), 1..6).prop_filter_map("separated atoms", |raw| {
        let total: f64 = raw.iter().map(|(_, w)| w).sum();
        AtomicMeasure64::new(raw.iter().map(|&(a, w)| Atom::new(a, w / total)).collect()).ok()
    })
}

fn disk_point() -> impl Strategy<Value = Complex64> {
    (0.0f64..0.9, 0.0f64..2.0 * PI).prop_map(|(r, t)| Complex64::from_polar(r, t))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn measure_blaschke_measure(mu in measure(), alpha in 0.05f64..=1.0, z in disk_point()) {
        let f = GAlphaFunction64::new(alpha, mu).unwrap();
        let phi = f.blaschke_product().unwrap();
        prop_assert_eq!(phi.degree() + 1, f.measure().len());
        let back = GAlphaFunction64::from_blaschke(alpha, &phi).unwrap();
        prop_assert!(f.measure().max_parameter_error(back.measure()) < 1e-8);
        prop_assert!((phi.eval(z).unwrap() - f.to_blaschke(z).unwrap()).norm() < 1e-9);
    }

    #[test]
    fn log_derivative_identity(mu in measure(), alpha in 0.05f64..=1.0, z in disk_point()) {
        // h''/h' = α φ/(zφ - 1)
        let f = GAlphaFunction64::new(alpha, mu).unwrap();
        let phi = f.to_blaschke(z).unwrap();
        let expected = phi * alpha / (z * phi - 1.0);
        prop_assert!((f.log_derivative_hpp(z).unwrap() - expected).norm() < 1e-9 * (1.0 + expected.norm()));
    }

    #[test]
    fn series_and_quadrature_agree(mu in measure(), alpha in 0.05f64..=1.0) {
        let f = GAlphaFunction64::new(alpha, mu).unwrap();
        let quad = f.coefficients(30).unwrap();
        let exact = f.h_series(30);
        for n in 1..=30 {
            prop_assert!((quad[n - 1] - exact[n]).norm() < 1e-10);
        }
    }

    #[test]
    fn constant_shear_is_affine_in_h(mu in measure(), alpha in 0.05f64..0.45, c in disk_point(), z in disk_point()) {
        let c = c * (1.0 - 2.0 * alpha);
        let f = GAlphaFunction64::new(alpha, mu).unwrap();
        let map = HarmonicMap::new(f.clone(), DilatationSpec::new(Dilatation::Constant(c)).unwrap(), 256).unwrap();
        let h = f.h_eval(z, 256).unwrap();
        prop_assert!((map.eval(z).unwrap() - (h + (c * h).conj())).norm() < 1e-12);
        prop_assert!(map.jacobian(z).unwrap() > 0.0);
    }
}

#[test]
fn blaschke_dilatation_shear_passes_univalence_checks() {
    let f = GAlphaFunction64::new(0.3, AtomicMeasure64::roots_of_unity(4).unwrap()).unwrap();
    let product = BlaschkeProduct64::from_zeros(vec![Complex64::new(0.2, -0.3), Complex64::new(-0.5, 0.1)]).unwrap();
    let spec = DilatationSpec::new(Dilatation::BlaschkeScaled { product, scale: 0.4 }).unwrap();
    let map = HarmonicMap::new(f, spec, 512).unwrap();
    let grid = DiskGrid64::geometric(32, 256, 1.0 - 1e-4).unwrap();
    assert!(map.criterion_eq17(&grid).unwrap().holds);
    assert!(map.jacobian_min(&grid).unwrap() > 0.0);
    assert!(map.winding_injectivity_probe(0.9, 20).unwrap());
    let z = Complex64::new(0.3, 0.4);
    assert!((map.series_dilatation(z) - map.dilatation().eval(z).unwrap()).norm() < 1e-10);
}

#[test]
fn nearly_coincident_atoms_survive_the_round_trip() {
    let mu = AtomicMeasure64::new(vec![Atom::new(2.004437406868412, 0.5), Atom::new(2.0069832059568, 0.5)]).unwrap();
    let f = GAlphaFunction64::new(0.05, mu).unwrap();
    let phi = f.blaschke_product().unwrap();
    let raw: f64 = phi.boundary_roots().unwrap().residues.iter().sum();
    assert!((raw - 1.0).abs() < 1e-8);
    let back = GAlphaFunction64::from_blaschke(0.05, &phi).unwrap();
    assert!(f.measure().max_parameter_error(back.measure()) < 1e-8);
}
