use std::f64::consts::{PI, TAU};

use hyperrad::c64;
use hyperrad::model::SystemParams;
use hyperrad::steady::{converge_cutoff, SteadyStateResult};
use hyperrad::witness::{
    classify, quantumness_ratio, radiance_witness, semiclassical_field, RadianceClass, DEFAULT_CLASS_BAND,
};
use hyperrad::Error;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn classification_is_total_and_monotone(a in -5.0f64..30.0, b in -5.0f64..30.0, band in 1e-6f64..0.1) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let (cl, ch) = (classify(lo, band).unwrap(), classify(hi, band).unwrap());
        prop_assert!(cl <= ch, "R = {lo} -> {cl}, R = {hi} -> {ch}");
    }

    #[test]
    fn class_tokens_round_trip(k in 0usize..6) {
        let c = RadianceClass::ALL[k];
        prop_assert_eq!(c.token().parse::<RadianceClass>().unwrap(), c);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn witness_is_bounded_below(g in 0.1f64..10.0, eta in 0.05f64..1.5, phi in 0.0f64..TAU, det in 0.0f64..3.0) {
        let params = SystemParams::new(g, 1.0, eta).with_phi_z(phi).with_detuning(det);
        let p = radiance_witness(&params, 1e-6).unwrap();
        prop_assert!(p.r >= -1.0 - 1e-9, "R = {}", p.r);
        prop_assert!(p.n2 >= 0.0 && p.n1 > 0.0);
        prop_assert_eq!(p.regime, classify(p.r, DEFAULT_CLASS_BAND).unwrap());
    }

    #[test]
    fn semiclassical_field_is_linear_in_pump(g in 0.1f64..10.0, eta in 0.01f64..2.0, phi in 0.0f64..TAU, det in 0.0f64..5.0) {
        let p = SystemParams::new(g, 1.0, eta).with_phi_z(phi).with_detuning(det);
        let a = semiclassical_field(&p).unwrap();
        let b = semiclassical_field(&SystemParams { eta: 3.0 * eta, ..p }).unwrap();
        prop_assert!((b - a * 3.0).norm() <= 1e-12 * b.norm().max(1e-300));
    }
}

#[test]
fn witness_is_symmetric_under_phase_reflection() {
    for k in 1..16 {
        let phi = TAU * k as f64 / 16.0;
        let params = SystemParams::new(3.0, 1.0, 0.4).with_phi_z(phi);
        let a = radiance_witness(&params, 1e-8).unwrap();
        let b = radiance_witness(&params.with_phi_z(TAU - phi), 1e-8).unwrap();
        assert!((a.r - b.r).abs() < 1e-8, "phi = {phi}: {} vs {}", a.r, b.r);
    }
}

#[test]
fn weak_drive_matches_the_mean_field_amplitude() {
    let cases = [
        SystemParams::new(1.0, 1.0, 0.01),
        SystemParams::new(0.5, 1.0, 0.01).with_phi_z(0.6),
        SystemParams::new(1.0, 1.0, 0.01).with_atoms(1),
        SystemParams::new(2.0, 1.0, 0.005).with_detuning(0.5),
    ];
    for params in cases {
        let quantum = converge_cutoff(&params, 1e-8).unwrap().coherent_amp;
        let classical = semiclassical_field(&params).unwrap();
        let rel = (quantum.norm_sqr() - classical.norm_sqr()).abs() / classical.norm_sqr();
        assert!(
            rel < 0.05,
            "{params:?}: |a|^2 {} vs {}",
            quantum.norm_sqr(),
            classical.norm_sqr()
        );
    }
}

#[test]
fn semiclassical_field_edge_cases() {
    let decoupled = SystemParams::new(0.0, 1.0, 0.3);
    assert_eq!(semiclassical_field(&decoupled).unwrap(), c64::new(0.0, 0.0));
    let dark = SystemParams::new(2.0, 1.0, 0.3).with_phi_z(PI);
    assert!(semiclassical_field(&dark).unwrap().norm() < 1e-15);
    let bad = SystemParams::new(1.0, -1.0, 0.3);
    assert!(matches!(semiclassical_field(&bad), Err(Error::InvalidArgument(_))));
}

#[test]
fn quantumness_tracks_the_phase() {
    let in_phase = radiance_witness(&SystemParams::new(10.0, 1.0, 0.1), 1e-8).unwrap();
    let q = in_phase.quantumness.unwrap();
    assert!((q - 1.0).abs() < 0.05, "in phase: {q}");
    let anti = radiance_witness(&SystemParams::new(10.0, 1.0, 0.1).with_phi_z(PI), 1e-8).unwrap();
    let q = anti.quantumness.unwrap();
    assert!(q < 0.05, "out of phase: {q}");
}

#[test]
fn quantumness_of_a_vacuum_is_undefined() {
    let r = converge_cutoff(&SystemParams::new(1.0, 1.0, 0.0), 1e-6).unwrap();
    assert_eq!(quantumness_ratio(&r), None);
    let fake = SteadyStateResult {
        mean_photon: 0.25,
        coherent_amp: c64::new(0.3, 0.4),
        ..r
    };
    assert!((quantumness_ratio(&fake).unwrap() - 1.0).abs() < 1e-15);
}

#[test]
fn out_of_phase_good_cavity_is_hyperradiant() {
    let p = radiance_witness(&SystemParams::new(10.0, 1.0, 0.44).with_phi_z(PI), 1e-6).unwrap();
    assert!(p.r > 1.0, "R = {}", p.r);
    assert_eq!(p.regime, RadianceClass::Hyperradiant);
    assert!(p.g2.unwrap() > 1.0);
    assert!(p.cutoff_used >= p.reference_cutoff);
}

#[test]
fn dark_reference_is_an_error() {
    let err = radiance_witness(&SystemParams::new(0.0, 1.0, 0.5), 1e-6).unwrap_err();
    assert!(matches!(err, Error::ReferenceDark { .. }), "{err}");
    let err = radiance_witness(&SystemParams::new(1.0, 1.0, 0.5).with_atoms(1), 1e-6).unwrap_err();
    assert!(matches!(err, Error::InvalidArgument(_)));
}
