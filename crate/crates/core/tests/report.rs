mod common;

use std::f64::consts::PI;

use proptest::prelude::*;
use qwalk_core::report::{LineReportLabel, RegionLabel, SCHEMA_VERSION};
use qwalk_core::{localization_report, Coin, Lattice, LocalizationReport, Qubit, WalkSpec};

use common::{random_qubit, random_spec, rng};

fn round_trip(r: &LocalizationReport) -> LocalizationReport {
    let text = serde_json::to_string(r).unwrap();
    let back: LocalizationReport = serde_json::from_str(&text).unwrap();
    back.validate().unwrap();
    back
}

#[test]
fn hadamard_line_report() {
    let spec = WalkSpec::constant(Lattice::Line, Coin::hadamard());
    let r = localization_report(&spec, &Qubit::up()).unwrap();
    let LocalizationReport::Line(line) = &r else { panic!("line report expected") };
    assert_eq!(line.label, LineReportLabel::M0);
    assert_eq!(line.p_limit, 0.0);
    assert_eq!(line.schema_version, SCHEMA_VERSION);
    assert_eq!(round_trip(&r), r);
    let json: serde_json::Value = serde_json::to_value(&r).unwrap();
    assert_eq!(json["schema_version"], 1);
    assert_eq!(json["lattice"], "line");
    assert_eq!(json["label"], "M0");
}

#[test]
fn konno_report_is_state_independent() {
    let spec = WalkSpec::new(Lattice::Line, Coin::hadamard(), Coin::konno(PI));
    let r = localization_report(&spec, &random_qubit(&mut rng(71))).unwrap();
    let LocalizationReport::Line(line) = &r else { panic!("line report expected") };
    assert_eq!(line.label, LineReportLabel::M4);
    assert_eq!(line.mass_points.len(), 4);
    assert!((line.p_limit - 0.64).abs() < 1e-12);
    assert!((line.state_independent_value.unwrap() - 0.64).abs() < 1e-12);
    assert!(line.nonlocalized_qubit.is_none());
}

#[test]
fn diagonal_coin_reports_no_localization() {
    for lattice in [Lattice::Line, Lattice::HalfLine] {
        let spec = WalkSpec::new(lattice, Coin::identity(), Coin::hadamard());
        let r = localization_report(&spec, &Qubit::down()).unwrap();
        match &r {
            LocalizationReport::Line(l) => assert_eq!(l.label, LineReportLabel::NoLocalization),
            LocalizationReport::Halfline(h) => assert_eq!(h.l_label, RegionLabel::NoLocalization),
        }
        assert_eq!(round_trip(&r), r);
    }
}

#[test]
fn halfline_report_fields() {
    let spec = WalkSpec::from_reduced(
        Lattice::HalfLine,
        num_complex::Complex64::new(0.5, 0.5),
        num_complex::Complex64::new(0.5, 0.5),
        num_complex::Complex64::new(1.0, 0.0),
    )
    .unwrap();
    let r = localization_report(&spec, &Qubit::up()).unwrap();
    let LocalizationReport::Halfline(h) = &r else { panic!("half-line report expected") };
    assert_eq!(h.mass_points.len(), 1);
    assert!(h.nonlocalized_qubit.is_some());
    let json: serde_json::Value = serde_json::to_value(&r).unwrap();
    assert_eq!(json["lattice"], "halfline");
    assert!(json["mass_points"][0]["side"].is_string());
    assert!(json["p_cesaro"].is_number());
}

#[test]
fn validation_rejects_tampering() {
    let spec = WalkSpec::new(Lattice::Line, Coin::hadamard(), Coin::konno(PI));
    let r = localization_report(&spec, &Qubit::up()).unwrap();
    let mut json: serde_json::Value = serde_json::to_value(&r).unwrap();
    json["schema_version"] = 2.into();
    let bad: LocalizationReport = serde_json::from_value(json.clone()).unwrap();
    assert!(bad.validate().is_err());
    json["schema_version"] = 1.into();
    json["mass_points"].as_array_mut().unwrap().pop();
    let bad: LocalizationReport = serde_json::from_value(json).unwrap();
    assert!(bad.validate().is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reports_round_trip(seed in any::<u64>(), line in any::<bool>()) {
        let lattice = if line { Lattice::Line } else { Lattice::HalfLine };
        let mut r = rng(seed);
        let spec = random_spec(&mut r, lattice);
        let report = localization_report(&spec, &random_qubit(&mut r)).unwrap();
        report.validate().unwrap();
        let back = round_trip(&report);
        prop_assert_eq!(back.lattice(), lattice);
        let a = serde_json::to_string(&report).unwrap();
        let b = serde_json::to_string(&back).unwrap();
        prop_assert_eq!(a, b);
    }
}
