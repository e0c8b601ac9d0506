mod common;

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64 as C64;
use proptest::prelude::*;
use qwalk_core::{
    defect_params, hat_qubit, unhat_qubit, validate_coin, Coin, DefectParams, Error, Lattice,
    Qubit, WalkSpec,
};

use common::{random_coin, random_qubit, rng};

const S: f64 = FRAC_1_SQRT_2;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

#[test]
fn identity_has_zero_phases() {
    let coin = Coin::identity();
    assert_eq!(coin.sigma1(), 0.0);
    assert_eq!(coin.sigma2(), 0.0);
}

#[test]
fn hadamard_phases() {
    let h = Coin::hadamard();
    assert_eq!(h.sigma1(), 0.0);
    assert!((h.sigma2() - PI).abs() < 1e-15);
}

#[test]
fn degenerate_matrix_is_not_unitary() {
    let one = c(1.0, 0.0);
    let zero = c(0.0, 0.0);
    assert!(matches!(
        validate_coin([[one, zero], [zero, zero]]),
        Err(Error::NotUnitary { .. })
    ));
}

#[test]
fn antidiagonal_coin_is_reducible() {
    let one = c(1.0, 0.0);
    let zero = c(0.0, 0.0);
    assert_eq!(
        validate_coin([[zero, one], [one, zero]]),
        Err(Error::ReducibleCoin)
    );
}

#[test]
fn reals_round_trip() {
    let coin = random_coin(&mut rng(11));
    let back = Coin::from_reals(coin.to_reals()).unwrap();
    assert_eq!(coin, back);
}

#[test]
fn hadamard_line_parameters() {
    let spec = WalkSpec::constant(Lattice::Line, Coin::hadamard());
    let p = defect_params(&spec).unwrap();
    assert!((p.a - c(0.0, S)).norm() < 1e-12);
    assert!((p.b - c(0.0, S)).norm() < 1e-12);
    assert!((p.omega - 1.0).norm() < 1e-12);
}

#[test]
fn konno_line_parameters() {
    for phi in [0.3, 1.0, PI, -2.0] {
        let spec = WalkSpec::new(Lattice::Line, Coin::hadamard(), Coin::konno(phi));
        let p = defect_params(&spec).unwrap();
        assert!((p.a - c(0.0, S)).norm() < 1e-12);
        assert!((p.b - c(0.0, S) * C64::from_polar(1.0, phi)).norm() < 1e-12);
        assert!((p.omega - 1.0).norm() < 1e-12);
    }
}

#[test]
fn hadamard_halfline_parameters() {
    let spec = WalkSpec::constant(Lattice::HalfLine, Coin::hadamard());
    let p = defect_params(&spec).unwrap();
    assert!((p.a - c(0.0, S)).norm() < 1e-12);
    assert!((p.b - p.a).norm() < 1e-12);
    assert_eq!(p.omega, c(1.0, 0.0));
}

#[test]
fn diagonal_coin_is_flagged() {
    let spec = WalkSpec::constant(Lattice::Line, Coin::identity());
    assert_eq!(defect_params(&spec), Err(Error::DiagonalCoin));
}

#[test]
fn from_reduced_recovers_parameters() {
    let mut r = rng(12);
    for lattice in [Lattice::Line, Lattice::HalfLine] {
        for _ in 0..20 {
            let a = common::random_disk(&mut r, 0.95);
            let b = common::random_disk(&mut r, 0.95);
            let omega = C64::from_polar(1.0, r.gen_range(-PI..PI));
            let spec = WalkSpec::from_reduced(lattice, a, b, omega).unwrap();
            let p = defect_params(&spec).unwrap();
            assert!((p.a - a).norm() < 1e-12);
            assert!((p.b - b).norm() < 1e-12);
            if lattice == Lattice::Line {
                assert!((p.omega - omega).norm() < 1e-12);
            }
        }
    }
}

#[test]
fn defect_params_rejects_bad_inputs() {
    assert!(DefectParams::new(c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0), 0.0).is_err());
    assert!(DefectParams::new(c(0.5, 0.0), c(0.0, 0.0), c(2.0, 0.0), 0.0).is_err());
}

#[test]
fn qubit_normalization() {
    assert!(Qubit::new(c(1.0, 0.0), c(1.0, 0.0)).is_err());
    let q = Qubit::normalized(c(1.0, 0.0), c(1.0, 0.0)).unwrap();
    assert!((q.norm_sqr() - 1.0).abs() < 1e-15);
}

#[test]
fn hat_of_up_at_origin_with_equal_coins() {
    let spec = WalkSpec::constant(Lattice::Line, random_coin(&mut rng(13)));
    let h = hat_qubit(&Qubit::up(), 0, &spec).unwrap();
    assert!((h.alpha.norm() - 1.0).abs() < 1e-15);
    assert_eq!(h.beta, c(0.0, 0.0));
}

#[test]
fn hat_of_konno_qubit_preserves_moduli() {
    let spec = WalkSpec::new(Lattice::Line, Coin::hadamard(), Coin::konno(PI));
    let q = Qubit::new(c(S, 0.0), c(0.0, S)).unwrap();
    let h = hat_qubit(&q, 0, &spec).unwrap();
    assert!((h.alpha.norm() - S).abs() < 1e-15);
    assert!((h.beta.norm() - S).abs() < 1e-15);
}

#[test]
fn equal_parameters_criterion_on_line() {
    let mut r = rng(14);
    for _ in 0..20 {
        let coin = random_coin(&mut r);
        let sigma = coin.phase_sum();
        let tau: f64 = r.gen_range(-PI..PI);
        let d21 = coin.c21() * C64::from_polar(1.0, tau - sigma);
        let rho = (1.0 - d21.norm_sqr()).sqrt();
        let d = Coin::new([
            [C64::from_polar(rho, tau / 2.0), -d21.conj() * C64::from_polar(1.0, tau)],
            [d21, C64::from_polar(rho, tau / 2.0)],
        ])
        .unwrap();
        let p = defect_params(&WalkSpec::new(Lattice::Line, coin, d)).unwrap();
        assert!((p.a - p.b).norm() < 1e-12);
        let other = Coin::new([
            [C64::from_polar(rho, tau / 2.0), -(d21 * 0.5).conj() * C64::from_polar(1.0, tau)],
            [d21 * 0.5, C64::from_polar(rho, tau / 2.0)],
        ]);
        if let Ok(other) = other {
            let q = defect_params(&WalkSpec::new(Lattice::Line, coin, other)).unwrap();
            assert!((q.a - q.b).norm() > 1e-6);
        }
    }
}

use rand::Rng;

proptest! {
    #[test]
    fn moduli_preserved(seed in any::<u64>()) {
        let mut r = rng(seed);
        for lattice in [Lattice::Line, Lattice::HalfLine] {
            let spec = WalkSpec::new(lattice, random_coin(&mut r), random_coin(&mut r));
            let p = defect_params(&spec).unwrap();
            prop_assert!((p.a.norm() - spec.coin.c21().norm()).abs() < 1e-12);
            prop_assert!((p.b.norm() - spec.defect.c21().norm()).abs() < 1e-12);
            prop_assert!((p.omega.norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn hat_preserves_moduli_and_inverts(seed in any::<u64>(), site in -6i64..6) {
        let mut r = rng(seed);
        for lattice in [Lattice::Line, Lattice::HalfLine] {
            let spec = WalkSpec::new(lattice, random_coin(&mut r), random_coin(&mut r));
            let q = random_qubit(&mut r);
            let k = if lattice == Lattice::HalfLine { site.abs() } else { site };
            let h = hat_qubit(&q, k, &spec).unwrap();
            prop_assert!((h.alpha.norm() - q.alpha.norm()).abs() < 1e-14);
            prop_assert!((h.beta.norm() - q.beta.norm()).abs() < 1e-14);
            prop_assert!((h.norm_sqr() - 1.0).abs() < 1e-12);
            let back = unhat_qubit(&h, k, &spec).unwrap();
            prop_assert!((back.alpha - q.alpha).norm() < 1e-14);
            prop_assert!((back.beta - q.beta).norm() < 1e-14);
        }
    }

    #[test]
    fn substituting_the_defect_keeps_a(seed in any::<u64>()) {
        let mut r = rng(seed);
        let spec = WalkSpec::new(Lattice::Line, random_coin(&mut r), random_coin(&mut r));
        let same = WalkSpec::constant(Lattice::Line, spec.coin);
        let p = defect_params(&spec).unwrap();
        let q = defect_params(&same).unwrap();
        prop_assert!((q.a - q.b).norm() < 1e-12);
        prop_assert!((p.a.norm() - q.a.norm()).abs() < 1e-12);
    }
}

#[test]
fn halfline_rejects_negative_sites() {
    let spec = WalkSpec::constant(Lattice::HalfLine, Coin::hadamard());
    assert_eq!(
        hat_qubit(&Qubit::up(), -1, &spec),
        Err(Error::InvalidSite(-1))
    );
}
