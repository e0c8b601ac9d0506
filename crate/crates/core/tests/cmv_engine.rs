mod common;

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64 as C64;
use proptest::prelude::*;
use qwalk_core::cmv::{
    basis_index, required_dimension, return_probabilities_with, site_of_index, verblunsky,
};
use qwalk_core::{
    amplitude, build_lambda, build_transition, coin_action_matrix, evolve, return_probabilities,
    return_probability, Coin, Error, Lattice, Qubit, WalkSpec, WaveFunction,
};

use common::{random_coin, random_qubit, random_spec, rng};

fn max_diff(spec: &WalkSpec, dim: usize) -> f64 {
    let u = build_transition(spec, dim).unwrap().to_dense();
    let v = coin_action_matrix(spec, dim).unwrap().to_dense();
    let mut worst = 0.0f64;
    for i in 0..dim {
        for j in 0..dim {
            worst = worst.max((u[i][j] - v[i][j]).norm());
        }
    }
    worst
}

#[test]
fn basis_ordering_round_trips() {
    for lattice in [Lattice::Line, Lattice::HalfLine] {
        for idx in 0..40 {
            let (site, up) = site_of_index(lattice, idx);
            assert_eq!(basis_index(lattice, site, up), Some(idx));
        }
    }
    assert_eq!(basis_index(Lattice::HalfLine, -1, true), None);
    assert_eq!(basis_index(Lattice::Line, 0, true), Some(0));
    assert_eq!(basis_index(Lattice::Line, -1, false), Some(1));
    assert_eq!(basis_index(Lattice::Line, -1, true), Some(2));
    assert_eq!(basis_index(Lattice::Line, 0, false), Some(3));
}

#[test]
fn identity_lambda_is_trivial() {
    for lattice in [Lattice::Line, Lattice::HalfLine] {
        let spec = WalkSpec::constant(lattice, Coin::identity());
        let lam = build_lambda(&spec, 24).unwrap();
        assert!(lam.iter().all(|l| (*l - 1.0).norm() < 1e-15));
    }
}

#[test]
fn halfline_lambda_matches_closed_form() {
    let spec = WalkSpec::new(Lattice::HalfLine, Coin::hadamard(), Coin::konno(0.7));
    let (t1, t2) = (spec.defect.sigma1(), spec.defect.sigma2());
    let (s1, s2) = (spec.coin.sigma1(), spec.coin.sigma2());
    let lam = build_lambda(&spec, 8).unwrap();
    let e = |x: f64| C64::from_polar(1.0, x);
    let expected = [
        C64::new(1.0, 0.0),
        e(t2),
        e(-t1),
        e(t2 + s2),
        e(-(t1 + s1)),
        e(t2 + 2.0 * s2),
    ];
    for (l, x) in lam.iter().zip(expected) {
        assert!((l - x).norm() < 1e-14);
    }
}

#[test]
fn lambda_is_unimodular() {
    let mut r = rng(21);
    for lattice in [Lattice::Line, Lattice::HalfLine] {
        let lam = build_lambda(&random_spec(&mut r, lattice), 64).unwrap();
        assert!(lam.iter().all(|l| (l.norm() - 1.0).abs() < 1e-14));
    }
}

#[test]
fn verblunsky_coefficients_lie_in_disk() {
    let mut r = rng(22);
    for lattice in [Lattice::Line, Lattice::HalfLine] {
        let seq = verblunsky(&random_spec(&mut r, lattice), 16);
        assert!(seq.alphas.iter().all(|a| a.norm() < 1.0));
        assert!(seq.rhos().iter().all(|r| *r > 0.0));
        if lattice == Lattice::HalfLine {
            assert!(seq.alphas.iter().skip(1).step_by(2).all(|a| a.norm() == 0.0));
        }
    }
}

#[test]
fn size_is_validated() {
    let spec = WalkSpec::constant(Lattice::Line, Coin::hadamard());
    assert!(matches!(build_transition(&spec, 2), Err(Error::SizeTooSmall { .. })));
    assert!(matches!(build_transition(&spec, 7), Err(Error::SizeTooSmall { .. })));
    assert!(build_lambda(&spec, 1).is_err());
}

#[test]
fn identity_halfline_is_a_shift() {
    let spec = WalkSpec::constant(Lattice::HalfLine, Coin::identity());
    let u = build_transition(&spec, 24).unwrap();
    for i in 0..20 {
        let row: Vec<_> = u.row(i).filter(|(_, v)| v.norm() > 0.0).collect();
        assert_eq!(row.len(), 1);
        assert!((row[0].1.norm() - 1.0).abs() < 1e-15);
    }
    let dim = required_dimension(Lattice::HalfLine, 0, 3);
    let u = build_transition(&spec, dim).unwrap();
    let psi = evolve(&u, &WaveFunction::basis(dim, 0), 3).unwrap();
    let target = basis_index(Lattice::HalfLine, 3, true).unwrap();
    assert!((psi.amplitudes[target].norm() - 1.0).abs() < 1e-15);
}

#[test]
fn zero_steps_leave_state_unchanged() {
    let spec = random_spec(&mut rng(23), Lattice::Line);
    let dim = required_dimension(Lattice::Line, 0, 0);
    let u = build_transition(&spec, dim).unwrap();
    let q = random_qubit(&mut rng(24));
    let psi0 = WaveFunction::localized(Lattice::Line, dim, 0, &q).unwrap();
    assert_eq!(evolve(&u, &psi0, 0).unwrap(), psi0);
}

#[test]
fn hadamard_two_steps_by_hand() {
    let spec = WalkSpec::constant(Lattice::Line, Coin::hadamard());
    let dim = required_dimension(Lattice::Line, 0, 2);
    let u = build_transition(&spec, dim).unwrap();
    let psi = evolve(&u, &WaveFunction::basis(dim, 0), 2).unwrap();
    let at = |site: i64, up: bool| psi.amplitudes[basis_index(Lattice::Line, site, up).unwrap()];
    let half = C64::new(0.5, 0.0);
    assert!((at(2, true) - half).norm() < 1e-15);
    assert!((at(0, false) - half).norm() < 1e-15);
    assert!((at(0, true) - half).norm() < 1e-15);
    assert!((at(-2, false) + half).norm() < 1e-15);
    assert!((psi.norm_sqr() - 1.0).abs() < 1e-15);
}

#[test]
fn hadamard_block_at_origin() {
    let spec = WalkSpec::constant(Lattice::Line, Coin::hadamard());
    let u = build_transition(&spec, 8).unwrap();
    let s = FRAC_1_SQRT_2;
    let up1 = basis_index(Lattice::Line, 1, true).unwrap();
    let dn_m1 = basis_index(Lattice::Line, -1, false).unwrap();
    assert!((u.get(0, up1) - s).norm() < 1e-15);
    assert!((u.get(0, dn_m1) - s).norm() < 1e-15);
    let up0 = basis_index(Lattice::Line, 0, true).unwrap();
    let dn0 = basis_index(Lattice::Line, 0, false).unwrap();
    assert!((u.get(dn0, up1) - s).norm() < 1e-15);
    assert!((u.get(dn0, dn_m1) + s).norm() < 1e-15);
    assert_eq!(u.get(up0, up0), C64::new(0.0, 0.0));
}

#[test]
fn truncation_is_checked() {
    let spec = WalkSpec::constant(Lattice::Line, Coin::hadamard());
    let u = build_transition(&spec, 40).unwrap();
    let psi0 = WaveFunction::basis(40, 0);
    assert!(matches!(
        evolve(&u, &psi0, 100),
        Err(Error::TruncationTooSmall { .. })
    ));
    assert!(matches!(
        return_probabilities_with(&spec, 40, 0, &Qubit::up(), 100),
        Err(Error::TruncationTooSmall { .. })
    ));
}

#[test]
fn return_probability_at_time_zero() {
    let mut r = rng(25);
    for lattice in [Lattice::Line, Lattice::HalfLine] {
        let spec = random_spec(&mut r, lattice);
        let q = random_qubit(&mut r);
        assert!((return_probability(&spec, 0, &q, 0).unwrap() - 1.0).abs() < 1e-15);
    }
}

#[test]
fn konno_tail_near_limit() {
    let spec = WalkSpec::new(Lattice::Line, Coin::hadamard(), Coin::konno(PI));
    let p = return_probability(&spec, 0, &Qubit::up(), 600).unwrap();
    assert!((p - 0.64).abs() < 0.02, "p(600) = {p}");
}

#[test]
fn amplitude_basics() {
    let spec = random_spec(&mut rng(26), Lattice::HalfLine);
    assert_eq!(amplitude(&spec, 3, 3, 0).unwrap(), C64::new(1.0, 0.0));
    assert_eq!(amplitude(&spec, 3, 4, 0).unwrap(), C64::new(0.0, 0.0));
    let u = build_transition(&spec, 16).unwrap();
    for (j, k) in [(0, 0), (0, 2), (2, 1), (3, 4), (4, 6)] {
        assert!((amplitude(&spec, j, k, 1).unwrap() - u.get(j, k)).norm() < 1e-15);
    }
}

#[test]
fn probabilities_lie_in_unit_interval() {
    let mut r = rng(27);
    for lattice in [Lattice::Line, Lattice::HalfLine] {
        let spec = random_spec(&mut r, lattice);
        let site = if lattice == Lattice::Line { -3 } else { 2 };
        let probs = return_probabilities(&spec, site, &random_qubit(&mut r), 200).unwrap();
        assert!(probs.iter().all(|p| (0.0..=1.0).contains(p)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn two_constructions_agree(seed in any::<u64>(), line in any::<bool>()) {
        let lattice = if line { Lattice::Line } else { Lattice::HalfLine };
        let spec = random_spec(&mut rng(seed), lattice);
        prop_assert!(max_diff(&spec, 48) <= 1e-12);
    }

    #[test]
    fn interior_columns_orthonormal(seed in any::<u64>(), line in any::<bool>()) {
        let lattice = if line { Lattice::Line } else { Lattice::HalfLine };
        let spec = random_spec(&mut rng(seed), lattice);
        let dim = 40;
        let u = build_transition(&spec, dim).unwrap().to_dense();
        for i in 0..dim - 8 {
            for j in 0..dim - 8 {
                let dot: C64 = (0..dim).map(|k| u[k][i].conj() * u[k][j]).sum();
                let target = if i == j { 1.0 } else { 0.0 };
                prop_assert!((dot - target).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn odd_time_return_vanishes_on_line(seed in any::<u64>(), site in -4i64..4) {
        let mut r = rng(seed);
        let spec = random_spec(&mut r, Lattice::Line);
        let probs = return_probabilities(&spec, site, &random_qubit(&mut r), 61).unwrap();
        for p in probs.iter().skip(1).step_by(2) {
            prop_assert!(*p <= 1e-12);
        }
    }

    #[test]
    fn ballistic_support(seed in any::<u64>(), line in any::<bool>(), n in 1usize..60) {
        let lattice = if line { Lattice::Line } else { Lattice::HalfLine };
        let mut r = rng(seed);
        let spec = random_spec(&mut r, lattice);
        let dim = required_dimension(lattice, 0, n);
        let u = build_transition(&spec, dim).unwrap();
        let psi0 = WaveFunction::localized(lattice, dim, 0, &random_qubit(&mut r)).unwrap();
        let psi = evolve(&u, &psi0, n).unwrap();
        for (i, a) in psi.amplitudes.iter().enumerate() {
            if site_of_index(lattice, i).0.unsigned_abs() as usize > n {
                prop_assert!(a.norm() <= 1e-14);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn norm_conserved_over_1000_steps(seed in any::<u64>(), line in any::<bool>()) {
        let lattice = if line { Lattice::Line } else { Lattice::HalfLine };
        let mut r = rng(seed);
        let spec = WalkSpec::new(lattice, random_coin(&mut r), random_coin(&mut r));
        let dim = required_dimension(lattice, 0, 1000);
        let u = build_transition(&spec, dim).unwrap();
        let psi0 = WaveFunction::localized(lattice, dim, 0, &random_qubit(&mut r)).unwrap();
        let psi = evolve(&u, &psi0, 1000).unwrap();
        prop_assert!((psi.norm_sqr().sqrt() - 1.0).abs() <= 1e-10);
    }
}
