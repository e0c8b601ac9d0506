#![allow(dead_code)]

use num_complex::Complex64 as C64;
use qwalk_core::{Coin, DefectParams, Lattice, Qubit, WalkSpec};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `diag(e^{iχ1}, e^{iχ2}) R(θ) diag(e^{iψ1}, e^{iψ2})` with `θ` kept away from 0 and π/2.
pub fn random_coin(rng: &mut impl Rng) -> Coin {
    let th: f64 = rng.gen_range(0.1..1.45);
    let ph: [f64; 4] = std::array::from_fn(|_| rng.gen_range(-PI..PI));
    let (c, s) = (th.cos(), th.sin());
    let e = |x: f64| C64::from_polar(1.0, x);
    Coin::new([
        [e(ph[0] + ph[2]) * c, -e(ph[0] + ph[3]) * s],
        [e(ph[1] + ph[2]) * s, e(ph[1] + ph[3]) * c],
    ])
    .expect("random coin is unitary")
}

pub fn random_qubit(rng: &mut impl Rng) -> Qubit {
    let v: [f64; 4] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
    Qubit::normalized(C64::new(v[0], v[1]), C64::new(v[2], v[3])).expect("nonzero qubit")
}

pub fn random_disk(rng: &mut impl Rng, r_max: f64) -> C64 {
    let r = r_max * rng.gen_range(0.0f64..1.0).sqrt();
    C64::from_polar(r, rng.gen_range(-PI..PI))
}

pub fn random_spec(rng: &mut impl Rng, lattice: Lattice) -> WalkSpec {
    WalkSpec::new(lattice, random_coin(rng), random_coin(rng))
}

/// A random walk whose reduced parameters satisfy `0.1 ≤ |a| ≤ 0.9`, `|b| ≤ 0.9`.
pub fn random_bounded_spec(rng: &mut impl Rng, lattice: Lattice) -> (WalkSpec, DefectParams) {
    loop {
        let spec = random_spec(rng, lattice);
        let p = qwalk_core::defect_params(&spec).expect("non-diagonal coin");
        if p.a.norm() >= 0.1 && p.a.norm() <= 0.9 && p.b.norm() <= 0.9 {
            return (spec, p);
        }
    }
}
