//! Fixed inputs shared by the benchmarks.

use num_complex::Complex64 as C64;
use qwalk_core::{Coin, Lattice, WalkSpec};

/// Hadamard walk with a Konno phase defect at the origin.
pub fn konno_line() -> WalkSpec {
    WalkSpec::new(Lattice::Line, Coin::hadamard(), Coin::konno(std::f64::consts::PI))
}

pub fn reduced_halfline() -> WalkSpec {
    WalkSpec::from_reduced(
        Lattice::HalfLine,
        C64::new(0.5, 0.5),
        C64::new(0.5, 0.5),
        C64::new(1.0, 0.0),
    )
    .expect("valid reduced parameters")
}

/// Deterministic `(a, b)` pairs spread over the disk of radius 0.9.
pub fn parameter_pairs(n: usize) -> Vec<(C64, C64)> {
    (0..n)
        .map(|k| {
            let t = k as f64 / n as f64;
            let a = C64::from_polar(0.1 + 0.8 * t, 7.0 * t);
            let b = C64::from_polar(0.9 * (1.0 - t), -11.0 * t);
            (a, b)
        })
        .collect()
}
