use std::fmt::Write as _;

use qwalk_core::{classify_line, halfline_roots, Lattice, C64};
use rayon::prelude::*;

use crate::args::parse_complex;
use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    APlaneGivenB,
    BPlaneGivenA,
}

pub const MIN_GRID: usize = 8;

/// Number of mass points for `(a, b)`, or −1 when a parameter leaves the open disk.
pub fn mass_count(lattice: Lattice, a: C64, b: C64, omega: C64) -> i32 {
    if a.norm() >= 1.0 || b.norm() >= 1.0 {
        return -1;
    }
    if a.norm() == 0.0 {
        return 0;
    }
    let n = match lattice {
        Lattice::Line => classify_line(a, b, omega).points.len(),
        Lattice::HalfLine => halfline_roots(a, b).len(),
    };
    n as i32
}

/// Cell centers of an `n × n` grid over `[−1, 1]²`, row-major with `im` ascending.
pub fn grid_points(n: usize) -> Vec<C64> {
    let x = |k: usize| -1.0 + (2 * k + 1) as f64 / n as f64;
    (0..n)
        .flat_map(|i| (0..n).map(move |j| C64::new(x(j), x(i))))
        .collect()
}

pub fn region_scan(axis: Axis, lattice: Lattice, fixed: C64, omega: C64, grid: usize) -> String {
    let counts: Vec<i32> = grid_points(grid)
        .par_iter()
        .map(|&z| match axis {
            Axis::APlaneGivenB => mass_count(lattice, z, fixed, omega),
            Axis::BPlaneGivenA => mass_count(lattice, fixed, z, omega),
        })
        .collect();
    let mut s = String::from(match axis {
        Axis::APlaneGivenB => "a_re,a_im,n_mass_points\n",
        Axis::BPlaneGivenA => "b_re,b_im,n_mass_points\n",
    });
    for (z, n) in grid_points(grid).iter().zip(counts) {
        writeln!(s, "{},{},{n}", z.re, z.im).unwrap();
    }
    s
}

pub fn region(
    lattice: Lattice,
    a: Option<&str>,
    b: Option<&str>,
    omega: &str,
    grid: usize,
) -> CliResult<String> {
    if grid < MIN_GRID {
        return Err(CliError::usage("--grid", format!("must be at least {MIN_GRID}")));
    }
    let omega = parse_complex("--omega", omega)?;
    if (omega.norm() - 1.0).abs() > 1e-9 {
        return Err(CliError::usage("--omega", format!("|omega| = {} is not 1", omega.norm())));
    }
    let (axis, fixed, flag) = match (a, b) {
        (Some(a), None) => (Axis::BPlaneGivenA, parse_complex("--a", a)?, "--a"),
        (None, Some(b)) => (Axis::APlaneGivenB, parse_complex("--b", b)?, "--b"),
        _ => return Err(CliError::usage("--a", "give exactly one of --a and --b")),
    };
    if fixed.norm() >= 1.0 {
        return Err(CliError::usage(flag, "must lie in the open unit disk"));
    }
    Ok(region_scan(axis, lattice, fixed, omega, grid))
}
