//! Independent cross-checks: Wiener averages, moments by quadrature, dense brute force.

use crate::cmv::{basis_index, coin_action_matrix, required_dimension};
use crate::coin::{DefectParams, Lattice, Qubit, WalkSpec, C64};
use crate::error::{Error, Result};
use crate::halfline::halfline_roots;
use crate::line::classify_line;
use crate::quadrature::integrate_off_gamma;
use crate::schur::{weight_halfline_unchecked, weight_line_unchecked, Mat2};

pub const BRUTE_FORCE_MAX_STEPS: usize = 64;

/// Moments `μ_n`, `n ≥ 0`, of a probability measure on 𝕋.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentSequence {
    pub values: Vec<C64>,
}

/// `(1/(2N+1)) Σ_{|n|≤N} |μ_n|²` using `μ_{−n} = conj(μ_n)`.
///
/// Converges to `Σ_z μ({z})²`. Requires `N ≥ 1` and `N < values.len()`.
pub fn wiener_average(seq: &MomentSequence, n: usize) -> f64 {
    let n = n.min(seq.values.len().saturating_sub(1)).max(1);
    let head = seq.values.first().map_or(0.0, |v| v.norm_sqr());
    let tail: f64 = seq.values[1..=n].iter().map(|v| v.norm_sqr()).sum();
    (head + 2.0 * tail) / (2 * n + 1) as f64
}

/// Moment of the walk's measure at the origin, `∫ zⁿ dμ`, from the hatted weight
/// and atoms rotated by `e^{inϑ}`. On ℤ the result is the 2×2 block; on ℤ₊ entry `[0][0]`.
pub fn moment_by_quadrature(p: &DefectParams, n: usize, lattice: Lattice) -> Result<Mat2> {
    let zero = C64::new(0.0, 0.0);
    let rot = C64::from_polar(1.0, n as f64 * p.vartheta);
    let (a, b, omega) = (p.a, p.b, p.omega);
    let mut out = [[zero; 2]; 2];
    if a.norm() == 0.0 {
        return Err(Error::ZeroA);
    }
    match lattice {
        Lattice::HalfLine => {
            let [ac] = integrate_off_gamma(a, |t| {
                [C64::from_polar(weight_halfline_unchecked(a, b, t), n as f64 * t)]
            })?;
            let atoms: C64 = halfline_roots(a, b)
                .iter()
                .map(|r| r.mu * r.z0.powu(n as u32))
                .sum();
            out[0][0] = rot * (ac + atoms);
        }
        Lattice::Line => {
            let w = integrate_off_gamma(a, |t| {
                let m = weight_line_unchecked(a, b, omega, t);
                let e = C64::from_polar(1.0, n as f64 * t);
                [m[0][0] * e, m[0][1] * e, m[1][0] * e, m[1][1] * e]
            })?;
            let mut acc = [[w[0], w[1]], [w[2], w[3]]];
            for pt in classify_line(a, b, omega).points {
                let zn = pt.z0.powu(n as u32);
                let mm = pt.mass_matrix();
                for i in 0..2 {
                    for j in 0..2 {
                        acc[i][j] += zn * mm[i][j];
                    }
                }
            }
            for i in 0..2 {
                for j in 0..2 {
                    out[i][j] = rot * acc[i][j];
                }
            }
        }
    }
    Ok(out)
}

/// Return probability by dense matrix powers of the coin-action matrix.
pub fn brute_force_return(spec: &WalkSpec, site: i64, q: &Qubit, n: usize) -> Result<f64> {
    if n > BRUTE_FORCE_MAX_STEPS {
        return Err(Error::TooLarge {
            steps: n,
            max: BRUTE_FORCE_MAX_STEPS,
        });
    }
    let lattice = spec.lattice;
    let dim = required_dimension(lattice, site, n);
    let dense = coin_action_matrix(spec, dim)?.to_dense();
    let up = basis_index(lattice, site, true).ok_or(Error::InvalidSite(site))?;
    let down = basis_index(lattice, site, false).ok_or(Error::InvalidSite(site))?;
    let zero = C64::new(0.0, 0.0);
    let mut power: Vec<Vec<C64>> = (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| if i == j { C64::new(1.0, 0.0) } else { zero })
                .collect()
        })
        .collect();
    for _ in 0..n {
        let mut next = vec![vec![zero; dim]; dim];
        for i in 0..dim {
            for k in 0..dim {
                let x = power[i][k];
                if x == zero {
                    continue;
                }
                for j in 0..dim {
                    next[i][j] += x * dense[k][j];
                }
            }
        }
        power = next;
    }
    let amp = |target: usize| q.alpha * power[up][target] + q.beta * power[down][target];
    Ok(amp(up).norm_sqr() + amp(down).norm_sqr())
}
