//! Schur and Carathéodory functions of the one-defect measures.
//!
//! Everything here lives in the rotated ("hatted") frame: the walk's measure is
//! `dμ(z) = dμ̂(e^{−iϑ}z)` with `μ̂` the measure built from `(a, b, ω)`.

use serde::{Deserialize, Serialize};

use crate::coin::{DefectParams, Lattice, C64, I};
use crate::error::{Error, Result};

const ONE: C64 = C64::new(1.0, 0.0);
const BRANCH_TOL: f64 = 1e-12;

/// A Schur function value together with the point where it was evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SchurEval {
    pub value: C64,
    pub location: C64,
}

/// `Δ_a(z) = (z² − 1)² + 4|a|²z²`.
pub fn delta_a(a: C64, z: C64) -> C64 {
    let z2 = z * z;
    (z2 - 1.0) * (z2 - 1.0) + 4.0 * a.norm_sqr() * z2
}

/// `z_a = ρ_a + i|a|`, the branch point of `√Δ_a` in the first quadrant.
pub fn z_a(a: C64) -> C64 {
    C64::new((1.0 - a.norm_sqr()).sqrt(), a.norm())
}

/// The branch of `√Δ_a` analytic on the disk with value 1 at the origin.
///
/// Uses the factorization `Δ_a(z) = (1 − z² conj(z_a)²)(1 − z² z_a²)`; each factor has
/// nonnegative real part on the closed disk, so principal roots never cross a cut.
pub fn sqrt_delta_a(a: C64, z: C64) -> C64 {
    let za = z_a(a);
    let z2 = z * z;
    (ONE - z2 * za.conj() * za.conj()).sqrt() * (ONE - z2 * za * za).sqrt()
}

fn fa_value(a: C64, z: C64) -> C64 {
    2.0 * a / (ONE - z * z + sqrt_delta_a(a, z))
}

/// `f_a(z) = (z² − 1 + √Δ_a(z)) / (2 ā z²)`, the Schur function with parameters `(a, 0, a, 0, …)`.
///
/// Evaluated as `2a / (1 − z² + √Δ_a(z))`, which is regular at `z = 0`.
pub fn f_a(a: C64, z: C64) -> Result<SchurEval> {
    if a.norm() == 0.0 {
        return Err(Error::ZeroA);
    }
    Ok(SchurEval {
        value: fa_value(a, z),
        location: z,
    })
}

/// `f_a(e^{iθ})` from the closed boundary formula.
pub fn f_a_boundary(a: C64, theta: f64) -> Result<SchurEval> {
    if a.norm() == 0.0 {
        return Err(Error::ZeroA);
    }
    Ok(SchurEval {
        value: fa_boundary_value(a, theta),
        location: C64::from_polar(1.0, theta),
    })
}

fn fa_boundary_value(a: C64, theta: f64) -> C64 {
    let (s, c) = theta.sin_cos();
    let r2 = a.norm_sqr();
    let gap = r2 - s * s;
    let root = if gap >= 0.0 {
        C64::new(c.signum() * gap.sqrt(), 0.0)
    } else {
        C64::new(0.0, -s.signum() * (-gap).sqrt())
    };
    C64::from_polar(1.0, -theta) / a.conj() * (root + I * s)
}

fn fab_from_fa(b: C64, z: C64, fa: C64) -> C64 {
    let t = z * z * fa;
    (t + b) / (ONE + b.conj() * t)
}

/// `f_{a,b}(z) = (z² f_a + b) / (1 + b̄ z² f_a)`, parameters `(b, 0, a, 0, a, …)`.
pub fn f_ab(a: C64, b: C64, z: C64) -> Result<SchurEval> {
    let fa = f_a(a, z)?.value;
    Ok(SchurEval {
        value: fab_from_fa(b, z, fa),
        location: z,
    })
}

pub fn f_ab_boundary(a: C64, b: C64, theta: f64) -> Result<SchurEval> {
    let fa = f_a_boundary(a, theta)?.value;
    let z = C64::from_polar(1.0, theta);
    Ok(SchurEval {
        value: fab_from_fa(b, z, fa),
        location: z,
    })
}

fn check_param(alpha: C64) -> Result<()> {
    if alpha.norm() < 1.0 {
        Ok(())
    } else {
        Err(Error::ParameterOutOfDisk {
            name: "alpha",
            value: alpha.norm(),
        })
    }
}

/// One Schur step: `f_{k+1}(z) = (f_k(z) − α) / (z (1 − ᾱ f_k(z)))`.
pub fn schur_step(fk: C64, alpha: C64, z: C64) -> Result<C64> {
    check_param(alpha)?;
    Ok((fk - alpha) / (z * (ONE - alpha.conj() * fk)))
}

/// Inverse Schur step: `f_k(z) = (z f_{k+1}(z) + α) / (1 + ᾱ z f_{k+1}(z))`.
pub fn schur_inverse_step(fk1: C64, alpha: C64, z: C64) -> Result<C64> {
    check_param(alpha)?;
    let t = z * fk1;
    Ok((t + alpha) / (ONE + alpha.conj() * t))
}

/// Value at `z` of the Schur function whose first parameters are `params`
/// and whose remaining iterate equals `tail` at `z`.
pub fn schur_from_parameters(params: &[C64], tail: C64, z: C64) -> Result<C64> {
    params
        .iter()
        .rev()
        .try_fold(tail, |f, &alpha| schur_inverse_step(f, alpha, z))
}

/// `g_{a,b}(z) = z² f_a(z) f_{a,b}(z)`; mass points on the line solve `g = 1`.
pub fn g_ab(a: C64, b: C64, z: C64) -> Result<C64> {
    let fa = f_a(a, z)?.value;
    Ok(z * z * fa * fab_from_fa(b, z, fa))
}

/// `h_{a,b}(z) = z f_{a,b}(z)`; mass points on the half-line solve `h = 1`.
pub fn h_ab(a: C64, b: C64, z: C64) -> Result<C64> {
    Ok(z * f_ab(a, b, z)?.value)
}

pub fn g_ab_boundary(a: C64, b: C64, theta: f64) -> Result<C64> {
    let z = C64::from_polar(1.0, theta);
    let fa = f_a_boundary(a, theta)?.value;
    Ok(z * z * fa * fab_from_fa(b, z, fa))
}

pub fn h_ab_boundary(a: C64, b: C64, theta: f64) -> Result<C64> {
    let z = C64::from_polar(1.0, theta);
    Ok(z * f_ab_boundary(a, b, theta)?.value)
}

/// `Γ_a` membership: `|sin θ| ≤ |a|`.
pub fn in_gamma(a: C64, theta: f64) -> bool {
    theta.sin().abs() <= a.norm()
}

/// A 2×2 complex matrix, row-major.
pub type Mat2 = [[C64; 2]; 2];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WeightValue {
    Scalar(f64),
    Matrix(Mat2),
}

/// Density of the absolutely continuous part of `μ̂` at `e^{iθ}` (w.r.t. `dθ/2π`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundaryWeight {
    pub theta: f64,
    pub w: WeightValue,
}

fn check_branch(a: C64, theta: f64) -> Result<()> {
    if (theta.sin().abs() - a.norm()).abs() <= BRANCH_TOL {
        Err(Error::BranchPoint)
    } else {
        Ok(())
    }
}

/// Half-line weight `Re((1 + h)/(1 − h)) = (1 − |h|²)/|1 − h|²`.
pub fn weight_halfline(a: C64, b: C64, theta: f64) -> Result<f64> {
    if a.norm() == 0.0 {
        return Err(Error::ZeroA);
    }
    check_branch(a, theta)?;
    Ok(weight_halfline_unchecked(a, b, theta))
}

pub(crate) fn weight_halfline_unchecked(a: C64, b: C64, theta: f64) -> f64 {
    if in_gamma(a, theta) {
        return 0.0;
    }
    let z = C64::from_polar(1.0, theta);
    let h = z * fab_from_fa(b, z, fa_boundary_value(a, theta));
    ((1.0 - h.norm_sqr()) / (ONE - h).norm_sqr()).max(0.0)
}

/// Line weight `(F + F†)/2` with
/// `F = (1/(1 − g)) [[1 + g, 2zωf_a], [2zω̄f_{a,b}, 1 + g]]`.
pub fn weight_line(a: C64, b: C64, omega: C64, theta: f64) -> Result<Mat2> {
    if a.norm() == 0.0 {
        return Err(Error::ZeroA);
    }
    check_branch(a, theta)?;
    Ok(weight_line_unchecked(a, b, omega, theta))
}

pub(crate) fn weight_line_unchecked(a: C64, b: C64, omega: C64, theta: f64) -> Mat2 {
    let zero = C64::new(0.0, 0.0);
    if in_gamma(a, theta) {
        return [[zero; 2]; 2];
    }
    let z = C64::from_polar(1.0, theta);
    let fa = fa_boundary_value(a, theta);
    let fb = fab_from_fa(b, z, fa);
    let g = z * z * fa * fb;
    let s = ONE / (ONE - g);
    let f = [
        [(ONE + g) * s, 2.0 * z * omega * fa * s],
        [2.0 * z * omega.conj() * fb * s, (ONE + g) * s],
    ];
    let mut w = [[zero; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            w[i][j] = 0.5 * (f[i][j] + f[j][i].conj());
        }
    }
    w
}

/// Weight of the hatted measure for the given lattice.
pub fn weight(lattice: Lattice, p: &DefectParams, theta: f64) -> Result<BoundaryWeight> {
    let w = match lattice {
        Lattice::HalfLine => WeightValue::Scalar(weight_halfline(p.a, p.b, theta)?),
        Lattice::Line => WeightValue::Matrix(weight_line(p.a, p.b, p.omega, theta)?),
    };
    Ok(BoundaryWeight { theta, w })
}
