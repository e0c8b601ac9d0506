//! Integration over the arcs `{|sin θ| > |a|}` where the one-defect weights live.
//!
//! The weights behave like `(θ − θ₀)^{±1/2}` at the arc endpoints. Each arc is mapped
//! by `θ = c + (L/2) sin(πu/2)`, which turns those endpoint singularities into smooth
//! integrands in `u`; composite Gauss–Legendre with geometric grading toward `u = ±1`
//! handles what remains.

use std::f64::consts::{FRAC_PI_2, PI};
use std::num::NonZeroUsize;

use gauss_quad::GaussLegendre;

use crate::coin::C64;
use crate::error::{Error, Result};

const ORDER: usize = 16;
const BASE_PANELS: usize = 16;
const GRADING_LEVELS: i32 = 12;
pub const TOLERANCE: f64 = 1e-6;

/// The two open arcs of `𝕋 ∖ Γ_a` as `(θ_lo, θ_hi)`.
pub fn off_gamma_arcs(a: C64) -> [(f64, f64); 2] {
    let s = a.norm().min(1.0).asin();
    [(s, PI - s), (PI + s, 2.0 * PI - s)]
}

/// Nodes and weights on `u ∈ [−1, 1]` with `panels` uniform panels plus geometric
/// grading toward both ends.
fn composite_rule(panels: usize) -> Vec<(f64, f64)> {
    let rule = GaussLegendre::new(NonZeroUsize::new(ORDER).expect("nonzero order"));
    let mut breaks: Vec<f64> = (0..=panels)
        .map(|k| -1.0 + 2.0 * k as f64 / panels as f64)
        .collect();
    for lvl in 1..=GRADING_LEVELS {
        let d = 2.0 * 0.5f64.powi(lvl) / panels as f64;
        breaks.push(-1.0 + d);
        breaks.push(1.0 - d);
    }
    breaks.sort_by(f64::total_cmp);
    breaks.dedup_by(|x, y| (*x - *y).abs() < 1e-15);
    let mut out = Vec::with_capacity(breaks.len() * ORDER);
    for pair in breaks.windows(2) {
        let (lo, hi) = (pair[0], pair[1]);
        let half = 0.5 * (hi - lo);
        let mid = 0.5 * (hi + lo);
        for &(x, w) in rule.as_node_weight_pairs() {
            out.push((mid + half * x, half * w));
        }
    }
    out
}

fn integrate_with<const N: usize>(
    a: C64,
    panels: usize,
    f: &impl Fn(f64) -> [C64; N],
) -> [C64; N] {
    let rule = composite_rule(panels);
    let mut acc = [C64::new(0.0, 0.0); N];
    for (lo, hi) in off_gamma_arcs(a) {
        let c = 0.5 * (lo + hi);
        let half = 0.5 * (hi - lo);
        for &(u, w) in &rule {
            let theta = c + half * (FRAC_PI_2 * u).sin();
            let jac = half * FRAC_PI_2 * (FRAC_PI_2 * u).cos();
            if jac <= 0.0 {
                continue;
            }
            let v = f(theta);
            for (s, x) in acc.iter_mut().zip(v) {
                *s += x * (w * jac);
            }
        }
    }
    for s in &mut acc {
        *s /= 2.0 * PI;
    }
    acc
}

/// `∫ f(θ) dθ/2π` over `𝕋 ∖ Γ_a`, certified by comparison with doubled panel count.
pub fn integrate_off_gamma<const N: usize>(
    a: C64,
    f: impl Fn(f64) -> [C64; N],
) -> Result<[C64; N]> {
    let coarse = integrate_with(a, BASE_PANELS, &f);
    let fine = integrate_with(a, 2 * BASE_PANELS, &f);
    let estimate = coarse
        .iter()
        .zip(&fine)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max);
    if estimate > TOLERANCE || !estimate.is_finite() {
        return Err(Error::QuadratureNotConverged { estimate });
    }
    Ok(fine)
}

/// Real-valued convenience wrapper.
pub fn integrate_off_gamma_real(a: C64, f: impl Fn(f64) -> f64) -> Result<f64> {
    Ok(integrate_off_gamma(a, |t| [C64::new(f(t), 0.0)])?[0].re)
}
