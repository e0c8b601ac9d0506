//! Localization on ℤ₊: mass points of `μ_{a,b}` via the orthogonal line families on `Σ_a`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::coin::{defect_params, hat_qubit, Qubit, WalkSpec, C64};
use crate::error::{Error, Result};

const GRID: usize = 4096;
const T_MARGIN: f64 = 1e-9;
const T_TOL: f64 = 1e-14;

/// Which family of lines carries the root: `(ζ−b)²/(ζ−a) < 0` or `> 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    GammaPlus,
    GammaMinus,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MassPointZplus {
    pub z0: C64,
    pub zeta0: C64,
    pub side: Side,
    pub mu: f64,
}

/// The open parameter interval `cos t < |a|` of `Σ_a = {(a/|a|) e^{it}}`.
pub fn sigma_arc(a: C64) -> Result<(f64, f64)> {
    if a.norm() == 0.0 {
        return Err(Error::ZeroA);
    }
    let t0 = a.norm().min(1.0).acos();
    Ok((t0, 2.0 * PI - t0))
}

pub fn zeta_of_t(a: C64, t: f64) -> C64 {
    a / a.norm() * C64::from_polar(1.0, t)
}

/// `ζ_a^± = (a/|a|)(|a| ± iρ_a)`, the endpoints of `Σ_a`.
pub fn sigma_endpoints(a: C64) -> (C64, C64) {
    let r = a.norm();
    let rho = (1.0 - r * r).sqrt();
    let u = a / r;
    (u * C64::new(r, rho), u * C64::new(r, -rho))
}

/// Membership in the open segment `S(a) = {b ∈ 𝔻 : Re(āb) < |a|²}` cut off by the chord
/// `ζ_a^+ ζ_a^-`, where localization holds for every `a`.
pub fn in_s_region(a: C64, b: C64) -> bool {
    b.norm() < 1.0 && (a.conj() * b).re < a.norm_sqr()
}

/// `z(ζ) = (1 − āζ)/|1 − āζ|`.
pub fn z_of_zeta(a: C64, zeta: C64) -> C64 {
    let w = 1.0 - a.conj() * zeta;
    w / w.norm()
}

fn q_of(a: C64, b: C64, zeta: C64) -> C64 {
    (zeta - b) * (zeta - b) / (zeta - a)
}

/// `μ({z0}) = 1 / (1 + 2 (ρ_b²/|ζ0−b|²) / (1 − ρ_a²/|ζ0−a|²))`.
pub fn halfline_mass(a: C64, b: C64, zeta0: C64) -> Result<f64> {
    let gap = (a.conj() * zeta0).re - a.norm_sqr();
    if gap >= -1e-12 {
        return Err(Error::BoundaryZeta { gap });
    }
    let rho_a2 = 1.0 - a.norm_sqr();
    let rho_b2 = 1.0 - b.norm_sqr();
    let den = 1.0 - rho_a2 / (zeta0 - a).norm_sqr();
    Ok(1.0 / (1.0 + 2.0 * (rho_b2 / (zeta0 - b).norm_sqr()) / den))
}

/// All mass points of `μ_{a,b}`: roots `t` of `Im q(t) = 0`, `q = (ζ−b)²/(ζ−a)`, on `Σ_a`.
///
/// Sign changes on a uniform grid are bisected to `|Δt| ≤ 1e-14`; the arc endpoints
/// are excluded with a margin of `1e-9` since they are never mass points.
pub fn halfline_roots(a: C64, b: C64) -> Vec<MassPointZplus> {
    let Ok((lo, hi)) = sigma_arc(a) else {
        return Vec::new();
    };
    let (lo, hi) = (lo + T_MARGIN, hi - T_MARGIN);
    let phase = |t: f64| {
        let q = q_of(a, b, zeta_of_t(a, t));
        q.im / q.norm()
    };
    let step = (hi - lo) / GRID as f64;
    let mut roots = Vec::new();
    let mut t_prev = lo;
    let mut f_prev = phase(lo);
    for k in 1..=GRID {
        let t = if k == GRID { hi } else { lo + k as f64 * step };
        let f = phase(t);
        let bracket = if f_prev == 0.0 {
            Some((t_prev, t_prev))
        } else if f_prev * f < 0.0 {
            Some((t_prev, t))
        } else {
            None
        };
        if let Some((mut x0, mut x1)) = bracket {
            let mut f0 = phase(x0);
            while x1 - x0 > T_TOL {
                let xm = 0.5 * (x0 + x1);
                let fm = phase(xm);
                if fm == 0.0 {
                    x0 = xm;
                    x1 = xm;
                    break;
                }
                if f0 * fm < 0.0 {
                    x1 = xm;
                } else {
                    x0 = xm;
                    f0 = fm;
                }
            }
            let zeta = zeta_of_t(a, 0.5 * (x0 + x1));
            let q = q_of(a, b, zeta);
            let (side, sgn) = if q.re < 0.0 {
                (Side::GammaPlus, 1.0)
            } else {
                (Side::GammaMinus, -1.0)
            };
            if let Ok(mu) = halfline_mass(a, b, zeta) {
                let root = MassPointZplus {
                    z0: sgn * z_of_zeta(a, zeta),
                    zeta0: zeta,
                    side,
                    mu,
                };
                if !roots
                    .iter()
                    .any(|r: &MassPointZplus| (r.zeta0 - zeta).norm() < 1e-10)
                {
                    roots.push(root);
                }
            }
        }
        t_prev = t;
        f_prev = f;
    }
    roots
}

/// Amplitudes `c_z`, `d_z` of the asymptotic return amplitudes at the origin, so that
/// `p(n) ~ |Σ zⁿ c_z|² + |Σ zⁿ d_z|²` in the hatted frame.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ArpTerm {
    pub z: C64,
    pub c: C64,
    pub d: C64,
}

pub fn arp_terms(b: C64, roots: &[MassPointZplus], hatted: &Qubit) -> Vec<ArpTerm> {
    let rho_b = (1.0 - b.norm_sqr()).sqrt();
    roots
        .iter()
        .map(|r| {
            let v = hatted.alpha - hatted.beta * rho_b / (r.zeta0.conj() - b.conj());
            ArpTerm {
                z: r.z0,
                c: r.mu * v,
                d: -r.mu * (rho_b / (r.zeta0 - b)) * v,
            }
        })
        .collect()
}

/// `|Σ (e^{iϑ}z)ⁿ c_z|² + |Σ (e^{iϑ}z)ⁿ d_z|²`; pass `vartheta = 0` for the hatted frame.
pub fn arp_sequence_value(terms: &[ArpTerm], n: usize, vartheta: f64) -> f64 {
    let rot = C64::from_polar(1.0, vartheta);
    let (mut c, mut d) = (C64::new(0.0, 0.0), C64::new(0.0, 0.0));
    for t in terms {
        let zn = (rot * t.z).powu(n as u32);
        c += zn * t.c;
        d += zn * t.d;
    }
    c.norm_sqr() + d.norm_sqr()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ArpMode {
    Cesaro,
    Sequence,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum ArpHalfline {
    /// A limit (single root, no root, or the Cesàro mean).
    Value(f64),
    /// The oscillating asymptotic sequence, see [`arp_sequence_value`].
    Sequence(Vec<ArpTerm>),
}

/// `μ²(1 + ρ_b²/|ζ0−b|²) |α̂ − β̂ρ_b/(ζ̄0 − b̄)|²`, the limit for a single mass point.
pub fn single_root_limit(b: C64, root: &MassPointZplus, hatted: &Qubit) -> f64 {
    let rho_b = (1.0 - b.norm_sqr()).sqrt();
    let v = hatted.alpha - hatted.beta * rho_b / (root.zeta0.conj() - b.conj());
    let factor = 1.0 + rho_b * rho_b / (root.zeta0 - b).norm_sqr();
    root.mu * root.mu * factor * v.norm_sqr()
}

/// Asymptotic return probability at the origin for a hatted qubit.
pub fn arp_origin_halfline(a: C64, b: C64, hatted: &Qubit, mode: ArpMode) -> ArpHalfline {
    let roots = halfline_roots(a, b);
    match roots.len() {
        0 => ArpHalfline::Value(0.0),
        1 => ArpHalfline::Value(single_root_limit(b, &roots[0], hatted)),
        _ => {
            let terms = arp_terms(b, &roots, hatted);
            match mode {
                ArpMode::Cesaro => ArpHalfline::Value(
                    terms
                        .iter()
                        .map(|t| t.c.norm_sqr() + t.d.norm_sqr())
                        .sum(),
                ),
                ArpMode::Sequence => ArpHalfline::Sequence(terms),
            }
        }
    }
}

/// Cesàro limit of `p(n)` at the origin for a raw qubit.
pub fn return_limit_halfline(spec: &WalkSpec, q: &Qubit) -> Result<f64> {
    let p = match defect_params(spec) {
        Ok(p) => p,
        Err(Error::DiagonalCoin) => return Ok(0.0),
        Err(e) => return Err(e),
    };
    let hatted = hat_qubit(q, 0, spec)?;
    match arp_origin_halfline(p.a, p.b, &hatted, ArpMode::Cesaro) {
        ArpHalfline::Value(v) => Ok(v),
        ArpHalfline::Sequence(_) => unreachable!("Cesàro mode yields a value"),
    }
}

/// The hatted qubit that does not localize; exists only with exactly one mass point.
pub fn nonlocalized_qubit_halfline(b: C64, roots: &[MassPointZplus]) -> Option<Qubit> {
    if roots.len() != 1 {
        return None;
    }
    let rho_b = (1.0 - b.norm_sqr()).sqrt();
    let beta = (roots[0].zeta0.conj() - b.conj()) / rho_b;
    Qubit::normalized(C64::new(1.0, 0.0), beta).ok()
}
