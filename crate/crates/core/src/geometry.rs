//! Envelopes, limit lines and the epicycloid/epitrochoid partition of the `a`-plane on ℤ₊.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::coin::{C64, I};
use crate::error::{Error, Result};
use crate::halfline::{sigma_endpoints, z_of_zeta, zeta_of_t, Side};
use crate::schur::z_a;

const CUSP_TOL: f64 = 1e-12;
const BORDER_TOL: f64 = 1e-9;

/// `¾e^{it} − ¼e^{3it}`: `a` inside has 2 tangencies of the full envelope to 𝕋, outside 4.
pub fn epicycloid(t: f64) -> C64 {
    0.75 * C64::from_polar(1.0, t) - 0.25 * C64::from_polar(1.0, 3.0 * t)
}

fn epicycloid_derivative(t: f64) -> C64 {
    0.75 * I * (C64::from_polar(1.0, t) - C64::from_polar(1.0, 3.0 * t))
}

/// `Â(t) = ½e^{it} − ½e^{3it}`, separating the localization classes `L0/L1/L2`.
pub fn epitrochoid(t: f64) -> C64 {
    0.5 * C64::from_polar(1.0, t) - 0.5 * C64::from_polar(1.0, 3.0 * t)
}

fn epitrochoid_derivative(t: f64) -> C64 {
    0.5 * I * (C64::from_polar(1.0, t) - 3.0 * C64::from_polar(1.0, 3.0 * t))
}

/// Roots of `f` on `[lo, hi)` by sign changes on `n` cells, bisected to `1e-15`.
pub fn bracketed_roots(f: impl Fn(f64) -> f64, lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let h = (hi - lo) / n as f64;
    let mut out = Vec::new();
    let mut x_prev = lo;
    let mut f_prev = f(lo);
    for k in 1..=n {
        let x = lo + k as f64 * h;
        let fx = f(x);
        if f_prev == 0.0 {
            out.push(x_prev);
        } else if f_prev * fx < 0.0 {
            let (mut x0, mut x1, mut f0) = (x_prev, x, f_prev);
            for _ in 0..200 {
                if x1 - x0 <= 1e-15 {
                    break;
                }
                let xm = 0.5 * (x0 + x1);
                let fm = f(xm);
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
            out.push(0.5 * (x0 + x1));
        }
        x_prev = x;
        f_prev = fx;
    }
    out
}

/// Cusps of the epicycloid: zeros of `a′(t) e^{−2it}`, which is real along the curve.
pub fn epicycloid_cusps() -> Vec<C64> {
    let speed = |t: f64| (epicycloid_derivative(t) * C64::from_polar(1.0, -2.0 * t)).re;
    let lo = -0.5;
    bracketed_roots(speed, lo, lo + 2.0 * PI, 997)
        .into_iter()
        .map(epicycloid)
        .collect()
}

/// Transversal self-intersections of `Â`.
///
/// `Â(−t) = conj(Â(t))`, so crossings of the pair `t, −t` lie on the real axis: collect the
/// real-axis crossings and keep the points visited twice with non-parallel tangents.
pub fn epitrochoid_self_intersections() -> Vec<C64> {
    let lo = -0.3;
    let ts = bracketed_roots(|t| epitrochoid(t).im, lo, lo + 2.0 * PI, 1009);
    let mut out: Vec<C64> = Vec::new();
    for (i, &t1) in ts.iter().enumerate() {
        for &t2 in &ts[i + 1..] {
            let (p1, p2) = (epitrochoid(t1), epitrochoid(t2));
            if (p1 - p2).norm() > 1e-9 {
                continue;
            }
            let (d1, d2) = (epitrochoid_derivative(t1), epitrochoid_derivative(t2));
            let cross = (d1.conj() * d2).im / (d1.norm() * d2.norm());
            if cross.abs() > 1e-6 {
                let p = 0.5 * (p1 + p2);
                if !out.iter().any(|q| (q - p).norm() < 1e-9) {
                    out.push(p);
                }
            }
        }
    }
    out.sort_by(|x, y| x.re.total_cmp(&y.re));
    out
}

/// Winding number of a closed parametrized curve around `p`.
pub fn winding_number(curve: impl Fn(f64) -> C64, p: C64, samples: usize) -> i32 {
    let mut total = 0.0;
    let mut prev = curve(0.0) - p;
    for k in 1..=samples {
        let cur = curve(2.0 * PI * k as f64 / samples as f64) - p;
        total += (cur / prev).arg();
        prev = cur;
    }
    (total / (2.0 * PI)).round() as i32
}

/// Distance from `p` to the epitrochoid, by sampling plus golden-section refinement.
pub fn distance_to_epitrochoid(p: C64) -> f64 {
    let n = 4096;
    let d = |t: f64| (epitrochoid(t) - p).norm();
    let h = 2.0 * PI / n as f64;
    let mut best = f64::INFINITY;
    let mut candidates: Vec<f64> = (0..n).map(|k| k as f64 * h).collect();
    candidates.sort_by(|x, y| d(*x).total_cmp(&d(*y)));
    for &t in candidates.iter().take(8) {
        let (mut x0, mut x1) = (t - h, t + h);
        let g = 0.5 * (5f64.sqrt() - 1.0);
        for _ in 0..80 {
            let m1 = x1 - g * (x1 - x0);
            let m2 = x0 + g * (x1 - x0);
            if d(m1) < d(m2) {
                x1 = m2;
            } else {
                x0 = m1;
            }
        }
        best = best.min(d(0.5 * (x0 + x1)));
    }
    best
}

/// A point of the exterior envelope `E^±_e(a)` at parameter `t` (with `ζ = (a/|a|)e^{it}`).
///
/// `Plus` pairs with lines through `ζ` in direction `i√(ζ−a)`, `Minus` with `√(ζ−a)`.
pub fn envelope_point(a: C64, t: f64, side: Side) -> Result<C64> {
    if a.norm() == 0.0 {
        return Err(Error::ZeroA);
    }
    let s = match side {
        Side::GammaPlus => 1.0,
        Side::GammaMinus => -1.0,
    };
    let zeta = zeta_of_t(a, t);
    let big_a = zeta - a;
    let x = big_a + s * big_a.norm();
    let y = zeta.conj() + s * I * (a.conj() * zeta).im / big_a.norm();
    let denominator = (x * y).re;
    if denominator.abs() < CUSP_TOL {
        return Err(Error::CuspParameter { denominator });
    }
    Ok(zeta + I * (x * zeta.conj()).im / denominator * x)
}

/// Direction of the family line through `ζ`.
pub fn family_direction(a: C64, zeta: C64, side: Side) -> C64 {
    let r = (zeta - a).sqrt();
    match side {
        Side::GammaPlus => I * r,
        Side::GammaMinus => r,
    }
}

/// A chord of the unit circle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Chord {
    pub from: C64,
    pub to: C64,
    pub side: Side,
}

/// The four limit lines: `ζ_a^+ → ±z_a` and `ζ_a^- → ±z̄_a`.
pub fn limit_lines(a: C64) -> Result<[Chord; 4]> {
    if a.norm() == 0.0 {
        return Err(Error::ZeroA);
    }
    let (zp, zm) = sigma_endpoints(a);
    let za = z_a(a);
    debug_assert!((z_of_zeta(a, zp).conj() - za).norm() < 1e-9);
    Ok([
        Chord {
            from: zp,
            to: za,
            side: Side::GammaPlus,
        },
        Chord {
            from: zp,
            to: -za,
            side: Side::GammaMinus,
        },
        Chord {
            from: zm,
            to: za.conj(),
            side: Side::GammaPlus,
        },
        Chord {
            from: zm,
            to: -za.conj(),
            side: Side::GammaMinus,
        },
    ])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LLabel {
    L0,
    L1,
    L2,
}

/// Tangencies of the closed exterior envelope to 𝕋, as `open + limit` counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TangentProfile {
    /// Inside a loop of `Â`: one tangency.
    T01,
    /// Inside `Â`, outside the loops: two.
    T11,
    /// Outside `Â`: three.
    T12,
    /// On a loop of `Â` (not a self-intersection).
    T11Bar,
    /// At a self-intersection `±1/√2`.
    T12Bar,
    /// On `Â` outside the loops.
    T111Bar,
}

impl TangentProfile {
    pub fn exterior_tangents(self) -> usize {
        match self {
            TangentProfile::T01 => 1,
            TangentProfile::T11 | TangentProfile::T11Bar => 2,
            TangentProfile::T12 | TangentProfile::T12Bar | TangentProfile::T111Bar => 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionClassZplus {
    pub l_label: LLabel,
    pub limit_lines: Vec<Chord>,
    /// Limit lines crossing the open arc `𝕋 ∖ Σ̄_a`.
    pub crossing_lines: Vec<Chord>,
    pub tangent_profile: TangentProfile,
}

/// Points `ζ ∈ 𝕋` where the full envelope `E(a)` is tangent to 𝕋: `Im(ζ − āζ²) = 0`.
pub fn envelope_tangent_points(a: C64) -> Vec<C64> {
    bracketed_roots(
        |t| {
            let z = C64::from_polar(1.0, t);
            (z - a.conj() * z * z).im
        },
        -0.123,
        -0.123 + 2.0 * PI,
        4096,
    )
    .into_iter()
    .map(|t| C64::from_polar(1.0, t))
    .collect()
}

/// Tangencies lying on the exterior envelope (`ζ ∈ Σ_a`).
pub fn exterior_tangent_points(a: C64) -> Vec<C64> {
    envelope_tangent_points(a)
        .into_iter()
        .filter(|z| (a.conj() * z).re < a.norm_sqr())
        .collect()
}

fn crossing_chords(a: C64) -> Result<Vec<Chord>> {
    let r2 = a.norm_sqr();
    let mut out: Vec<Chord> = Vec::new();
    let (zp, zm) = sigma_endpoints(a);
    for ch in limit_lines(a)? {
        let gap = (a.conj() * ch.to).re - r2;
        let crosses = gap > 1e-12;
        let coincident_edge = gap.abs() <= 1e-12 && {
            let other = if (ch.from - zp).norm() < 1e-12 { zm } else { zp };
            (ch.to - other).norm() < 1e-9
        };
        if crosses || coincident_edge {
            let dup = out.iter().any(|c| {
                ((c.from - ch.to).norm() < 1e-9 && (c.to - ch.from).norm() < 1e-9)
                    || ((c.from - ch.from).norm() < 1e-9 && (c.to - ch.to).norm() < 1e-9)
            });
            if !dup {
                out.push(ch);
            }
        }
    }
    Ok(out)
}

fn in_loop_parameter(t: f64) -> bool {
    let c = (2.0 * t).cos();
    c >= 0.0
}

/// Tangent profile including the borderline classes on `Â`.
pub fn tangent_profile(a: C64) -> TangentProfile {
    let dist = distance_to_epitrochoid(a);
    if dist <= BORDER_TOL {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        if (a - s).norm() <= BORDER_TOL || (a + s).norm() <= BORDER_TOL {
            return TangentProfile::T12Bar;
        }
        let n = 4096;
        let t = (0..n)
            .map(|k| 2.0 * PI * k as f64 / n as f64)
            .min_by(|x, y| {
                (epitrochoid(*x) - a)
                    .norm()
                    .total_cmp(&(epitrochoid(*y) - a).norm())
            })
            .unwrap_or(0.0);
        return if in_loop_parameter(t) {
            TangentProfile::T11Bar
        } else {
            TangentProfile::T111Bar
        };
    }
    match winding_number(epitrochoid, a, 4096).abs() {
        0 => TangentProfile::T12,
        1 => TangentProfile::T11,
        _ => TangentProfile::T01,
    }
}

/// L-class of `a`, from the number of limit lines crossing `𝕋 ∖ Σ̄_a`.
pub fn classify_region_halfline(a: C64) -> Result<RegionClassZplus> {
    if a.norm() == 0.0 {
        return Err(Error::ZeroA);
    }
    let distance = distance_to_epitrochoid(a);
    if distance <= BORDER_TOL {
        return Err(Error::BorderlineA { distance });
    }
    let crossing = crossing_chords(a)?;
    let l_label = match crossing.len() {
        0 => LLabel::L0,
        1 => LLabel::L1,
        _ => LLabel::L2,
    };
    Ok(RegionClassZplus {
        l_label,
        limit_lines: limit_lines(a)?.to_vec(),
        crossing_lines: crossing,
        tangent_profile: tangent_profile(a),
    })
}

/// L-class from the winding number of `Â` around `a` (0 → L0, 1 → L1, 2 → L2).
pub fn l_label_by_winding(a: C64) -> LLabel {
    match winding_number(epitrochoid, a, 4096).abs() {
        0 => LLabel::L0,
        1 => LLabel::L1,
        _ => LLabel::L2,
    }
}
