//! Localization on ℤ: mass points, masses and asymptotic return probabilities at the origin.

use serde::{Deserialize, Serialize};

use crate::coin::{defect_params, hat_qubit, DefectParams, Qubit, WalkSpec, C64, I};
use crate::error::{Error, Result};
use crate::schur::Mat2;

const DISK_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LineLabel {
    M0,
    M2Plus,
    M2Minus,
    M4,
}

impl LineLabel {
    pub fn point_count(self) -> usize {
        match self {
            LineLabel::M0 => 0,
            LineLabel::M2Plus | LineLabel::M2Minus => 2,
            LineLabel::M4 => 4,
        }
    }
}

/// An atom `m [[1, η], [η̄, 1]] δ_{z0}` of the hatted 2×2 measure.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MassPointZ {
    pub z0: C64,
    pub zeta0: C64,
    pub m: f64,
    pub eta: C64,
    pub sign: Sign,
}

impl MassPointZ {
    pub fn mass_matrix(&self) -> Mat2 {
        let m = C64::new(self.m, 0.0);
        [[m, m * self.eta], [m * self.eta.conj(), m]]
    }

    /// The partner atom at `−z0` (`m(−z) = m(z)`, `η(−z) = −η(z)`).
    pub fn reflected(&self) -> Self {
        Self {
            z0: -self.z0,
            eta: -self.eta,
            ..*self
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassZ {
    pub label: LineLabel,
    /// Closed under `z → −z`; the `Plus` pair precedes the `Minus` pair.
    pub points: Vec<MassPointZ>,
}

/// `ζ±(b) = ±√(1 − Im²b) + i Im b`.
pub fn zeta_pm(b: C64) -> (C64, C64) {
    let s = (1.0 - b.im * b.im).max(0.0).sqrt();
    (C64::new(s, b.im), C64::new(-s, b.im))
}

fn zeta_for(b: C64, sign: Sign) -> C64 {
    let (p, m) = zeta_pm(b);
    match sign {
        Sign::Plus => p,
        Sign::Minus => m,
    }
}

/// `|a − ζ±(b)/2| > 1/2`, with ties (within 1e-12) resolved to `false`.
pub fn condition_m(a: C64, b: C64, sign: Sign) -> bool {
    (a - zeta_for(b, sign) / 2.0).norm() > 0.5 + DISK_TOL
}

/// The atom at `z0 = (1 − āζ0)/|1 − āζ0|` with ζ-coordinate `ζ0`.
pub fn mass_at(a: C64, b: C64, omega: C64, zeta0: C64) -> Result<MassPointZ> {
    mass_at_signed(a, b, omega, zeta0, if zeta0.re >= 0.0 { Sign::Plus } else { Sign::Minus })
}

fn mass_at_signed(a: C64, b: C64, omega: C64, zeta0: C64, sign: Sign) -> Result<MassPointZ> {
    let gap = (a.conj() * zeta0).re - a.norm_sqr();
    if gap >= -DISK_TOL {
        return Err(Error::BoundaryZeta { gap });
    }
    let rho_a2 = 1.0 - a.norm_sqr();
    let rho_b2 = 1.0 - b.norm_sqr();
    let w = 1.0 - a.conj() * zeta0;
    let za = zeta0 - a;
    let m = 0.5 * (1.0 - rho_a2 / za.norm_sqr()) / (1.0 + rho_b2 / (zeta0 - b).norm_sqr());
    Ok(MassPointZ {
        z0: w / w.norm(),
        zeta0,
        m,
        eta: -omega * za / za.norm(),
        sign,
    })
}

/// The four-case classification by conditions `M±`.
pub fn classify_line(a: C64, b: C64, omega: C64) -> ClassZ {
    if a.norm() == 0.0 {
        return ClassZ {
            label: LineLabel::M0,
            points: Vec::new(),
        };
    }
    let mut points = Vec::new();
    let mut hits = [false; 2];
    for (k, sign) in [Sign::Plus, Sign::Minus].into_iter().enumerate() {
        if condition_m(a, b, sign) {
            if let Ok(p) = mass_at_signed(a, b, omega, zeta_for(b, sign), sign) {
                points.push(p);
                points.push(p.reflected());
                hits[k] = true;
            }
        }
    }
    let label = match hits {
        [true, true] => LineLabel::M4,
        [true, false] => LineLabel::M2Plus,
        [false, true] => LineLabel::M2Minus,
        [false, false] => LineLabel::M0,
    };
    ClassZ { label, points }
}

/// Classification of a walk on ℤ; diagonal coins give `M0`.
pub fn classify_walk_line(spec: &WalkSpec) -> Result<ClassZ> {
    match defect_params(spec) {
        Ok(p) => Ok(classify_line(p.a, p.b, p.omega)),
        Err(Error::DiagonalCoin) => Ok(ClassZ {
            label: LineLabel::M0,
            points: Vec::new(),
        }),
        Err(e) => Err(e),
    }
}

fn k_factor(a: C64, zeta: C64) -> f64 {
    let rho_a2 = 1.0 - a.norm_sqr();
    let t = 1.0 - rho_a2 / (zeta - a).norm_sqr();
    0.5 * t * t
}

/// `p±`: the limit of `p(2n)` contributed by the pair `±z±` (hatted qubit).
pub fn p_pm(a: C64, b: C64, omega: C64, sign: Sign, q: &Qubit) -> f64 {
    let zeta = zeta_for(b, sign);
    let rho_b = (1.0 - b.norm_sqr()).sqrt();
    let s = (1.0 - b.im * b.im).sqrt();
    let bracket = ((q.alpha.norm_sqr() - q.beta.norm_sqr()) * b.re
        + 2.0 * rho_b * ((omega * q.alpha).conj() * q.beta).re)
        / s;
    k_factor(a, zeta) * (1.0 - sign.value() * bracket)
}

/// Asymptotic return probability `lim p(2n)` at the origin for a hatted qubit.
pub fn arp_origin_line(p: &DefectParams, hatted: &Qubit) -> f64 {
    let class = classify_line(p.a, p.b, p.omega);
    let mut total = 0.0;
    for sign in [Sign::Plus, Sign::Minus] {
        if class.points.iter().any(|m| m.sign == sign) {
            total += p_pm(p.a, p.b, p.omega, sign, hatted);
        }
    }
    total.clamp(0.0, 1.0)
}

/// As [`arp_origin_line`] for a raw qubit at site 0 of a walk.
pub fn return_limit_line(spec: &WalkSpec, q: &Qubit) -> Result<f64> {
    match defect_params(spec) {
        Ok(p) => Ok(arp_origin_line(&p, &hat_qubit(q, 0, spec)?)),
        Err(Error::DiagonalCoin) => Ok(0.0),
        Err(e) => Err(e),
    }
}

/// `(2 Im a (Im a − Im b) / (1 + Im²a − 2 Im a Im b))²`, valid for imaginary `a`
/// whenever localization occurs.
pub fn p_imaginary_a(a: C64, b: C64) -> f64 {
    let (x, y) = (a.im, b.im);
    if x * (x - y) <= 0.0 {
        return 0.0;
    }
    let r = 2.0 * x * (x - y) / (1.0 + x * x - 2.0 * x * y);
    r * r
}

/// The hatted qubit that does not localize, when one exists (`M2±` only).
pub fn nonlocalized_qubit_line(p: &DefectParams, class: &ClassZ) -> Option<Qubit> {
    let sign = match class.label {
        LineLabel::M2Plus => Sign::Plus,
        LineLabel::M2Minus => Sign::Minus,
        LineLabel::M0 | LineLabel::M4 => return None,
    };
    let s = (1.0 - p.b.im * p.b.im).sqrt();
    let beta = p.omega * p.rho_b() / (p.b.re + sign.value() * s);
    Qubit::normalized(C64::new(1.0, 0.0), beta).ok()
}

/// `M = Σ± K± w̄± w±ᵀ` with `w = (1, −v)`, `v = ω̄(ζ̄ + b)/ρ_b`, so that
/// `p = x† M x` for the hatted qubit `x = (α̂, β̂)`.
pub fn arp_quadratic_form(p: &DefectParams) -> Mat2 {
    let zero = C64::new(0.0, 0.0);
    let mut m = [[zero; 2]; 2];
    let class = classify_line(p.a, p.b, p.omega);
    let rho_b2 = 1.0 - p.b.norm_sqr();
    for sign in [Sign::Plus, Sign::Minus] {
        if !class.points.iter().any(|q| q.sign == sign) {
            continue;
        }
        let zeta = zeta_for(p.b, sign);
        let k = 2.0 * k_factor(p.a, zeta) / (1.0 + rho_b2 / (zeta - p.b).norm_sqr());
        let v = p.omega.conj() * (zeta.conj() + p.b) / rho_b2.sqrt();
        let w = [C64::new(1.0, 0.0), -v];
        for i in 0..2 {
            for j in 0..2 {
                m[i][j] += k * w[i].conj() * w[j];
            }
        }
    }
    m
}

/// Extremes of the asymptotic return probability over hatted qubits.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MaxArp {
    pub a: C64,
    pub label: LineLabel,
    /// `p` for `β̂ = iωα̂`.
    pub lower_bound: f64,
    /// Largest eigenvalue of the quadratic form.
    pub sup: f64,
    pub maximizer: Qubit,
}

pub fn max_arp(p: &DefectParams) -> MaxArp {
    let m = arp_quadratic_form(p);
    let label = classify_line(p.a, p.b, p.omega).label;
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let q0 = Qubit {
        alpha: C64::new(h, 0.0),
        beta: I * p.omega * h,
    };
    let lower_bound = arp_origin_line(p, &q0);
    let (d0, d1, off) = (m[0][0].re, m[1][1].re, m[0][1]);
    let half_gap = 0.5 * (d0 - d1);
    let disc = (half_gap * half_gap + off.norm_sqr()).sqrt();
    let sup = (0.5 * (d0 + d1) + disc).clamp(0.0, 1.0);
    let maximizer = if off.norm() > 1e-15 {
        Qubit::normalized(off, C64::new(sup - d0, 0.0))
    } else if d0 >= d1 {
        Ok(Qubit::up())
    } else {
        Ok(Qubit::down())
    }
    .unwrap_or(Qubit::up());
    MaxArp {
        a: p.a,
        label,
        lower_bound,
        sup,
        maximizer,
    }
}

/// [`max_arp`] over a grid of `a` values for fixed `(b, ω)`; points outside the disk are skipped.
pub fn max_arp_scan(b: C64, omega: C64, grid: &[C64]) -> Vec<MaxArp> {
    grid.iter()
        .filter(|a| a.norm() < 1.0 && a.norm() > 0.0)
        .filter_map(|&a| DefectParams::new(a, b, omega, 0.0).ok())
        .map(|p| max_arp(&p))
        .collect()
}
