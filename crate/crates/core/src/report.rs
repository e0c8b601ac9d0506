//! Serializable localization summaries for a single walk and qubit.

use serde::{Deserialize, Serialize};

use crate::coin::{defect_params, hat_qubit, Lattice, Qubit, WalkSpec, C64};
use crate::error::{Error, Result};
use crate::geometry::{classify_region_halfline, LLabel};
use crate::halfline::{
    arp_origin_halfline, halfline_roots, nonlocalized_qubit_halfline, ArpHalfline, ArpMode, Side,
};
use crate::line::{arp_origin_line, arp_quadratic_form, classify_line, nonlocalized_qubit_line, LineLabel};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LineReportLabel {
    M0,
    #[serde(rename = "M2+")]
    M2Plus,
    #[serde(rename = "M2-")]
    M2Minus,
    M4,
    /// Diagonal defect (`a = 0`): the measure is absolutely continuous.
    NoLocalization,
}

impl From<LineLabel> for LineReportLabel {
    fn from(l: LineLabel) -> Self {
        match l {
            LineLabel::M0 => Self::M0,
            LineLabel::M2Plus => Self::M2Plus,
            LineLabel::M2Minus => Self::M2Minus,
            LineLabel::M4 => Self::M4,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RegionLabel {
    L0,
    L1,
    L2,
    /// `a` lies on the epitrochoid within `1e-9`.
    Borderline,
    NoLocalization,
}

impl From<LLabel> for RegionLabel {
    fn from(l: LLabel) -> Self {
        match l {
            LLabel::L0 => Self::L0,
            LLabel::L1 => Self::L1,
            LLabel::L2 => Self::L2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QubitJson {
    pub alpha_re: f64,
    pub alpha_im: f64,
    pub beta_re: f64,
    pub beta_im: f64,
}

impl From<Qubit> for QubitJson {
    fn from(q: Qubit) -> Self {
        Self {
            alpha_re: q.alpha.re,
            alpha_im: q.alpha.im,
            beta_re: q.beta.re,
            beta_im: q.beta.im,
        }
    }
}

impl QubitJson {
    pub fn to_qubit(self) -> Result<Qubit> {
        Qubit::new(
            C64::new(self.alpha_re, self.alpha_im),
            C64::new(self.beta_re, self.beta_im),
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LineMassJson {
    pub z_re: f64,
    pub z_im: f64,
    pub m: f64,
    pub eta_re: f64,
    pub eta_im: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HalflineMassJson {
    pub z_re: f64,
    pub z_im: f64,
    pub side: Side,
    pub mu: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LineReport {
    pub schema_version: u32,
    pub label: LineReportLabel,
    pub mass_points: Vec<LineMassJson>,
    /// Limit of `p(2n)` at the origin for `qubit`.
    pub p_limit: f64,
    pub qubit: QubitJson,
    /// Set when the limit does not depend on the qubit.
    pub state_independent_value: Option<f64>,
    /// Raw-frame qubit that does not localize, if any.
    pub nonlocalized_qubit: Option<QubitJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HalflineReport {
    pub schema_version: u32,
    pub l_label: RegionLabel,
    pub mass_points: Vec<HalflineMassJson>,
    /// Cesàro limit of `p(n)` at the origin for `qubit`.
    pub p_cesaro: f64,
    pub qubit: QubitJson,
    pub nonlocalized_qubit: Option<QubitJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "lattice", rename_all = "lowercase")]
pub enum LocalizationReport {
    Line(LineReport),
    Halfline(HalflineReport),
}

fn unimodular(z_re: f64, z_im: f64) -> bool {
    ((z_re * z_re + z_im * z_im).sqrt() - 1.0).abs() < 1e-9
}

fn check(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidReport(what.to_string()))
    }
}

impl LocalizationReport {
    /// Structural validation, used after parsing.
    pub fn validate(&self) -> Result<()> {
        let prob = |p: f64| (-1e-12..=1.0 + 1e-12).contains(&p);
        match self {
            LocalizationReport::Line(r) => {
                check(r.schema_version == SCHEMA_VERSION, "schema_version")?;
                let expected = match r.label {
                    LineReportLabel::M0 | LineReportLabel::NoLocalization => 0,
                    LineReportLabel::M2Plus | LineReportLabel::M2Minus => 2,
                    LineReportLabel::M4 => 4,
                };
                check(r.mass_points.len() == expected, "mass_points")?;
                for m in &r.mass_points {
                    check(unimodular(m.z_re, m.z_im), "z")?;
                    check(unimodular(m.eta_re, m.eta_im), "eta")?;
                    check(m.m > 0.0 && m.m <= 0.5, "m")?;
                }
                check(prob(r.p_limit), "p_limit")?;
                r.qubit.to_qubit()?;
                if let Some(q) = r.nonlocalized_qubit {
                    q.to_qubit()?;
                }
            }
            LocalizationReport::Halfline(r) => {
                check(r.schema_version == SCHEMA_VERSION, "schema_version")?;
                check(r.mass_points.len() <= 3, "mass_points")?;
                for m in &r.mass_points {
                    check(unimodular(m.z_re, m.z_im), "z")?;
                    check(m.mu > 0.0 && m.mu <= 1.0, "mu")?;
                }
                check(prob(r.p_cesaro), "p_cesaro")?;
                r.qubit.to_qubit()?;
                if let Some(q) = r.nonlocalized_qubit {
                    q.to_qubit()?;
                }
            }
        }
        Ok(())
    }

    pub fn lattice(&self) -> Lattice {
        match self {
            LocalizationReport::Line(_) => Lattice::Line,
            LocalizationReport::Halfline(_) => Lattice::HalfLine,
        }
    }
}

/// Classify the walk and evaluate the asymptotic return probability at the origin for `q`.
pub fn localization_report(spec: &WalkSpec, q: &Qubit) -> Result<LocalizationReport> {
    let params = match defect_params(spec) {
        Ok(p) => Some(p),
        Err(Error::DiagonalCoin) => None,
        Err(e) => return Err(e),
    };
    let qubit = QubitJson::from(*q);
    let Some(p) = params else {
        return Ok(match spec.lattice {
            Lattice::Line => LocalizationReport::Line(LineReport {
                schema_version: SCHEMA_VERSION,
                label: LineReportLabel::NoLocalization,
                mass_points: Vec::new(),
                p_limit: 0.0,
                qubit,
                state_independent_value: Some(0.0),
                nonlocalized_qubit: None,
            }),
            Lattice::HalfLine => LocalizationReport::Halfline(HalflineReport {
                schema_version: SCHEMA_VERSION,
                l_label: RegionLabel::NoLocalization,
                mass_points: Vec::new(),
                p_cesaro: 0.0,
                qubit,
                nonlocalized_qubit: None,
            }),
        });
    };
    let hatted = hat_qubit(q, 0, spec)?;
    match spec.lattice {
        Lattice::Line => {
            let class = classify_line(p.a, p.b, p.omega);
            let form = arp_quadratic_form(&p);
            let isotropic = (form[0][0] - form[1][1]).norm() < 1e-12 && form[0][1].norm() < 1e-12;
            let nonlocalized = nonlocalized_qubit_line(&p, &class)
                .map(|h| crate::coin::unhat_qubit(&h, 0, spec))
                .transpose()?
                .map(QubitJson::from);
            let p_limit = arp_origin_line(&p, &hatted);
            Ok(LocalizationReport::Line(LineReport {
                schema_version: SCHEMA_VERSION,
                label: class.label.into(),
                mass_points: class
                    .points
                    .iter()
                    .map(|m| {
                        let z = m.z0 * C64::from_polar(1.0, p.vartheta);
                        LineMassJson {
                            z_re: z.re,
                            z_im: z.im,
                            m: m.m,
                            eta_re: m.eta.re,
                            eta_im: m.eta.im,
                        }
                    })
                    .collect(),
                p_limit,
                qubit,
                state_independent_value: isotropic.then_some(form[0][0].re.clamp(0.0, 1.0)),
                nonlocalized_qubit: nonlocalized,
            }))
        }
        Lattice::HalfLine => {
            let roots = halfline_roots(p.a, p.b);
            let l_label = match classify_region_halfline(p.a) {
                Ok(r) => r.l_label.into(),
                Err(Error::BorderlineA { .. }) => RegionLabel::Borderline,
                Err(e) => return Err(e),
            };
            let p_cesaro = match arp_origin_halfline(p.a, p.b, &hatted, ArpMode::Cesaro) {
                ArpHalfline::Value(v) => v,
                ArpHalfline::Sequence(_) => unreachable!("Cesàro mode yields a value"),
            };
            let nonlocalized = nonlocalized_qubit_halfline(p.b, &roots)
                .map(|h| crate::coin::unhat_qubit(&h, 0, spec))
                .transpose()?
                .map(QubitJson::from);
            Ok(LocalizationReport::Halfline(HalflineReport {
                schema_version: SCHEMA_VERSION,
                l_label,
                mass_points: roots
                    .iter()
                    .map(|r| {
                        let z = r.z0 * C64::from_polar(1.0, p.vartheta);
                        HalflineMassJson {
                            z_re: z.re,
                            z_im: z.im,
                            side: r.side,
                            mu: r.mu,
                        }
                    })
                    .collect(),
                p_cesaro: p_cesaro.clamp(0.0, 1.0),
                qubit,
                nonlocalized_qubit: nonlocalized,
            }))
        }
    }
}
