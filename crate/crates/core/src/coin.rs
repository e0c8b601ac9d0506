//! Coins, walk specifications and the reduced parameters `(a, b, ω, ϑ)`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type C64 = Complex64;

pub(crate) const I: C64 = C64::new(0.0, 1.0);
const UNITARY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Lattice {
    /// The integers ℤ.
    Line,
    /// The nonnegative integers ℤ₊ with a reflecting boundary at 0.
    HalfLine,
}

/// A 2×2 unitary coin with nonzero diagonal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Coin {
    m: [[C64; 2]; 2],
    sigma1: f64,
    sigma2: f64,
}

/// Checks unitarity and irreducibility and caches the diagonal phases.
pub fn validate_coin(m: [[C64; 2]; 2]) -> Result<Coin> {
    let mut deviation: f64 = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            let dot = m[0][i].conj() * m[0][j] + m[1][i].conj() * m[1][j];
            let target = if i == j { 1.0 } else { 0.0 };
            deviation = deviation.max((dot - target).norm());
        }
    }
    if deviation > UNITARY_TOL {
        return Err(Error::NotUnitary { deviation });
    }
    if m[0][0].norm() == 0.0 || m[1][1].norm() == 0.0 {
        return Err(Error::ReducibleCoin);
    }
    Ok(Coin {
        m,
        sigma1: principal_arg(m[0][0]),
        sigma2: principal_arg(m[1][1]),
    })
}

/// Argument in `(−π, π]`; a signed zero imaginary part does not flip negative reals to `−π`.
fn principal_arg(z: C64) -> f64 {
    let im = if z.im == 0.0 { 0.0 } else { z.im };
    im.atan2(z.re)
}

impl Coin {
    pub fn new(m: [[C64; 2]; 2]) -> Result<Self> {
        validate_coin(m)
    }

    /// Builds a coin from row-major `(re, im)` pairs: c11, c12, c21, c22.
    pub fn from_reals(v: [f64; 8]) -> Result<Self> {
        validate_coin([
            [C64::new(v[0], v[1]), C64::new(v[2], v[3])],
            [C64::new(v[4], v[5]), C64::new(v[6], v[7])],
        ])
    }

    pub fn to_reals(&self) -> [f64; 8] {
        let m = &self.m;
        [
            m[0][0].re, m[0][0].im, m[0][1].re, m[0][1].im, m[1][0].re, m[1][0].im, m[1][1].re,
            m[1][1].im,
        ]
    }

    pub fn identity() -> Self {
        let one = C64::new(1.0, 0.0);
        let zero = C64::new(0.0, 0.0);
        validate_coin([[one, zero], [zero, one]]).expect("identity is a valid coin")
    }

    pub fn hadamard() -> Self {
        let s = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        validate_coin([[s, s], [s, -s]]).expect("Hadamard is a valid coin")
    }

    /// `(1/√2)[[1, e^{iφ}], [e^{-iφ}, -1]]`, the Hadamard coin with a phase defect.
    pub fn konno(phi: f64) -> Self {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let one = C64::new(s, 0.0);
        validate_coin([
            [one, C64::from_polar(s, phi)],
            [C64::from_polar(s, -phi), -one],
        ])
        .expect("Konno coin is a valid coin")
    }

    pub fn matrix(&self) -> [[C64; 2]; 2] {
        self.m
    }
    pub fn c11(&self) -> C64 {
        self.m[0][0]
    }
    pub fn c12(&self) -> C64 {
        self.m[0][1]
    }
    pub fn c21(&self) -> C64 {
        self.m[1][0]
    }
    pub fn c22(&self) -> C64 {
        self.m[1][1]
    }
    pub fn sigma1(&self) -> f64 {
        self.sigma1
    }
    pub fn sigma2(&self) -> f64 {
        self.sigma2
    }
    /// `σ₁ + σ₂` (or `τ₁ + τ₂` when this coin is the defect).
    pub fn phase_sum(&self) -> f64 {
        self.sigma1 + self.sigma2
    }
}

/// A one-defect walk: coin `C` everywhere except `D` at site 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WalkSpec {
    pub lattice: Lattice,
    pub coin: Coin,
    pub defect: Coin,
}

impl WalkSpec {
    pub fn new(lattice: Lattice, coin: Coin, defect: Coin) -> Self {
        Self {
            lattice,
            coin,
            defect,
        }
    }

    pub fn constant(lattice: Lattice, coin: Coin) -> Self {
        Self::new(lattice, coin, coin)
    }

    pub fn coin_at(&self, site: i64) -> &Coin {
        if site == 0 {
            &self.defect
        } else {
            &self.coin
        }
    }

    /// Builds a walk whose reduced parameters are exactly `(a, b, ω)`.
    ///
    /// On the half-line `omega` is ignored.
    pub fn from_reduced(lattice: Lattice, a: C64, b: C64, omega: C64) -> Result<Self> {
        check_disk("a", a)?;
        check_disk("b", b)?;
        if a.norm() == 0.0 {
            return Err(Error::ZeroA);
        }
        let rho_a = (1.0 - a.norm_sqr()).sqrt();
        let rho_b = C64::new((1.0 - b.norm_sqr()).sqrt(), 0.0);
        match lattice {
            Lattice::HalfLine => {
                let ra = C64::new(rho_a, 0.0);
                let coin = validate_coin([[ra, -a], [a.conj(), ra]])?;
                let defect = validate_coin([[rho_b, -b], [b.conj(), rho_b]])?;
                Ok(Self::new(lattice, coin, defect))
            }
            Lattice::Line => {
                let omega = omega / omega.norm();
                let phi = (-I * a).arg();
                let sigma = 2.0 * phi;
                let diag = C64::from_polar(rho_a, phi);
                let c21 = a.norm() * (-I * omega * C64::from_polar(1.0, sigma));
                let c12 = -c21.conj() * C64::from_polar(1.0, 2.0 * phi);
                let coin = validate_coin([[diag, c12], [c21, diag]])?;
                let d21 = b.conj() * omega * C64::from_polar(1.0, sigma / 2.0);
                let defect = validate_coin([[rho_b, -d21.conj()], [d21, rho_b]])?;
                Ok(Self::new(lattice, coin, defect))
            }
        }
    }
}

fn check_disk(name: &'static str, z: C64) -> Result<()> {
    if z.norm() < 1.0 {
        Ok(())
    } else {
        Err(Error::ParameterOutOfDisk {
            name,
            value: z.norm(),
        })
    }
}

/// Reduced parameters classifying a one-defect walk up to rotation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DefectParams {
    pub a: C64,
    pub b: C64,
    /// Meaningful on the line only; fixed to 1 on the half-line.
    pub omega: C64,
    /// Rotation angle `ϑ = σ/2` (principal half-angle).
    pub vartheta: f64,
}

impl DefectParams {
    pub fn new(a: C64, b: C64, omega: C64, vartheta: f64) -> Result<Self> {
        check_disk("a", a)?;
        check_disk("b", b)?;
        if (omega.norm() - 1.0).abs() > 1e-12 {
            return Err(Error::ParameterOutOfDisk {
                name: "omega",
                value: omega.norm(),
            });
        }
        Ok(Self {
            a,
            b,
            omega,
            vartheta,
        })
    }

    pub fn rho_a(&self) -> f64 {
        (1.0 - self.a.norm_sqr()).sqrt()
    }
    pub fn rho_b(&self) -> f64 {
        (1.0 - self.b.norm_sqr()).sqrt()
    }
}

/// Extracts `(a, b, ω, ϑ)`. Fails with [`Error::DiagonalCoin`] when `c21 = 0`.
pub fn defect_params(spec: &WalkSpec) -> Result<DefectParams> {
    let c21 = spec.coin.c21();
    if c21.norm() == 0.0 {
        return Err(Error::DiagonalCoin);
    }
    let sigma = spec.coin.phase_sum();
    let tau = spec.defect.phase_sum();
    let d21 = spec.defect.c21();
    let (a, b, omega) = match spec.lattice {
        Lattice::HalfLine => (
            c21.conj() * C64::from_polar(1.0, 1.5 * sigma - tau),
            d21.conj() * C64::from_polar(1.0, sigma / 2.0),
            C64::new(1.0, 0.0),
        ),
        Lattice::Line => {
            let u = c21 / c21.norm();
            (
                I * c21.norm() * C64::from_polar(1.0, (sigma - tau) / 2.0),
                I * u * C64::from_polar(1.0, (tau - sigma) / 2.0) * d21.conj(),
                I * u * C64::from_polar(1.0, tau / 2.0 - sigma),
            )
        }
    };
    Ok(DefectParams {
        a,
        b,
        omega,
        vartheta: sigma / 2.0,
    })
}

/// A spin state `α|↑⟩ + β|↓⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Qubit {
    pub alpha: C64,
    pub beta: C64,
}

impl Qubit {
    pub fn new(alpha: C64, beta: C64) -> Result<Self> {
        let norm_sqr = alpha.norm_sqr() + beta.norm_sqr();
        if (norm_sqr - 1.0).abs() > 1e-12 {
            return Err(Error::QubitNotNormalized { norm_sqr });
        }
        Ok(Self { alpha, beta })
    }

    /// Scales `(alpha, beta)` to unit norm.
    pub fn normalized(alpha: C64, beta: C64) -> Result<Self> {
        let n = (alpha.norm_sqr() + beta.norm_sqr()).sqrt();
        if n == 0.0 || !n.is_finite() {
            return Err(Error::QubitNotNormalized { norm_sqr: n * n });
        }
        Ok(Self {
            alpha: alpha / n,
            beta: beta / n,
        })
    }

    pub fn up() -> Self {
        Self {
            alpha: C64::new(1.0, 0.0),
            beta: C64::new(0.0, 0.0),
        }
    }

    pub fn down() -> Self {
        Self {
            alpha: C64::new(0.0, 0.0),
            beta: C64::new(1.0, 0.0),
        }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.alpha.norm_sqr() + self.beta.norm_sqr()
    }
}

/// The phase pair `(λ̂ for |k↑⟩, λ̂ for |k↓⟩)` at a site.
fn hat_phases(spec: &WalkSpec, site: i64) -> Result<(C64, C64)> {
    let theta = spec.coin.phase_sum() / 2.0;
    match spec.lattice {
        Lattice::HalfLine => {
            if site < 0 {
                return Err(Error::InvalidSite(site));
            }
            let k = site as usize;
            let up = crate::cmv::lambda_halfline(spec, 2 * k)
                * C64::from_polar(1.0, k as f64 * theta);
            let down = crate::cmv::lambda_halfline(spec, 2 * k + 1)
                * C64::from_polar(1.0, -((k + 1) as f64) * theta);
            Ok((up, down))
        }
        Lattice::Line => {
            let (j, right) = if site >= 0 {
                (site as usize, true)
            } else {
                ((-site - 1) as usize, false)
            };
            let hat = |m: usize| {
                let (l1, l2) = crate::cmv::lambda_line_block(spec, m);
                let rot = if m % 2 == 1 {
                    C64::from_polar(1.0, -(m.div_ceil(2) as f64) * theta)
                } else {
                    C64::from_polar(1.0, (m / 2) as f64 * theta)
                };
                (l1 * rot, l2 * rot)
            };
            if right {
                Ok((hat(2 * j).0, hat(2 * j + 1).1))
            } else {
                Ok((hat(2 * j + 1).0, hat(2 * j).1))
            }
        }
    }
}

/// Phase-adjusts a qubit at `site` into the rotated frame where the closed-form
/// mass and return-probability formulas are stated.
pub fn hat_qubit(q: &Qubit, site: i64, spec: &WalkSpec) -> Result<Qubit> {
    let (pu, pd) = hat_phases(spec, site)?;
    Ok(Qubit {
        alpha: pu * q.alpha,
        beta: pd * q.beta,
    })
}

/// Inverse of [`hat_qubit`].
pub fn unhat_qubit(q: &Qubit, site: i64, spec: &WalkSpec) -> Result<Qubit> {
    let (pu, pd) = hat_phases(spec, site)?;
    Ok(Qubit {
        alpha: pu.conj() * q.alpha,
        beta: pd.conj() * q.beta,
    })
}
