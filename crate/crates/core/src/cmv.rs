//! Transition matrices in the CMV ordering and exact finite-time evolution.

use crate::coin::{Coin, Lattice, Qubit, WalkSpec, C64};
use crate::error::{Error, Result};

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// Position of `|site, spin⟩` in the CMV ordering.
///
/// Half-line: `|k↑⟩ = 2k`, `|k↓⟩ = 2k+1`. Line: for `j ≥ 0` the four entries
/// starting at `4j` are `|j↑⟩, |−j−1↓⟩, |−j−1↑⟩, |j↓⟩`.
pub fn basis_index(lattice: Lattice, site: i64, up: bool) -> Option<usize> {
    match lattice {
        Lattice::HalfLine => {
            if site < 0 {
                return None;
            }
            Some(2 * site as usize + usize::from(!up))
        }
        Lattice::Line => {
            if site >= 0 {
                Some(4 * site as usize + if up { 0 } else { 3 })
            } else {
                Some(4 * (-site - 1) as usize + if up { 2 } else { 1 })
            }
        }
    }
}

/// Inverse of [`basis_index`]: `(site, up)`.
pub fn site_of_index(lattice: Lattice, idx: usize) -> (i64, bool) {
    match lattice {
        Lattice::HalfLine => ((idx / 2) as i64, idx.is_multiple_of(2)),
        Lattice::Line => {
            let j = (idx / 4) as i64;
            match idx % 4 {
                0 => (j, true),
                1 => (-j - 1, false),
                2 => (-j - 1, true),
                _ => (j, false),
            }
        }
    }
}

/// Smallest truncation that keeps `steps` steps from `site` exact.
pub fn required_dimension(lattice: Lattice, site: i64, steps: usize) -> usize {
    let s = site.unsigned_abs() as usize;
    match lattice {
        Lattice::HalfLine => 2 * (steps + s + 8),
        Lattice::Line => 4 * (steps + s + 8),
    }
}

/// `λ_j` on the half-line in closed form (`λ_0 = 1`).
pub(crate) fn lambda_halfline(spec: &WalkSpec, j: usize) -> C64 {
    if j == 0 {
        return ONE;
    }
    let (s1, s2) = (spec.coin.sigma1(), spec.coin.sigma2());
    let (t1, t2) = (spec.defect.sigma1(), spec.defect.sigma2());
    if j % 2 == 1 {
        let k = j.div_ceil(2);
        C64::from_polar(1.0, t2 + (k - 1) as f64 * s2)
    } else {
        let k = j / 2;
        C64::from_polar(1.0, -(t1 + (k - 1) as f64 * s1))
    }
}

/// Diagonal of the block `λ_m` on the line (`λ_0 = 1`).
pub(crate) fn lambda_line_block(spec: &WalkSpec, m: usize) -> (C64, C64) {
    if m == 0 {
        return (ONE, ONE);
    }
    let (s1, s2) = (spec.coin.sigma1(), spec.coin.sigma2());
    let (t1, t2) = (spec.defect.sigma1(), spec.defect.sigma2());
    if m % 2 == 1 {
        let k = m.div_ceil(2) as f64;
        (
            C64::from_polar(1.0, k * s1),
            C64::from_polar(1.0, t2 + (k - 1.0) * s2),
        )
    } else {
        let k = (m / 2) as f64;
        (
            C64::from_polar(1.0, -(t1 + (k - 1.0) * s1)),
            C64::from_polar(1.0, -k * s2),
        )
    }
}

/// The diagonal phase matrix `Λ` as a vector of scalar entries.
///
/// On the half-line this runs the site-by-site recurrence
/// `λ_{2k+1} = e^{iσ₂⁽ᵏ⁾}λ_{2k−1}`, `λ_{2k+2} = e^{−iσ₁⁽ᵏ⁾}λ_{2k}` from `λ_{−1} = λ_0 = 1`.
pub fn build_lambda(spec: &WalkSpec, size: usize) -> Result<Vec<C64>> {
    if size < 2 {
        return Err(Error::SizeTooSmall { size, min: 2 });
    }
    let mut lam = vec![ONE; size];
    match spec.lattice {
        Lattice::HalfLine => {
            let mut odd = ONE;
            let mut even = ONE;
            for k in 0.. {
                let c = spec.coin_at(k as i64);
                if 2 * k + 1 >= size {
                    break;
                }
                odd *= C64::from_polar(1.0, c.sigma2());
                lam[2 * k + 1] = odd;
                if 2 * k + 2 >= size {
                    break;
                }
                even *= C64::from_polar(1.0, -c.sigma1());
                lam[2 * k + 2] = even;
            }
        }
        Lattice::Line => {
            for (m, pair) in lam.chunks_mut(2).enumerate() {
                let (l1, l2) = lambda_line_block(spec, m);
                pair[0] = l1;
                if pair.len() > 1 {
                    pair[1] = l2;
                }
            }
        }
    }
    Ok(lam)
}

/// Verblunsky coefficients of the walk's CMV matrix.
///
/// Half-line: `alphas[j] = α_j` with odd entries zero. Line: `alphas[k] = α_{2k}` and
/// `negative[k] = α_{−2k−2}` for `k ≥ 0`; the block coefficient is
/// `[[0, −conj(negative[k])], [alphas[k], 0]]`.
#[derive(Debug, Clone, PartialEq)]
pub struct VerblunskySeq {
    pub lattice: Lattice,
    pub alphas: Vec<C64>,
    pub negative: Vec<C64>,
}

impl VerblunskySeq {
    pub fn rhos(&self) -> Vec<f64> {
        self.alphas.iter().map(|a| rho(*a)).collect()
    }
}

fn rho(a: C64) -> f64 {
    (1.0 - a.norm_sqr()).sqrt()
}

/// Verblunsky coefficients; `count` scalar entries on the half-line, `count` blocks on the line.
pub fn verblunsky(spec: &WalkSpec, count: usize) -> VerblunskySeq {
    match spec.lattice {
        Lattice::HalfLine => {
            let mut alphas = vec![ZERO; count];
            for k in 0..count.div_ceil(2) {
                let c = spec.coin_at(k as i64);
                alphas[2 * k] = c.c21().conj() * lambda_halfline(spec, 2 * k)
                    / lambda_halfline_signed(spec, 2 * k as i64 - 1);
            }
            VerblunskySeq {
                lattice: Lattice::HalfLine,
                alphas,
                negative: Vec::new(),
            }
        }
        Lattice::Line => {
            let sigma = spec.coin.phase_sum();
            let tau = spec.defect.phase_sum();
            let c21 = spec.coin.c21();
            let alphas = (0..count)
                .map(|k| {
                    if k == 0 {
                        spec.defect.c21().conj()
                    } else {
                        c21.conj() * C64::from_polar(1.0, -(tau + (k - 1) as f64 * sigma))
                    }
                })
                .collect();
            let negative = (0..count)
                .map(|k| c21.conj() * C64::from_polar(1.0, (k + 1) as f64 * sigma))
                .collect();
            VerblunskySeq {
                lattice: Lattice::Line,
                alphas,
                negative,
            }
        }
    }
}

fn lambda_halfline_signed(spec: &WalkSpec, j: i64) -> C64 {
    if j < 0 {
        ONE
    } else {
        lambda_halfline(spec, j as usize)
    }
}

/// A square matrix stored as a band `|i − j| ≤ half_width`.
#[derive(Debug, Clone, PartialEq)]
pub struct BandedUnitary {
    lattice: Lattice,
    dim: usize,
    half_width: usize,
    band: Vec<C64>,
}

impl BandedUnitary {
    fn zeros(lattice: Lattice, dim: usize) -> Self {
        let half_width = match lattice {
            Lattice::HalfLine => 2,
            Lattice::Line => 4,
        };
        Self {
            lattice,
            dim,
            half_width,
            band: vec![ZERO; dim * (2 * half_width + 1)],
        }
    }

    pub fn lattice(&self) -> Lattice {
        self.lattice
    }
    pub fn dimension(&self) -> usize {
        self.dim
    }
    pub fn half_width(&self) -> usize {
        self.half_width
    }

    fn slot(&self, i: usize, j: usize) -> Option<usize> {
        if i >= self.dim || j >= self.dim || i.abs_diff(j) > self.half_width {
            return None;
        }
        Some(i * (2 * self.half_width + 1) + (j + self.half_width - i))
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.slot(i, j).map_or(ZERO, |s| self.band[s])
    }

    fn add(&mut self, i: usize, j: usize, v: C64) {
        if i >= self.dim || j >= self.dim {
            return;
        }
        let s = self
            .slot(i, j)
            .expect("entry outside the band of a CMV matrix");
        self.band[s] += v;
    }

    /// Row `i` as `(j, U_ij)` for nonzero-capable slots.
    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, C64)> + '_ {
        let lo = i.saturating_sub(self.half_width);
        let hi = (i + self.half_width).min(self.dim - 1);
        (lo..=hi).map(move |j| (j, self.get(i, j)))
    }

    /// `out = psi · U` restricted to rows `lo..hi`; returns the new support bounds.
    fn step_window(&self, psi: &[C64], out: &mut [C64], lo: usize, hi: usize) -> (usize, usize) {
        let w = self.half_width;
        let width = 2 * w + 1;
        let new_lo = lo.saturating_sub(w);
        let new_hi = (hi + w).min(self.dim);
        out[new_lo..new_hi].fill(ZERO);
        for (i, &p) in psi.iter().enumerate().take(hi).skip(lo) {
            if p == ZERO {
                continue;
            }
            let base = i * width + w - i;
            let j0 = i.saturating_sub(w);
            let j1 = (i + w + 1).min(self.dim);
            for (o, &u) in out[j0..j1].iter_mut().zip(&self.band[base + j0..base + j1]) {
                *o += p * u;
            }
        }
        (new_lo, new_hi)
    }

    /// Dense copy, for small matrices and tests.
    pub fn to_dense(&self) -> Vec<Vec<C64>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.get(i, j)).collect())
            .collect()
    }
}

/// Scalar CMV matrix with `α_{2k+1} = 0`, half-line ordering.
fn cmv_halfline(alphas: &[C64], dim: usize) -> BandedUnitary {
    let mut c = BandedUnitary::zeros(Lattice::HalfLine, dim);
    for k in (0..dim).step_by(2) {
        let a = alphas[k];
        let r = C64::new(rho(a), 0.0);
        if k == 0 {
            c.add(0, 0, a.conj());
            c.add(1, 0, r);
        } else {
            c.add(k, k - 1, a.conj());
            c.add(k + 1, k - 1, r);
        }
        c.add(k, k + 2, r);
        c.add(k + 1, k + 2, -a);
    }
    c
}

/// Block CMV matrix for the line with antidiagonal block coefficients.
fn cmv_line(seq: &VerblunskySeq, dim: usize) -> BandedUnitary {
    let mut c = BandedUnitary::zeros(Lattice::Line, dim);
    let nblocks = dim.div_ceil(2);
    let mut put = |r: usize, col: usize, m: [[C64; 2]; 2]| {
        for (p, row) in m.iter().enumerate() {
            for (q, v) in row.iter().enumerate() {
                if *v != ZERO {
                    c.add(2 * r + p, 2 * col + q, *v);
                }
            }
        }
    };
    for k in (0..nblocks).step_by(2) {
        let kk = k / 2;
        let ap = seq.alphas[kk];
        let an = seq.negative[kk];
        let alpha_dag = [[ZERO, ap.conj()], [-an, ZERO]];
        let neg_alpha = [[ZERO, an.conj()], [-ap, ZERO]];
        let rr = [[C64::new(rho(an), 0.0), ZERO], [ZERO, C64::new(rho(ap), 0.0)]];
        let rl = [[C64::new(rho(ap), 0.0), ZERO], [ZERO, C64::new(rho(an), 0.0)]];
        let prev = if k == 0 { 0 } else { k - 1 };
        put(k, prev, alpha_dag);
        put(k + 1, prev, rr);
        put(k, k + 2, rl);
        put(k + 1, k + 2, neg_alpha);
    }
    c
}

/// `U = Λ𝒞Λ†` truncated to `size` basis entries.
pub fn build_transition(spec: &WalkSpec, size: usize) -> Result<BandedUnitary> {
    if size < 4 || size % 2 == 1 {
        return Err(Error::SizeTooSmall { size, min: 4 });
    }
    let lam = build_lambda(spec, size)?;
    let mut u = match spec.lattice {
        Lattice::HalfLine => cmv_halfline(&verblunsky(spec, size).alphas, size),
        Lattice::Line => cmv_line(&verblunsky(spec, size.div_ceil(4) + 1), size),
    };
    for i in 0..size {
        let lo = i.saturating_sub(u.half_width);
        let hi = (i + u.half_width).min(size - 1);
        for j in lo..=hi {
            if let Some(s) = u.slot(i, j) {
                u.band[s] *= lam[i] * lam[j].conj();
            }
        }
    }
    Ok(u)
}

/// The matrix of the coin action `𝔘|i⟩ = Σ_j U_ij |j⟩` built directly from the coins.
pub fn coin_action_matrix(spec: &WalkSpec, size: usize) -> Result<BandedUnitary> {
    if size < 4 || size % 2 == 1 {
        return Err(Error::SizeTooSmall { size, min: 4 });
    }
    let lattice = spec.lattice;
    let mut u = BandedUnitary::zeros(lattice, size);
    for i in 0..size {
        let (k, up) = site_of_index(lattice, i);
        let c: &Coin = spec.coin_at(k);
        let col = usize::from(!up);
        let to_up = c.matrix()[0][col];
        let to_down = c.matrix()[1][col];
        let (up_target, down_target) = if lattice == Lattice::HalfLine && k == 0 {
            (basis_index(lattice, 1, true), basis_index(lattice, 0, true))
        } else {
            (
                basis_index(lattice, k + 1, true),
                basis_index(lattice, k - 1, false),
            )
        };
        if let Some(j) = up_target {
            u.add(i, j, to_up);
        }
        if let Some(j) = down_target {
            u.add(i, j, to_down);
        }
    }
    Ok(u)
}

/// A state over the ordered basis.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveFunction {
    pub amplitudes: Vec<C64>,
}

impl WaveFunction {
    pub fn zeros(dim: usize) -> Self {
        Self {
            amplitudes: vec![ZERO; dim],
        }
    }

    /// `α|k↑⟩ + β|k↓⟩`.
    pub fn localized(lattice: Lattice, dim: usize, site: i64, q: &Qubit) -> Result<Self> {
        let up = basis_index(lattice, site, true).ok_or(Error::InvalidSite(site))?;
        let down = basis_index(lattice, site, false).ok_or(Error::InvalidSite(site))?;
        if up.max(down) >= dim {
            return Err(Error::InvalidSite(site));
        }
        let mut w = Self::zeros(dim);
        w.amplitudes[up] = q.alpha;
        w.amplitudes[down] = q.beta;
        Ok(w)
    }

    pub fn basis(dim: usize, idx: usize) -> Self {
        let mut w = Self::zeros(dim);
        w.amplitudes[idx] = ONE;
        w
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Largest `|site|` carrying amplitude.
    pub fn max_site(&self, lattice: Lattice) -> i64 {
        self.amplitudes
            .iter()
            .enumerate()
            .filter(|(_, a)| **a != ZERO)
            .map(|(i, _)| site_of_index(lattice, i).0.abs())
            .max()
            .unwrap_or(0)
    }
}

/// Step-by-step evolution that tracks the support window.
pub struct Evolution<'a> {
    u: &'a BandedUnitary,
    cur: Vec<C64>,
    next: Vec<C64>,
    lo: usize,
    hi: usize,
}

impl<'a> Evolution<'a> {
    /// Checks the truncation margin for `steps` steps and prepares the iteration.
    pub fn new(u: &'a BandedUnitary, psi0: &WaveFunction, steps: usize) -> Result<Self> {
        let dim = u.dimension();
        let site = psi0.max_site(u.lattice());
        let needed = required_dimension(u.lattice(), site, steps);
        if dim < needed || psi0.amplitudes.len() != dim {
            return Err(Error::TruncationTooSmall {
                dim,
                steps,
                site,
                needed,
            });
        }
        let lo = psi0.amplitudes.iter().position(|a| *a != ZERO).unwrap_or(0);
        let hi = psi0
            .amplitudes
            .iter()
            .rposition(|a| *a != ZERO)
            .map_or(0, |p| p + 1);
        Ok(Self {
            u,
            cur: psi0.amplitudes.clone(),
            next: vec![ZERO; dim],
            lo,
            hi,
        })
    }

    pub fn state(&self) -> &[C64] {
        &self.cur
    }

    pub fn step(&mut self) {
        let (lo, hi) = self.u.step_window(&self.cur, &mut self.next, self.lo, self.hi);
        std::mem::swap(&mut self.cur, &mut self.next);
        self.lo = lo;
        self.hi = hi;
    }
}

/// `ψ_n = ψ_0 Uⁿ`, i.e. `n` applications of the one-step evolution.
pub fn evolve(u: &BandedUnitary, psi0: &WaveFunction, n: usize) -> Result<WaveFunction> {
    let mut ev = Evolution::new(u, psi0, n)?;
    for _ in 0..n {
        ev.step();
    }
    Ok(WaveFunction {
        amplitudes: ev.cur,
    })
}

/// `p(n)` for `n = 0..=n_max`: probability of finding the walker back at `site`.
pub fn return_probabilities(
    spec: &WalkSpec,
    site: i64,
    q: &Qubit,
    n_max: usize,
) -> Result<Vec<f64>> {
    let dim = required_dimension(spec.lattice, site, n_max);
    return_probabilities_with(spec, dim, site, q, n_max)
}

/// As [`return_probabilities`] with an explicit truncation.
pub fn return_probabilities_with(
    spec: &WalkSpec,
    dim: usize,
    site: i64,
    q: &Qubit,
    n_max: usize,
) -> Result<Vec<f64>> {
    let lattice = spec.lattice;
    let u = build_transition(spec, dim)?;
    let psi0 = WaveFunction::localized(lattice, dim, site, q)?;
    let up = basis_index(lattice, site, true).ok_or(Error::InvalidSite(site))?;
    let down = basis_index(lattice, site, false).ok_or(Error::InvalidSite(site))?;
    let mut ev = Evolution::new(&u, &psi0, n_max)?;
    let mut out = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let s = ev.state();
        out.push((s[up].norm_sqr() + s[down].norm_sqr()).min(1.0));
        if n < n_max {
            ev.step();
        }
    }
    Ok(out)
}

/// `|⟨Ψ_{1,0}|𝔘ⁿ|Ψ⟩|² + |⟨Ψ_{0,1}|𝔘ⁿ|Ψ⟩|²` at a single time.
pub fn return_probability(spec: &WalkSpec, site: i64, q: &Qubit, n: usize) -> Result<f64> {
    Ok(return_probabilities(spec, site, q, n)?[n])
}

/// Diagonal moments `⟨Ψ|𝔘ⁿ|Ψ⟩` for `n = 0..=n_max`.
pub fn diagonal_moments(spec: &WalkSpec, site: i64, q: &Qubit, n_max: usize) -> Result<Vec<C64>> {
    let lattice = spec.lattice;
    let dim = required_dimension(lattice, site, n_max);
    let u = build_transition(spec, dim)?;
    let psi0 = WaveFunction::localized(lattice, dim, site, q)?;
    let up = basis_index(lattice, site, true).ok_or(Error::InvalidSite(site))?;
    let down = basis_index(lattice, site, false).ok_or(Error::InvalidSite(site))?;
    let mut ev = Evolution::new(&u, &psi0, n_max)?;
    let mut out = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let s = ev.state();
        out.push(s[up] * q.alpha.conj() + s[down] * q.beta.conj());
        if n < n_max {
            ev.step();
        }
    }
    Ok(out)
}

/// `(Uⁿ)_{j,k}` by repeated banded products.
pub fn amplitude(spec: &WalkSpec, j: usize, k: usize, n: usize) -> Result<C64> {
    let lattice = spec.lattice;
    let site = site_of_index(lattice, j).0;
    let dim = required_dimension(lattice, site, n).max(k + 1).max(j + 1);
    let dim = dim + dim % 2;
    let u = build_transition(spec, dim)?;
    let psi = evolve(&u, &WaveFunction::basis(dim, j), n)?;
    Ok(psi.amplitudes[k])
}
