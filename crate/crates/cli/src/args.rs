use std::f64::consts::PI;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qwalk_core::{Coin, Lattice, Qubit, WalkSpec, C64};
use serde::Deserialize;

use crate::error::{CliError, CliResult};

#[derive(Debug, Parser)]
#[command(name = "qwalk", version, about = "One-defect quantum walks on the line and half-line")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Return probability p(n) at a site, by exact evolution (CSV n,p).
    Simulate {
        #[command(flatten)]
        walk: WalkArgs,
        #[arg(long, default_value_t = 100)]
        steps: usize,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        site: i64,
        #[arg(long, default_value = "1,0,0,0", allow_hyphen_values = true)]
        qubit: String,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Localization class, mass points and limiting return probability (JSON).
    Classify {
        #[command(flatten)]
        walk: WalkArgs,
        #[arg(long, default_value = "1,0,0,0", allow_hyphen_values = true)]
        qubit: String,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Mass points of the measure at the origin.
    Masses {
        #[command(flatten)]
        walk: WalkArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Asymptotic return probability at the origin.
    ReturnProb {
        #[command(flatten)]
        walk: WalkArgs,
        #[arg(long, default_value = "1,0,0,0", allow_hyphen_values = true)]
        qubit: String,
        /// Also average the simulated p(n) over n in [steps/2, steps].
        #[arg(long)]
        steps: Option<usize>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Number of mass points over a grid of a (given b) or b (given a) (CSV).
    Region {
        #[arg(long, value_enum, default_value_t = LatticeArg::Line)]
        lattice: LatticeArg,
        #[arg(long, allow_hyphen_values = true)]
        a: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        b: Option<String>,
        #[arg(long, default_value = "1,0", allow_hyphen_values = true)]
        omega: String,
        #[arg(long, default_value_t = 64)]
        grid: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Samples of the epitrochoid, epicycloid and, given a, envelopes and limit lines (CSV).
    Curves {
        #[arg(long, allow_hyphen_values = true)]
        a: Option<String>,
        #[arg(long, default_value_t = 512)]
        samples: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Absolutely continuous weight of the hatted measure on a theta grid (CSV).
    Weight {
        #[command(flatten)]
        walk: WalkArgs,
        #[arg(long, default_value_t = 360)]
        theta_grid: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Cross-check simulation against the analytic and quadrature oracles.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[command(flatten)]
        walk: OptionalWalkArgs,
        /// Number of steps; defaults per suite.
        #[arg(long)]
        steps: Option<usize>,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        site: i64,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LatticeArg {
    Line,
    Halfline,
}

impl From<LatticeArg> for Lattice {
    fn from(l: LatticeArg) -> Self {
        match l {
            LatticeArg::Line => Lattice::Line,
            LatticeArg::Halfline => Lattice::HalfLine,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Wiener,
    Kmcg,
    Brute,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

impl OutputArgs {
    /// The requested format, or `default`; anything outside `allowed` is rejected.
    pub fn format(&self, default: Format, allowed: &[Format]) -> CliResult<Format> {
        let f = self.format.unwrap_or(default);
        if allowed.contains(&f) {
            Ok(f)
        } else {
            Err(CliError::usage("--format", format!("{f:?} is not supported here").to_lowercase()))
        }
    }
}

/// A walk given either by coins or by reduced parameters.
#[derive(Debug, Clone, Args)]
pub struct WalkArgs {
    #[arg(long, value_enum, default_value_t = LatticeArg::Line)]
    pub lattice: LatticeArg,
    /// Bulk coin: hadamard, identity, konno:PHI, 8 reals, JSON object or @file.json.
    #[arg(long, allow_hyphen_values = true)]
    pub coin: Option<String>,
    /// Coin at the origin; defaults to the bulk coin.
    #[arg(long, allow_hyphen_values = true)]
    pub defect: Option<String>,
    /// Reduced parameter a as "re,im" (instead of --coin).
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub omega: Option<String>,
}

impl WalkArgs {
    pub fn lattice(&self) -> Lattice {
        self.lattice.into()
    }

    pub fn spec(&self) -> CliResult<WalkSpec> {
        let reduced = self.a.is_some() || self.b.is_some() || self.omega.is_some();
        if reduced {
            if self.coin.is_some() || self.defect.is_some() {
                return Err(CliError::usage("--a", "cannot be combined with --coin/--defect"));
            }
            let a = self
                .a
                .as_deref()
                .ok_or_else(|| CliError::usage("--a", "required with --b/--omega"))?;
            let a = parse_complex("--a", a)?;
            let b = parse_complex("--b", self.b.as_deref().unwrap_or("0,0"))?;
            let omega = parse_omega(self.omega.as_deref().unwrap_or("1,0"))?;
            return WalkSpec::from_reduced(self.lattice(), a, b, omega).map_err(|e| {
                let flag = match e {
                    qwalk_core::Error::ParameterOutOfDisk { name: "b", .. } => "--b",
                    _ => "--a",
                };
                CliError::core(flag, e)
            });
        }
        let coin = self
            .coin
            .as_deref()
            .ok_or_else(|| CliError::usage("--coin", "required unless --a is given"))?;
        let coin = parse_coin("--coin", coin)?;
        let defect = match &self.defect {
            Some(d) => parse_coin("--defect", d)?,
            None => coin,
        };
        Ok(WalkSpec::new(self.lattice(), coin, defect))
    }
}

/// Walk arguments for commands that fall back to a built-in panel.
#[derive(Debug, Clone, Args)]
pub struct OptionalWalkArgs {
    #[arg(long, value_enum)]
    pub lattice: Option<LatticeArg>,
    #[arg(long, allow_hyphen_values = true)]
    pub coin: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub defect: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub omega: Option<String>,
}

impl OptionalWalkArgs {
    /// `None` when no walk was described.
    pub fn walk(&self) -> Option<WalkArgs> {
        let given = self.coin.is_some()
            || self.defect.is_some()
            || self.a.is_some()
            || self.b.is_some()
            || self.omega.is_some();
        given.then(|| WalkArgs {
            lattice: self.lattice.unwrap_or(LatticeArg::Line),
            coin: self.coin.clone(),
            defect: self.defect.clone(),
            a: self.a.clone(),
            b: self.b.clone(),
            omega: self.omega.clone(),
        })
    }
}

fn parse_reals(flag: &str, s: &str, n: usize) -> CliResult<Vec<f64>> {
    let v: Vec<f64> = s
        .split(',')
        .map(|t| {
            let t = t.trim();
            t.parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| CliError::usage(flag, format!("'{t}' is not a finite number")))
        })
        .collect::<CliResult<_>>()?;
    if v.len() != n {
        return Err(CliError::usage(
            flag,
            format!("expected {n} comma-separated numbers, got {}", v.len()),
        ));
    }
    Ok(v)
}

/// `"re,im"`.
pub fn parse_complex(flag: &str, s: &str) -> CliResult<C64> {
    let v = parse_reals(flag, s, 2)?;
    Ok(C64::new(v[0], v[1]))
}

fn parse_omega(s: &str) -> CliResult<C64> {
    let w = parse_complex("--omega", s)?;
    if (w.norm() - 1.0).abs() > 1e-9 {
        return Err(CliError::usage("--omega", format!("|omega| = {} is not 1", w.norm())));
    }
    Ok(w)
}

/// `"re,im,re,im"`; inputs within 1e-6 of unit norm are renormalized.
pub fn parse_qubit(s: &str) -> CliResult<Qubit> {
    let v = parse_reals("--qubit", s, 4)?;
    let (alpha, beta) = (C64::new(v[0], v[1]), C64::new(v[2], v[3]));
    let norm_sqr = alpha.norm_sqr() + beta.norm_sqr();
    if (norm_sqr - 1.0).abs() > 1e-6 {
        return Err(CliError::core(
            "--qubit",
            qwalk_core::Error::QubitNotNormalized { norm_sqr },
        ));
    }
    Qubit::normalized(alpha, beta).map_err(|e| CliError::core("--qubit", e))
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CoinJson {
    c11_re: f64,
    c11_im: f64,
    c12_re: f64,
    c12_im: f64,
    c21_re: f64,
    c21_im: f64,
    c22_re: f64,
    c22_im: f64,
}

impl CoinJson {
    fn reals(&self) -> [f64; 8] {
        [
            self.c11_re, self.c11_im, self.c12_re, self.c12_im, self.c21_re, self.c21_im,
            self.c22_re, self.c22_im,
        ]
    }
}

/// A number, optionally followed by `pi`: `"3.14"`, `"pi"`, `"0.5pi"`, `"-pi"`.
fn parse_angle(flag: &str, s: &str) -> CliResult<f64> {
    let s = s.trim();
    let bad = || CliError::usage(flag, format!("'{s}' is not an angle"));
    match s.strip_suffix("pi") {
        Some("") => Ok(PI),
        Some("-") => Ok(-PI),
        Some(k) => k.parse::<f64>().map(|k| k * PI).map_err(|_| bad()),
        None => s.parse::<f64>().map_err(|_| bad()),
    }
}

pub fn parse_coin(flag: &str, s: &str) -> CliResult<Coin> {
    let s = s.trim();
    let lower = s.to_ascii_lowercase();
    if lower == "hadamard" {
        return Ok(Coin::hadamard());
    }
    if lower == "identity" {
        return Ok(Coin::identity());
    }
    if let Some(phi) = lower.strip_prefix("konno:") {
        return Ok(Coin::konno(parse_angle(flag, phi)?));
    }
    let reals = if let Some(path) = s.strip_prefix('@') {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::usage(flag, format!("cannot read {path}: {e}")))?;
        coin_json(flag, &text)?
    } else if s.starts_with('{') {
        coin_json(flag, s)?
    } else {
        let v = parse_reals(flag, s, 8)?;
        std::array::from_fn(|i| v[i])
    };
    Coin::from_reals(reals).map_err(|e| CliError::core(flag, e))
}

fn coin_json(flag: &str, text: &str) -> CliResult<[f64; 8]> {
    serde_json::from_str::<CoinJson>(text)
        .map(|c| c.reals())
        .map_err(|e| CliError::usage(flag, format!("bad coin JSON: {e}")))
}
