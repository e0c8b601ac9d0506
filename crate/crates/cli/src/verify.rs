use std::fmt::Write as _;

use qwalk_core::cmv::{diagonal_moments, required_dimension, Evolution};
use qwalk_core::oracle::{brute_force_return, moment_by_quadrature, wiener_average, MomentSequence};
use qwalk_core::{
    build_transition, classify_line, defect_params, halfline_roots, return_probabilities, Coin,
    Error, Lattice, Qubit, WalkSpec, WaveFunction, C64,
};

use crate::args::Suite;

pub struct Case {
    pub name: String,
    pub spec: WalkSpec,
}

/// Fixed walks used when no walk is given on the command line.
pub fn builtin_panel() -> Vec<Case> {
    let h = Coin::hadamard();
    let reduced = |lattice, a: C64, b: C64| {
        WalkSpec::from_reduced(lattice, a, b, C64::new(1.0, 0.0)).expect("panel parameters are valid")
    };
    vec![
        Case {
            name: "line/konno-pi".into(),
            spec: WalkSpec::new(Lattice::Line, h, Coin::konno(std::f64::consts::PI)),
        },
        Case {
            name: "line/hadamard".into(),
            spec: WalkSpec::constant(Lattice::Line, h),
        },
        Case {
            name: "line/a=0.7i,b=0.2".into(),
            spec: reduced(Lattice::Line, C64::new(0.0, 0.7), C64::new(0.2, 0.0)),
        },
        Case {
            name: "halfline/hadamard".into(),
            spec: WalkSpec::constant(Lattice::HalfLine, h),
        },
        Case {
            name: "halfline/a=b=0.5+0.5i".into(),
            spec: reduced(Lattice::HalfLine, C64::new(0.5, 0.5), C64::new(0.5, 0.5)),
        },
        Case {
            name: "halfline/a=-0.6+0.3i,b=0.4-0.2i".into(),
            spec: reduced(Lattice::HalfLine, C64::new(-0.6, 0.3), C64::new(0.4, -0.2)),
        },
    ]
}

pub struct Row {
    pub case: String,
    pub residual: Result<f64, Error>,
    pub tolerance: f64,
}

impl Row {
    pub fn passed(&self) -> bool {
        matches!(self.residual, Ok(r) if r <= self.tolerance)
    }
}

pub fn default_steps(suite: Suite) -> usize {
    match suite {
        Suite::Wiener => 2000,
        Suite::Kmcg => 20,
        Suite::Brute => 32,
    }
}

pub fn tolerance(suite: Suite) -> f64 {
    match suite {
        Suite::Wiener => 0.02,
        Suite::Kmcg => 1e-6,
        Suite::Brute => 1e-12,
    }
}

/// `|Wiener average − Σ atom²|` for the up spin at the origin.
fn wiener_residual(spec: &WalkSpec, steps: usize) -> Result<f64, Error> {
    let moments = diagonal_moments(spec, 0, &Qubit::up(), steps)?;
    let wiener = wiener_average(&MomentSequence { values: moments }, steps);
    let atoms = match defect_params(spec) {
        Ok(p) => match spec.lattice {
            Lattice::Line => classify_line(p.a, p.b, p.omega).points.iter().map(|m| m.m * m.m).sum(),
            Lattice::HalfLine => halfline_roots(p.a, p.b).iter().map(|m| m.mu * m.mu).sum(),
        },
        Err(Error::DiagonalCoin) => 0.0,
        Err(e) => return Err(e),
    };
    Ok((wiener - atoms).abs())
}

/// Largest gap between quadrature moments and the simulated `(Uⁿ)` block at the origin.
fn kmcg_residual(spec: &WalkSpec, steps: usize) -> Result<f64, Error> {
    let p = defect_params(spec)?;
    let dim = required_dimension(spec.lattice, 1, steps);
    let u = build_transition(spec, dim)?;
    let entries = match spec.lattice {
        Lattice::HalfLine => 1,
        Lattice::Line => 2,
    };
    let basis: Vec<WaveFunction> = (0..entries).map(|j| WaveFunction::basis(dim, j)).collect();
    let mut rows = basis
        .iter()
        .map(|w| Evolution::new(&u, w, steps))
        .collect::<Result<Vec<_>, _>>()?;
    let mut worst = 0.0f64;
    for n in 0..=steps {
        let quad = moment_by_quadrature(&p, n, spec.lattice)?;
        for (qrow, row) in quad.iter().zip(&rows) {
            for (q, u) in qrow.iter().zip(row.state()).take(entries) {
                worst = worst.max((q - u).norm());
            }
        }
        rows.iter_mut().for_each(Evolution::step);
    }
    Ok(worst)
}

/// Largest gap between dense matrix powers and banded evolution.
fn brute_residual(spec: &WalkSpec, site: i64, steps: usize) -> Result<f64, Error> {
    let q = Qubit::normalized(C64::new(0.6, 0.0), C64::new(0.0, 0.8))?;
    let banded = return_probabilities(spec, site, &q, steps)?;
    let mut worst = 0.0f64;
    for (n, p) in banded.iter().enumerate() {
        worst = worst.max((brute_force_return(spec, site, &q, n)? - p).abs());
    }
    Ok(worst)
}

pub fn run_suite(suite: Suite, cases: &[Case], steps: usize, site: i64) -> Vec<Row> {
    cases
        .iter()
        .map(|c| Row {
            case: c.name.clone(),
            residual: match suite {
                Suite::Wiener => wiener_residual(&c.spec, steps),
                Suite::Kmcg => kmcg_residual(&c.spec, steps),
                Suite::Brute => brute_residual(&c.spec, site, steps),
            },
            tolerance: tolerance(suite),
        })
        .collect()
}

pub fn table(suite: Suite, rows: &[Row]) -> String {
    let name = match suite {
        Suite::Wiener => "wiener",
        Suite::Kmcg => "kmcg",
        Suite::Brute => "brute",
    };
    let mut s = format!("{:<8} {:<34} {:>12} {:>10} status\n", "suite", "case", "residual", "tolerance");
    for r in rows {
        let (residual, status) = match &r.residual {
            Ok(x) => (format!("{x:.3e}"), if r.passed() { "PASS" } else { "FAIL" }),
            Err(e) => (e.to_string(), "ERROR"),
        };
        writeln!(s, "{name:<8} {:<34} {residual:>12} {:>10.0e} {status}", r.case, r.tolerance).unwrap();
    }
    s
}
