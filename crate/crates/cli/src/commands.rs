use std::f64::consts::PI;
use std::fmt::Write as _;
use std::io::Write as _;

use qwalk_core::cmv::return_probabilities;
use qwalk_core::geometry::{envelope_point, epicycloid, epitrochoid, limit_lines};
use qwalk_core::halfline::sigma_arc;
use qwalk_core::report::{HalflineMassJson, LineMassJson, SCHEMA_VERSION};
use qwalk_core::schur::weight;
use qwalk_core::{defect_params, localization_report, Lattice, LocalizationReport, Side, WeightValue};
use serde::Serialize;

use crate::args::{parse_complex, parse_qubit, Format, OutputArgs, WalkArgs};
use crate::error::{CliError, CliResult};

pub fn emit(out: &OutputArgs, text: &str) -> CliResult<()> {
    match &out.output {
        Some(path) => std::fs::write(path, text)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

pub fn simulate(walk: &WalkArgs, steps: usize, site: i64, qubit: &str) -> CliResult<String> {
    let spec = walk.spec()?;
    let q = parse_qubit(qubit)?;
    let probs = return_probabilities(&spec, site, &q, steps).map_err(|e| CliError::core("--site", e))?;
    let mut s = String::from("n,p\n");
    for (n, p) in probs.iter().enumerate() {
        writeln!(s, "{n},{p}").unwrap();
    }
    Ok(s)
}

fn report(walk: &WalkArgs, qubit: &str) -> CliResult<LocalizationReport> {
    let spec = walk.spec()?;
    let q = parse_qubit(qubit)?;
    localization_report(&spec, &q).map_err(|e| CliError::core("--coin", e))
}

pub fn classify(walk: &WalkArgs, qubit: &str) -> CliResult<String> {
    Ok(to_json(&report(walk, qubit)?))
}

#[derive(Serialize)]
#[serde(untagged)]
enum MassList {
    Line(Vec<LineMassJson>),
    Halfline(Vec<HalflineMassJson>),
}

#[derive(Serialize)]
struct MassesJson {
    schema_version: u32,
    lattice: Lattice,
    mass_points: MassList,
}

pub fn masses(walk: &WalkArgs, format: Format) -> CliResult<String> {
    let list = match report(walk, "1,0,0,0")? {
        LocalizationReport::Line(r) => MassList::Line(r.mass_points),
        LocalizationReport::Halfline(r) => MassList::Halfline(r.mass_points),
    };
    if format == Format::Json {
        return Ok(to_json(&MassesJson {
            schema_version: SCHEMA_VERSION,
            lattice: walk.lattice(),
            mass_points: list,
        }));
    }
    let mut s = String::new();
    match list {
        MassList::Line(points) => {
            s.push_str("z_re,z_im,m,eta_re,eta_im\n");
            for m in points {
                writeln!(s, "{},{},{},{},{}", m.z_re, m.z_im, m.m, m.eta_re, m.eta_im).unwrap();
            }
        }
        MassList::Halfline(points) => {
            s.push_str("z_re,z_im,side,mu\n");
            for m in points {
                let side = match m.side {
                    Side::GammaPlus => "plus",
                    Side::GammaMinus => "minus",
                };
                writeln!(s, "{},{},{side},{}", m.z_re, m.z_im, m.mu).unwrap();
            }
        }
    }
    Ok(s)
}

#[derive(Serialize)]
struct ReturnProbJson {
    schema_version: u32,
    lattice: Lattice,
    /// `limit` of `p(2n)` on the line, `cesaro` mean of `p(n)` on the half-line.
    mode: &'static str,
    value: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    simulated_average: Option<f64>,
}

pub fn return_prob(walk: &WalkArgs, qubit: &str, steps: Option<usize>, format: Format) -> CliResult<String> {
    let (mode, value) = match report(walk, qubit)? {
        LocalizationReport::Line(r) => ("limit", r.p_limit),
        LocalizationReport::Halfline(r) => ("cesaro", r.p_cesaro),
    };
    let simulated_average = match steps {
        Some(n) => {
            if n < 2 {
                return Err(CliError::usage("--steps", "must be at least 2"));
            }
            let spec = walk.spec()?;
            let probs = return_probabilities(&spec, 0, &parse_qubit(qubit)?, n)
                .map_err(|e| CliError::core("--steps", e))?;
            let stride = if spec.lattice == Lattice::Line { 2 } else { 1 };
            let start = (n / 2).next_multiple_of(stride);
            let window: Vec<f64> = probs[start..].iter().step_by(stride).copied().collect();
            Some(window.iter().sum::<f64>() / window.len() as f64)
        }
        None => None,
    };
    if format == Format::Csv {
        let mut s = String::from("mode,value");
        s.push_str(if simulated_average.is_some() { ",simulated_average\n" } else { "\n" });
        write!(s, "{mode},{value}").unwrap();
        if let Some(avg) = simulated_average {
            write!(s, ",{avg}").unwrap();
        }
        s.push('\n');
        return Ok(s);
    }
    Ok(to_json(&ReturnProbJson {
        schema_version: SCHEMA_VERSION,
        lattice: walk.lattice(),
        mode,
        value,
        simulated_average,
    }))
}

pub fn weights(walk: &WalkArgs, grid: usize) -> CliResult<String> {
    if grid < 1 {
        return Err(CliError::usage("--theta-grid", "must be positive"));
    }
    let spec = walk.spec()?;
    let p = defect_params(&spec).map_err(|e| CliError::core("--coin", e))?;
    let mut s = String::from(match spec.lattice {
        Lattice::HalfLine => "theta,w\n",
        Lattice::Line => "theta,w11_re,w11_im,w12_re,w12_im,w21_re,w21_im,w22_re,w22_im\n",
    });
    for k in 0..grid {
        let theta = 2.0 * PI * k as f64 / grid as f64;
        let bw = weight(spec.lattice, &p, theta).map_err(|e| CliError::core("--theta-grid", e))?;
        write!(s, "{theta}").unwrap();
        match bw.w {
            WeightValue::Scalar(w) => write!(s, ",{w}").unwrap(),
            WeightValue::Matrix(m) => {
                for z in m.iter().flatten() {
                    write!(s, ",{},{}", z.re, z.im).unwrap();
                }
            }
        }
        s.push('\n');
    }
    Ok(s)
}

pub fn curves(a: Option<&str>, samples: usize) -> CliResult<String> {
    if samples < 2 {
        return Err(CliError::usage("--samples", "must be at least 2"));
    }
    let mut s = String::from("curve,t,re,im\n");
    let mut row = |name: &str, t: f64, z: qwalk_core::C64| writeln!(s, "{name},{t},{},{}", z.re, z.im).unwrap();
    for k in 0..samples {
        let t = 2.0 * PI * k as f64 / samples as f64;
        row("epitrochoid", t, epitrochoid(t));
    }
    for k in 0..samples {
        let t = 2.0 * PI * k as f64 / samples as f64;
        row("epicycloid", t, epicycloid(t));
    }
    let Some(a) = a else {
        return Ok(s);
    };
    let a = parse_complex("--a", a)?;
    if a.norm() == 0.0 || a.norm() >= 1.0 {
        return Err(CliError::usage("--a", "must satisfy 0 < |a| < 1"));
    }
    let (t0, t1) = sigma_arc(a).map_err(|e| CliError::core("--a", e))?;
    for (name, side) in [("envelope_plus", Side::GammaPlus), ("envelope_minus", Side::GammaMinus)] {
        for k in 0..samples {
            let t = t0 + (t1 - t0) * (k as f64 + 0.5) / samples as f64;
            if let Ok(z) = envelope_point(a, t, side) {
                row(name, t, z);
            }
        }
    }
    for (k, chord) in limit_lines(a).map_err(|e| CliError::core("--a", e))?.iter().enumerate() {
        let name = format!("limit_line_{k}");
        row(&name, 0.0, chord.from);
        row(&name, 1.0, chord.to);
    }
    Ok(s)
}
