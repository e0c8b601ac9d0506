mod args;
mod commands;
mod error;
mod region;
mod verify;

use std::process::ExitCode;

use clap::Parser;
use qwalk_core::oracle::BRUTE_FORCE_MAX_STEPS;

use args::{Cli, Command, Format, Suite};
use error::{CliError, CliResult};

fn init_threads() -> CliResult<()> {
    let Ok(v) = std::env::var("QWALK_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::usage("QWALK_THREADS", format!("'{v}' is not a positive integer")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::usage("QWALK_THREADS", e.to_string()))
}

fn run(cli: Cli) -> CliResult<()> {
    init_threads()?;
    match cli.command {
        Command::Simulate { walk, steps, site, qubit, out } => {
            out.format(Format::Csv, &[Format::Csv])?;
            commands::emit(&out, &commands::simulate(&walk, steps, site, &qubit)?)
        }
        Command::Classify { walk, qubit, out } => {
            out.format(Format::Json, &[Format::Json])?;
            commands::emit(&out, &commands::classify(&walk, &qubit)?)
        }
        Command::Masses { walk, out } => {
            let f = out.format(Format::Csv, &[Format::Csv, Format::Json])?;
            commands::emit(&out, &commands::masses(&walk, f)?)
        }
        Command::ReturnProb { walk, qubit, steps, out } => {
            let f = out.format(Format::Json, &[Format::Csv, Format::Json])?;
            commands::emit(&out, &commands::return_prob(&walk, &qubit, steps, f)?)
        }
        Command::Region { lattice, a, b, omega, grid, out } => {
            out.format(Format::Csv, &[Format::Csv])?;
            let csv = region::region(lattice.into(), a.as_deref(), b.as_deref(), &omega, grid)?;
            commands::emit(&out, &csv)
        }
        Command::Curves { a, samples, out } => {
            out.format(Format::Csv, &[Format::Csv])?;
            commands::emit(&out, &commands::curves(a.as_deref(), samples)?)
        }
        Command::Weight { walk, theta_grid, out } => {
            out.format(Format::Csv, &[Format::Csv])?;
            commands::emit(&out, &commands::weights(&walk, theta_grid)?)
        }
        Command::Verify { suite, walk, steps, site, out } => {
            out.format(Format::Csv, &[Format::Csv])?;
            let steps = steps.unwrap_or(verify::default_steps(suite));
            if steps == 0 {
                return Err(CliError::usage("--steps", "must be positive"));
            }
            if suite == Suite::Brute && steps > BRUTE_FORCE_MAX_STEPS {
                return Err(CliError::core(
                    "--steps",
                    qwalk_core::Error::TooLarge { steps, max: BRUTE_FORCE_MAX_STEPS },
                ));
            }
            if site != 0 && suite != Suite::Brute {
                return Err(CliError::usage("--site", "only the brute suite accepts a site"));
            }
            let cases = match walk.walk() {
                Some(w) => vec![verify::Case {
                    name: "given".into(),
                    spec: w.spec()?,
                }],
                None => verify::builtin_panel(),
            };
            let rows = verify::run_suite(suite, &cases, steps, site);
            commands::emit(&out, &verify::table(suite, &rows))?;
            let failed = rows.iter().filter(|r| !r.passed()).count();
            if failed > 0 {
                return Err(CliError::Numerical(format!("{failed} of {} checks failed", rows.len())));
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("qwalk: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
