//! `torusq`: colored Jones ratios, Kashaev invariants and their asymptotics
//! for torus knots.
//!
//! Exit status: 0 on success, 2 when an argument is rejected, 3 when a
//! numerical method fails to reach its tolerance.

mod args;
mod commands;
mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use torusq_core::{Error, Precision};

use args::{Cli, Command, Format};

const EXIT_INVALID: u8 = 2;
const EXIT_NUMERIC: u8 = 3;

/// The flag a rejected value most likely came from.
fn culprit(cmd: &Command, err: &Error) -> &'static str {
    match err {
        Error::NotCoprime { .. } | Error::NonPositive { .. } => "-m/-p",
        Error::InvalidColor(_) => "-k",
        Error::ContourConditionViolated(_) => "--phi",
        Error::ZeroLeadingCoefficient(_) | Error::OrderExceeded { .. } => "--order",
        Error::IndexOutOfRange { .. } => "--n-max",
        _ => match cmd {
            Command::Jones { .. } | Command::VerifyLemma1 { .. } => "--h",
            Command::Alexander { .. } => "--t",
            Command::Torsion { .. } => "--z",
            Command::Expand { .. } => "--n-max",
            Command::VolumeScan { .. } => "--kmin/--kmax/--kstep",
            _ => "--tol",
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.run.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: --jobs: {e}");
            return ExitCode::from(EXIT_INVALID);
        }
    }
    let precision = cli.run.precision.map_or(Precision::Double, Precision::from_bits);

    let report = match commands::run(&cli.command, precision) {
        Ok(r) => r,
        Err(e) if e.is_numerical() => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_NUMERIC);
        }
        Err(e) => {
            eprintln!("error: {}: {e}", culprit(&cli.command, &e));
            return ExitCode::from(EXIT_INVALID);
        }
    };

    let text = match cli.run.format {
        Format::Json => output::to_json(&report.json),
        Format::Csv => report.table.to_csv(),
    };
    let written = match &cli.run.out {
        Some(path) => std::fs::write(path, &text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: writing output: {e}");
        return ExitCode::FAILURE;
    }
    ExitCode::SUCCESS
}
