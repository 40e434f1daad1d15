//! `twistor`: construct five-fibre cubics, find and label their 27 lines,
//! detect five-fibre twistor structures, and rerun the case studies.

mod commands;
mod config;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::{Format, RunConfig};

#[derive(Parser)]
#[command(name = "twistor", version, about = "Twistor fibres on cubic surfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Newton starts per affine chart in the line solver.
    #[arg(long, global = true, default_value_t = 2000)]
    starts: usize,
    /// Override a tolerance, e.g. `--tol dedup=1e-7` (newton, dedup, singular, singular_newton).
    #[arg(long = "tol", global = true, value_name = "NAME=VALUE")]
    tol: Vec<String>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Build the pencil of cubics containing the fibres over five points.
    Construct { points: PathBuf },
    /// Find, count and label the 27 lines of a cubic.
    Lines { cubic: PathBuf },
    /// Search a cubic for a twistor structure with five fibres.
    Detect {
        cubic: PathBuf,
        /// Also count the fibres of this structure (JSON 4x4 matrix of [re, im]).
        #[arg(long)]
        structure: Option<PathBuf>,
    },
    /// Rerun a worked example and check its claims.
    Casestudy { name: commands::CaseStudy },
}

/// A report and the exit code it carries.
pub struct Outcome {
    pub report: String,
    pub code: u8,
}

/// Error that ends the run without a report.
#[derive(Debug)]
pub struct Failure {
    pub message: String,
    pub code: u8,
}

pub const EXIT_CLAIM: u8 = 1;
pub const EXIT_INADMISSIBLE: u8 = 2;
pub const EXIT_PARSE: u8 = 3;
pub const EXIT_SHORTFALL: u8 = 4;

impl Failure {
    pub fn parse(message: impl Into<String>) -> Self {
        Failure { message: message.into(), code: EXIT_PARSE }
    }
}

impl From<twistor_core::Error> for Failure {
    fn from(e: twistor_core::Error) -> Self {
        use twistor_core::Error::*;
        let code = match e {
            Parse(_) | InvalidInput(_) => EXIT_PARSE,
            WrongLineCount { .. } | GraphInvariantViolation(_) => EXIT_SHORTFALL,
            _ => EXIT_CLAIM,
        };
        Failure { message: e.to_string(), code }
    }
}

fn run(cli: Cli) -> Result<Outcome, Failure> {
    let cfg = RunConfig::new(cli.seed, cli.starts, &cli.tol, cli.format)?;
    let outcome = match &cli.command {
        Command::Construct { points } => commands::construct(points, &cfg)?,
        Command::Lines { cubic } => commands::lines(cubic, &cfg)?,
        Command::Detect { cubic, structure } => commands::detect(cubic, structure.as_deref(), &cfg)?,
        Command::Casestudy { name } => commands::casestudy(*name, &cfg)?,
    };
    Ok(outcome)
}

fn emit(report: &str, out: Option<&PathBuf>) -> std::io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, report),
        None => std::io::stdout().write_all(report.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = cli.out.clone();
    match run(cli) {
        Ok(o) => {
            if let Err(e) = emit(&o.report, out.as_ref()) {
                eprintln!("error: cannot write report: {e}");
                return ExitCode::from(EXIT_CLAIM);
            }
            ExitCode::from(o.code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
