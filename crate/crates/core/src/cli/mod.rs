//! Batch front end: load a scenario, run one named suite, write a JSON
//! report (and optionally a CSV table).
//!
//! Exit codes: 0 when every check passes, 1 when one fails, 2 for unusable
//! input, 3 when a flux period is not an integer.
//!
//! See [`config`] for the scenario format.

pub mod commands;
pub mod config;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use thiserror::Error;

pub use commands::{run, Report, RunOptions, Value};
pub use config::{Model, Scenario};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("quantization violated: {0}")]
    Quantization(String),
    #[error("check could not run: {0}")]
    Check(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Io(_) => 2,
            CliError::Quantization(_) => 3,
            CliError::Check(_) => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "gerbe-check",
    version,
    about = "Verify cocycle, transport and associator identities for line bundles and gerbes on tori"
)]
pub struct Cli {
    /// Scenario file (TOML).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Seed for randomized samples; overrides the scenario's seed.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    pub json: Option<PathBuf>,
    /// Write a phase table here.
    #[arg(long, global = true)]
    pub csv: Option<PathBuf>,
    /// Tolerance for floating-point comparisons.
    #[arg(long, global = true)]
    pub tolerance: Option<f64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Transition cocycle condition on a lattice box.
    CheckCocycle,
    /// Compatibility of the connection data with the cocycle.
    CheckConnection,
    /// Translation sections (line) or higher sections (gerbe).
    Section,
    /// Projective relation (line) or the Π isomorphism between sections (gerbe).
    Twist2,
    /// δc = 1 (line) or the 3-cocycle ω (gerbe).
    Twist3,
    /// Pentagon relation with associator ω (gerbe only).
    Pentagon,
    /// Integer periods of the curvature.
    Flux,
    /// Associativity, unit and equivalence for the path extension (line only).
    SymProduct,
    /// Group-cohomology relations between the twisting cochains.
    Cohomology,
    /// Finite-dimensional translation operators.
    Operators,
    /// Randomized exact Stokes checks.
    StokesSelftest,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::CheckCocycle => "check-cocycle",
            Command::CheckConnection => "check-connection",
            Command::Section => "section",
            Command::Twist2 => "twist2",
            Command::Twist3 => "twist3",
            Command::Pentagon => "pentagon",
            Command::Flux => "flux",
            Command::SymProduct => "sym-product",
            Command::Cohomology => "cohomology",
            Command::Operators => "operators",
            Command::StokesSelftest => "stokes-selftest",
        }
    }

    fn needs_config(self) -> bool {
        !matches!(self, Command::Operators | Command::StokesSelftest)
    }
}

fn execute(cli: &Cli) -> Result<Report, CliError> {
    let scenario = match &cli.config {
        Some(path) => Some(Scenario::load(path)?),
        None if cli.command.needs_config() => {
            return Err(CliError::Config(format!(
                "`{}` needs --config",
                cli.command.name()
            )))
        }
        None => None,
    };
    if let Some(t) = cli.tolerance {
        if !(t.is_finite() && t > 0.0) {
            return Err(CliError::Config(format!(
                "tolerance must be positive, got {t}"
            )));
        }
    }
    let opts = RunOptions {
        seed: cli
            .seed
            .or(scenario.as_ref().and_then(|s| s.seed))
            .unwrap_or(0),
        tolerance: cli.tolerance,
    };
    let report = run(cli.command, scenario.as_ref(), &opts)?;
    let json = serde_json::to_string_pretty(&report).map_err(|e| CliError::Check(e.to_string()))?;
    match &cli.json {
        Some(path) => {
            std::fs::write(path, json + "\n")?;
            println!(
                "{}: {}",
                report.command,
                if report.passed { "pass" } else { "FAIL" }
            );
        }
        None => println!("{json}"),
    }
    if let Some(path) = &cli.csv {
        report.write_csv(path)?;
    }
    Ok(report)
}

/// Parse `args` (including the program name), run, and return the exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(report) if report.passed => 0,
        Ok(report) => {
            for check in report.checks.iter().filter(|c| !c.passed) {
                let first = check
                    .failures()
                    .next()
                    .map(|i| format!("{}: {}", i.label, i.residue))
                    .unwrap_or_default();
                eprintln!("failed: {} [{}] {first}", check.check, check.identity);
            }
            1
        }
        Err(e) => {
            eprintln!("{e}");
            e.exit_code()
        }
    }
}
