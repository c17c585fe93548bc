//! Command-line front end. Scenario files in, JSON or CSV reports out.

mod commands;
mod paper;
mod report;
mod scenario;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use crate::protocol::ProtocolError;

pub use commands::{cmd_estimate, cmd_reproduce_paper, cmd_session, CommandOutput, EXIT_ABORTED, EXIT_ACCEPTED, EXIT_CONFIG};
pub use paper::{reproduce_paper, CheckRow, PaperOptions};
pub use report::{Format, Report, SCHEMA_VERSION};
pub use scenario::{ScenarioFile, Sweep, DEFAULT_TRIALS};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Protocol(#[from] ProtocolError),
    #[error("{0}")]
    Runtime(String),
}

#[derive(Debug, Parser)]
#[command(name = "epr-auth", version, about = "Simulate and attack EPR-pair quantum authentication")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub run: RunConfig,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Run one authentication round; exit 0 if accepted, 1 if aborted.
    Session,
    /// Monte Carlo estimate of the scenario's quantity.
    Estimate,
    /// Check every claim of the security analysis; exit 0 if all hold.
    ReproducePaper,
}

#[derive(Debug, Clone, Args)]
pub struct RunConfig {
    /// Scenario file (JSON).
    #[arg(long, global = true)]
    pub scenario: Option<PathBuf>,
    /// Master seed; overrides the file.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Trial count; overrides the file.
    #[arg(long, global = true)]
    pub trials: Option<u64>,
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
    /// Output path; standard output when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

impl From<crate::quantum::QuantumError> for CliError {
    fn from(e: crate::quantum::QuantumError) -> Self {
        CliError::Protocol(e.into())
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        EXIT_CONFIG
    }
}

/// Runs a parsed command line and returns the process exit code.
pub fn execute(command: Command, run: &RunConfig) -> i32 {
    match dispatch(command, run).and_then(|out| write(&out, run).map(|_| out.exit_code)) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("epr-auth: {e}");
            e.exit_code()
        }
    }
}

pub fn dispatch(command: Command, run: &RunConfig) -> Result<CommandOutput, CliError> {
    let file = || -> Result<ScenarioFile, CliError> {
        let path = run.scenario.as_ref().ok_or_else(|| CliError::Config("--scenario is required".into()))?;
        ScenarioFile::load(path)
    };
    match command {
        Command::Session => cmd_session(&file()?, run.seed),
        Command::Estimate => cmd_estimate(&file()?, run.seed, run.trials),
        Command::ReproducePaper => {
            if run.trials == Some(0) {
                return Err(CliError::Config("trials must be at least 1".into()));
            }
            cmd_reproduce_paper(&PaperOptions { seed: run.seed.unwrap_or(0), trials: run.trials, ..Default::default() })
        }
    }
}

fn write(out: &CommandOutput, run: &RunConfig) -> Result<(), CliError> {
    let text = out.report.render(run.format)?;
    match &run.out {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Runtime(format!("cannot write {}: {e}", p.display()))),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| CliError::Runtime(e.to_string())),
    }
}

/// Entry point for the binary.
pub fn main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_CONFIG } else { 0 };
        }
    };
    execute(cli.command, &cli.run)
}
