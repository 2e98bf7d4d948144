//! `hsys`: analysis reports, extremal profiles, verification suites and
//! parameter sweeps for doubly-critical Hardy-Sobolev systems.
//!
//! Exit codes: 0 success (all checks pass), 1 check failures, 2 usage or
//! configuration errors. Errors are printed to stderr as JSON.

mod commands;
mod config;
mod suites;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use config::RunConfig;

#[derive(Parser)]
#[command(
    name = "hsys",
    version,
    about = "Sharp constants and identity checks for coupled Hardy-Sobolev systems"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sharp constant, minimizer, classification and energies.
    Analyze {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the explicit extremal pair as u.csv, v.csv and metadata.json.
    Extremal {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a verification suite; exit 1 if any check fails.
    Verify {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tabulate t0, g_min, S and classification along one parameter.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, value_enum)]
        axis: Axis,
        /// Comma-separated values; may be empty.
        #[arg(long, allow_hyphen_values = true)]
        values: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    All,
    Pohozaev,
    Interpolation,
    Nehari,
    Perturbation,
    Eigen,
    Young,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Axis {
    Kappa,
    Lambda,
    Mu,
    Beta,
}

#[derive(Debug)]
pub struct CliError {
    kind: &'static str,
    message: String,
}

impl CliError {
    pub fn config(msg: impl Into<String>) -> Self {
        CliError {
            kind: "config",
            message: msg.into(),
        }
    }

    pub fn usage(msg: impl Into<String>) -> Self {
        CliError {
            kind: "usage",
            message: msg.into(),
        }
    }

    pub fn unsupported(msg: impl Into<String>) -> Self {
        CliError {
            kind: "unsupported",
            message: msg.into(),
        }
    }

    pub fn compute(e: hsys_core::Error) -> Self {
        CliError {
            kind: "computation",
            message: e.to_string(),
        }
    }

    pub fn io(e: std::io::Error) -> Self {
        CliError {
            kind: "io",
            message: e.to_string(),
        }
    }
}

fn run(cli: Cli) -> Result<bool, CliError> {
    match cli.command {
        Command::Analyze { config, out } => {
            let cfg = RunConfig::load(&config)?;
            commands::analyze(&cfg, out.as_deref()).map(|_| true)
        }
        Command::Extremal { config, out } => {
            let cfg = RunConfig::load(&config)?;
            commands::extremal(&cfg, out.as_deref()).map(|_| true)
        }
        Command::Verify { config, suite, out } => {
            let cfg = RunConfig::load(&config)?;
            commands::verify(&cfg, suite, out.as_deref())
        }
        Command::Sweep {
            config,
            axis,
            values,
            out,
        } => {
            let cfg = RunConfig::load(&config)?;
            commands::sweep(&cfg, axis, &values, out.as_deref()).map(|_| true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!(
                "{}",
                json!({ "error": { "kind": e.kind, "message": e.message } })
            );
            ExitCode::from(2)
        }
    }
}
