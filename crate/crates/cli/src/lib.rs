//! Command-line front end for `dispersive-core`: frequency sweeps, the
//! invariant report, Langevin ensembles, the driven-oscillator ledger and
//! causality checks, with reproducible configuration and provenance-stamped
//! output.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod config;
pub mod error;
pub mod material;
pub mod output;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::{Format, Overrides, RunConfig};
use error::{CliError, CliResult};
use output::emit;

#[derive(Debug, Parser)]
#[command(name = "dispersive", version, about = "Energy densities of dispersive and absorbing media")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub flags: Overrides,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Permittivity, index, group velocity and spectral energy density (CSV).
    Spectrum,
    /// Energy density of an absorbing medium in both closed forms (CSV).
    Energy,
    /// Invariant checks for the model over the band (JSON; exit 2 on failure).
    Verify,
    /// Langevin oscillator ensemble against analytic targets (JSON).
    Simulate,
    /// Energy ledger of the driven medium oscillators over time (CSV).
    Ledger,
    /// Kramers-Kronig residual on the band grid (JSON; exit 2 if non-causal).
    #[command(name = "kk-check")]
    KkCheck,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Spectrum => "spectrum",
            Command::Energy => "energy",
            Command::Verify => "verify",
            Command::Simulate => "simulate",
            Command::Ledger => "ledger",
            Command::KkCheck => "kk-check",
        }
    }
}

/// Write a check report, then fail with exit code 2 if any check failed.
fn emit_checks(config: &RunConfig, report: &output::Report, pass: bool) -> CliResult<()> {
    emit(config, report, Format::Json)?;
    if pass {
        return Ok(());
    }
    let output::Report::Records(records) = report else {
        unreachable!("check commands emit records")
    };
    let failed = records
        .iter()
        .filter(|r| r.get("pass") == Some(&false.into()) || r.get("non_causal") == Some(&true.into()))
        .count();
    Err(CliError::ChecksFailed {
        failed,
        total: records.len(),
    })
}

fn dispatch(cli: &Cli) -> CliResult<()> {
    let config = RunConfig::resolve(cli.command.name(), &cli.flags)?;
    match cli.command {
        Command::Spectrum => emit(&config, &commands::spectrum(&config)?, Format::Csv),
        Command::Energy => emit(&config, &commands::energy(&config)?, Format::Csv),
        Command::Simulate => emit(&config, &commands::simulate(&config)?, Format::Json),
        Command::Ledger => emit(&config, &commands::ledger(&config)?, Format::Csv),
        Command::KkCheck => {
            let (report, pass) = commands::kk_check(&config)?;
            emit_checks(&config, &report, pass)
        }
        Command::Verify => {
            let (report, pass) = commands::verify(&config)?;
            emit_checks(&config, &report, pass)
        }
    }
}

/// Run one command; diagnostics go to standard error.
pub fn run(cli: Cli) -> ExitCode {
    match dispatch(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
