//! `resolvent`: bounds, checks, audits and numeric plane finding.
//!
//! Exit status is 0 when every check passes, 1 when a check fails or a
//! numeric search gives up, and 2 on usage or domain errors.

mod args;
mod commands;
mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use resolvent::bounds::BoundsError;
use resolvent::planes::PlanesError;
use resolvent::tschirnhaus::TschirnhausError;

use crate::args::Cli;
use crate::output::RunManifest;

#[derive(Debug)]
pub enum CliError {
    /// Bad arguments or parameters outside a function's domain.
    Usage(String),
    /// A computation ran but could not produce an answer.
    Failed(String),
}

impl From<BoundsError> for CliError {
    fn from(e: BoundsError) -> Self {
        match e {
            BoundsError::Precision(_) => CliError::Failed(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<PlanesError> for CliError {
    fn from(e: PlanesError) -> Self {
        fn usage(e: &PlanesError) -> bool {
            match e {
                PlanesError::Precondition(_)
                | PlanesError::Guard(_)
                | PlanesError::Dimension { .. }
                | PlanesError::TooManyNonlinear { .. }
                | PlanesError::DegreeCap { .. }
                | PlanesError::Tschirnhaus(TschirnhausError::Guard { .. } | TschirnhausError::DegreeTooSmall(_)) => {
                    true
                }
                PlanesError::Stage { source, .. } => usage(source),
                _ => false,
            }
        }
        if usage(&e) {
            CliError::Usage(e.to_string())
        } else {
            CliError::Failed(e.to_string())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let manifest = RunManifest::new(cli.seed, cli.precision);
    match commands::run(&cli) {
        Ok(outcome) => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            if let Err(e) = outcome
                .write(cli.format, &manifest, &mut lock)
                .and_then(|_| lock.flush())
            {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
            if outcome.ok() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Failed(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
