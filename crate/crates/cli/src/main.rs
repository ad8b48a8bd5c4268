//! `ipsim` — inclusion-process experiments from the command line.
//!
//! Subcommands: `simulate` (stationary sampling plus condensation
//! statistics), `exact` (marginals and partition-table diagnostics),
//! `ldp` (rate-function curves), `gemtest` (stick-breaking self-test),
//! `tails` (size-biased tail data) and `entropy` (equivalence-of-ensembles
//! series). Every emitted file starts with a metadata block echoing the
//! full effective configuration, so a run can be reproduced from its
//! output alone.
//!
//! Exit codes: 0 success, 2 configuration error, 3 resource error.

mod commands;
mod config;
mod output;

use clap::Parser;

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Resource(String),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Resource(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(msg) => write!(f, "configuration error: {msg}"),
            CliError::Resource(msg) => write!(f, "resource error: {msg}"),
        }
    }
}

impl From<ipsim_core::Error> for CliError {
    fn from(err: ipsim_core::Error) -> Self {
        match err {
            ipsim_core::Error::BudgetExceeded { .. } | ipsim_core::Error::Io(_) => {
                CliError::Resource(err.to_string())
            }
            other => CliError::Config(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        CliError::Resource(err.to_string())
    }
}

fn main() {
    let cli = commands::Cli::parse();
    if let Err(err) = commands::run(cli) {
        eprintln!("{err}");
        std::process::exit(err.exit_code());
    }
}
