mod entropy;
mod exact;
mod gemtest;
mod ldp;
mod simulate;
mod tails;

use crate::config::ConfigFile;
use crate::output::{Format, Meta, OutputTarget};
use crate::CliError;
use clap::{Args, Parser, Subcommand};
use ipsim_core::dynamics::DynamicsKind;
use ipsim_core::ModelParams;
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(
    name = "ipsim",
    version,
    about = "Inclusion-process condensation experiments"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Sample stationary configurations and emit condensation statistics
    Simulate(simulate::SimulateArgs),
    /// Exact canonical / size-biased marginals and table diagnostics
    Exact(exact::ExactArgs),
    /// Rate-function curves: closed form vs exact finite-size estimate
    Ldp(ldp::LdpArgs),
    /// Stick-breaking sampler self-test against its geometric moments
    Gemtest(gemtest::GemtestArgs),
    /// Size-biased tail data against exponential / grand-canonical laws
    Tails(tails::TailsArgs),
    /// Relative-entropy rate series over system sizes
    Entropy(entropy::EntropyArgs),
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Simulate(args) => simulate::run(args),
        Command::Exact(args) => exact::run(args),
        Command::Ldp(args) => ldp::run(args),
        Command::Gemtest(args) => gemtest::run(args),
        Command::Tails(args) => tails::run(args),
        Command::Entropy(args) => entropy::run(args),
    }
}

/// Flags shared by every command that touches a concrete system.
#[derive(Args, Debug, Clone, Default)]
pub struct CommonOpts {
    /// Number of lattice sites
    #[arg(long = "L")]
    pub l: Option<u32>,
    /// Number of particles
    #[arg(long = "N")]
    pub n: Option<u32>,
    /// Diffusion parameter d
    #[arg(long, conflicts_with = "dl")]
    pub d: Option<f64>,
    /// d * L; sets d = dl / L
    #[arg(long)]
    pub dl: Option<f64>,
    /// Master seed for all random streams
    #[arg(long)]
    pub seed: Option<u64>,
    /// Output path (stdout when omitted)
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Output format: csv or json
    #[arg(long)]
    pub format: Option<String>,
    /// Key-value config file; explicit flags win on conflict
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Memory budget for partition tables, in MiB
    #[arg(long = "memory-budget-mb")]
    pub memory_budget_mb: Option<u64>,
}

pub const COMMON_KEYS: &[&str] = &[
    "L",
    "N",
    "d",
    "dl",
    "seed",
    "out",
    "format",
    "memory-budget-mb",
];

impl CommonOpts {
    pub fn load_config(&self, known_keys: &[&str]) -> Result<ConfigFile, CliError> {
        match &self.config {
            Some(path) => ConfigFile::load(path, known_keys),
            None => Ok(ConfigFile::default()),
        }
    }

    pub fn merge(&mut self, file: &ConfigFile) -> Result<(), CliError> {
        file.fill(&mut self.l, "L")?;
        file.fill(&mut self.n, "N")?;
        file.fill(&mut self.d, "d")?;
        file.fill(&mut self.dl, "dl")?;
        file.fill(&mut self.seed, "seed")?;
        file.fill(&mut self.out, "out")?;
        file.fill(&mut self.format, "format")?;
        file.fill(&mut self.memory_budget_mb, "memory-budget-mb")?;
        Ok(())
    }

    pub fn model(&self) -> Result<ModelParams, CliError> {
        let l = self
            .l
            .ok_or_else(|| CliError::Config("missing lattice size --L".into()))?;
        let n = self
            .n
            .ok_or_else(|| CliError::Config("missing particle number --N".into()))?;
        let d = match (self.d, self.dl) {
            (Some(d), None) => d,
            (None, Some(dl)) => dl / f64::from(l),
            (None, None) => {
                return Err(CliError::Config(
                    "missing diffusion parameter: give --d or --dl".into(),
                ))
            }
            (Some(_), Some(_)) => {
                return Err(CliError::Config("--d and --dl are mutually exclusive".into()))
            }
        };
        ModelParams::new(l, n, d).map_err(CliError::from)
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(1)
    }

    pub fn format(&self) -> Result<Format, CliError> {
        match self.format.as_deref() {
            None | Some("csv") => Ok(Format::Csv),
            Some("json") => Ok(Format::Json),
            Some(other) => Err(CliError::Config(format!(
                "unknown format '{other}' (expected csv or json)"
            ))),
        }
    }

    pub fn budget_bytes(&self) -> u64 {
        self.memory_budget_mb.unwrap_or(2048) << 20
    }

    pub fn target(&self) -> Result<OutputTarget, CliError> {
        Ok(OutputTarget::new(self.out.clone(), self.format()?))
    }

    /// Echo the resolved model and bookkeeping values into the header.
    pub fn echo_model(&self, meta: &mut Meta, p: &ModelParams) {
        meta.push("L", p.sites);
        meta.push("N", p.particles);
        meta.push("d", p.diffusion);
        meta.push("dl", p.dl());
        meta.push("seed", self.seed());
        meta.push("memory-budget-mb", self.memory_budget_mb.unwrap_or(2048));
        meta.push(
            "format",
            if matches!(self.format(), Ok(Format::Json)) {
                "json"
            } else {
                "csv"
            },
        );
    }
}

pub fn parse_kind(raw: &Option<String>) -> Result<DynamicsKind, CliError> {
    match raw.as_deref() {
        None => Ok(DynamicsKind::Cg),
        Some(s) => s.parse::<DynamicsKind>().map_err(CliError::from),
    }
}

pub fn default_jobs() -> usize {
    std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
}

pub fn build_pool(jobs: usize) -> Result<rayon::ThreadPool, CliError> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| CliError::Resource(format!("cannot build worker pool: {e}")))
}
