//! `ipsim entropy`: the specific relative entropy between canonical and
//! grand-canonical ensembles across a series of system sizes, at the
//! fugacity matched to the density. Decay to zero is the equivalence of
//! ensembles.

use crate::commands::CommonOpts;
use crate::config::parse_list;
use crate::output::{cell, Meta, Table};
use crate::CliError;
use clap::Args;
use ipsim_core::grand_canonical::{fugacity_phi, relative_entropy_rate};
use ipsim_core::ModelParams;

#[derive(Args, Debug, Clone)]
pub struct EntropyArgs {
    #[command(flatten)]
    pub common: CommonOpts,
    /// Particle density rho = N / L
    #[arg(long)]
    pub rho: Option<f64>,
    /// Comma-separated system sizes, e.g. 64,128,256,512,1024
    #[arg(long = "l-list")]
    pub l_list: Option<String>,
}

const KEYS: &[&str] = &["d", "rho", "l-list", "seed", "out", "format"];

pub fn run(mut args: EntropyArgs) -> Result<(), CliError> {
    let file = args.common.load_config(KEYS)?;
    args.common.merge(&file)?;
    file.fill(&mut args.rho, "rho")?;
    file.fill(&mut args.l_list, "l-list")?;

    let d = args
        .common
        .d
        .ok_or_else(|| CliError::Config("missing diffusion parameter --d".into()))?;
    let rho = args
        .rho
        .ok_or_else(|| CliError::Config("missing density --rho".into()))?;
    if !(rho > 0.0) {
        return Err(CliError::Config(format!(
            "density must be positive, got {rho}"
        )));
    }
    let sizes: Vec<u32> = parse_list(
        args.l_list.as_deref().unwrap_or("64,128,256,512,1024"),
        "system size",
    )?;
    let phi = fugacity_phi(rho, d)?;

    let mut meta = Meta::new("entropy");
    meta.push("d", d);
    meta.push("rho", rho);
    meta.push("phi", phi);
    meta.push(
        "l-list",
        sizes
            .iter()
            .map(|l| l.to_string())
            .collect::<Vec<_>>()
            .join(","),
    );

    let mut table = Table::new(vec!["L", "N", "phi", "entropy_rate"]);
    for &l in &sizes {
        let n = (rho * f64::from(l)).round() as u32;
        let p = ModelParams::new(l, n, d)?;
        let rate = relative_entropy_rate(&p, phi)?;
        table.push_row(vec![cell(l), cell(n), cell(phi), cell(rate)]);
    }
    args.common.target()?.write(&meta, &table)
}
