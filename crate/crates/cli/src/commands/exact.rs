//! `ipsim exact`: canonical and size-biased marginals, recursion-vs-closed-form
//! residuals, and a dump of the (optionally truncated) partition table.
//!
//! Sections share one tidy file: `marginal` rows carry the two pmfs in
//! `value`/`value2`, `residual` rows the worst log-scale deviation per
//! row length, `table` rows the entries of the requested table.

use super::{CommonOpts, COMMON_KEYS};
use crate::output::{cell, Meta, Table};
use crate::CliError;
use clap::Args;
use ipsim_core::marginals::{canonical_marginal_pmf, size_biased_marginal_pmf};
use ipsim_core::weights::log_z_closed_ln;
use ipsim_core::PartitionTable;

#[derive(Args, Debug, Clone)]
pub struct ExactArgs {
    #[command(flatten)]
    pub common: CommonOpts,
    /// Occupation cap M for a truncated table dump
    #[arg(long)]
    pub truncation: Option<u32>,
}

pub fn run(mut args: ExactArgs) -> Result<(), CliError> {
    let keys: Vec<&str> = COMMON_KEYS.iter().chain(["truncation"].iter()).copied().collect();
    let file = args.common.load_config(&keys)?;
    args.common.merge(&file)?;
    file.fill(&mut args.truncation, "truncation")?;

    let p = args.common.model()?;
    let budget = args.common.budget_bytes();

    let mut meta = Meta::new("exact");
    args.common.echo_model(&mut meta, &p);
    meta.push(
        "truncation",
        args.truncation.map(|m| m.to_string()).unwrap_or_default(),
    );

    let plain = PartitionTable::build_with_budget(p.diffusion, p.sites, p.particles, None, budget)?;
    let dump_table = match args.truncation {
        Some(m) => {
            PartitionTable::build_with_budget(p.diffusion, p.sites, p.particles, Some(m), budget)?
        }
        None => plain.clone(),
    };

    let mut table = Table::new(vec!["section", "i", "j", "value", "value2"]);

    // marginals (always from the untruncated table)
    if p.particles > 0 {
        for n in 0..=p.particles {
            table.push_row(vec![
                "marginal".into(),
                cell(n),
                String::new(),
                cell(canonical_marginal_pmf(n, &p, &plain)?),
                cell(size_biased_marginal_pmf(n, &p, &plain)?),
            ]);
        }
    }

    // recursion vs closed form, worst deviation per row
    for l in 1..=p.sites {
        let mut worst = 0.0f64;
        for n in 0..=p.particles {
            let got = plain.log_z(l, i64::from(n));
            let want = log_z_closed_ln(l, n, p.diffusion);
            let err = (got - want).abs() / want.abs().max(1.0);
            worst = worst.max(err);
        }
        table.push_row(vec![
            "residual".into(),
            cell(l),
            String::new(),
            cell(worst),
            String::new(),
        ]);
    }

    // table dump (truncated when requested)
    for l in 1..=p.sites {
        for (n, v) in dump_table.row(l).iter().enumerate() {
            table.push_row(vec![
                "table".into(),
                cell(l),
                cell(n),
                cell(v),
                String::new(),
            ]);
        }
    }

    args.common.target()?.write(&meta, &table)
}
