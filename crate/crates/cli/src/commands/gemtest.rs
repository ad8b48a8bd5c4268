//! `ipsim gemtest`: sanity lane for the stick-breaking sampler. Draws GEM
//! partitions and compares the mean remaining mass after k parts against
//! its geometric expectation `(alpha/(1+alpha))^k`, with standard errors.

use crate::commands::CommonOpts;
use crate::output::{cell, Meta, Table};
use crate::CliError;
use clap::Args;
use ipsim_core::stats::sample_gem;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Args, Debug, Clone)]
pub struct GemtestArgs {
    #[command(flatten)]
    pub common: CommonOpts,
    /// Stick-breaking parameter alpha
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Largest prefix length k
    #[arg(long = "k-max")]
    pub k_max: Option<usize>,
    /// Number of GEM draws
    #[arg(long)]
    pub draws: Option<u64>,
}

const KEYS: &[&str] = &[
    "alpha", "k-max", "draws", "seed", "out", "format",
];

pub fn run(mut args: GemtestArgs) -> Result<(), CliError> {
    let file = args.common.load_config(KEYS)?;
    args.common.merge(&file)?;
    file.fill(&mut args.alpha, "alpha")?;
    file.fill(&mut args.k_max, "k-max")?;
    file.fill(&mut args.draws, "draws")?;

    let alpha = args.alpha.unwrap_or(1.0);
    if !(alpha > 0.0) {
        return Err(CliError::Config(format!(
            "alpha must be positive, got {alpha}"
        )));
    }
    let k_max = args.k_max.unwrap_or(8).max(1);
    let draws = args.draws.unwrap_or(100_000).max(2);
    let seed = args.common.seed();

    let mut meta = Meta::new("gemtest");
    meta.push("alpha", alpha);
    meta.push("k-max", k_max);
    meta.push("draws", draws);
    meta.push("seed", seed);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sums = vec![0.0f64; k_max];
    let mut squares = vec![0.0f64; k_max];
    for _ in 0..draws {
        let sample = sample_gem(alpha, k_max, &mut rng);
        let mut remaining = 1.0;
        for (k, part) in sample.parts().iter().enumerate() {
            remaining -= part;
            sums[k] += remaining;
            squares[k] += remaining * remaining;
        }
    }

    let mut table = Table::new(vec!["k", "mean_remaining", "se", "expected", "draws"]);
    let n = draws as f64;
    for k in 1..=k_max {
        let mean = sums[k - 1] / n;
        let var = (squares[k - 1] / n - mean * mean).max(0.0);
        let se = (var / n).sqrt();
        let expected = (alpha / (1.0 + alpha)).powi(k as i32);
        table.push_row(vec![
            cell(k),
            cell(mean),
            cell(se),
            cell(expected),
            cell(draws),
        ]);
    }
    args.common.target()?.write(&meta, &table)
}
