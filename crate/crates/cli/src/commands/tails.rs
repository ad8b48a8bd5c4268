//! `ipsim tails`: empirical tail curves of the rescaled size-biased
//! occupations `d * eta~_i`, next to the exponential limit and the
//! size-biased grand-canonical reference.

use super::{build_pool, default_jobs, parse_kind, CommonOpts, COMMON_KEYS};
use crate::output::{cell, Meta, Table};
use crate::CliError;
use clap::Args;
use ipsim_core::dynamics::{default_burn_in, replica_seed, DynamicsKind, SimState};
use ipsim_core::stats::{size_biased_gc_pmf, size_biased_permutation};
use ipsim_core::ModelParams;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::collections::BTreeMap;

#[derive(Args, Debug, Clone)]
pub struct TailsArgs {
    #[command(flatten)]
    pub common: CommonOpts,
    /// Dynamics: cg, ta or zrp
    #[arg(long)]
    pub kind: Option<String>,
    /// Number of independent replica chains
    #[arg(long)]
    pub replicas: Option<u32>,
    /// Size-biased re-samples per retained configuration
    #[arg(long)]
    pub resamples: Option<u32>,
    /// Safety factor on the default equilibration time
    #[arg(long = "burn-in-factor")]
    pub burn_in_factor: Option<f64>,
    /// Worker pool size
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Largest size-biased index i to track
    #[arg(long = "i-max")]
    pub i_max: Option<usize>,
}

const KEYS: &[&str] = &[
    "kind",
    "replicas",
    "resamples",
    "burn-in-factor",
    "jobs",
    "i-max",
];

pub fn run(mut args: TailsArgs) -> Result<(), CliError> {
    let keys: Vec<&str> = COMMON_KEYS.iter().chain(KEYS.iter()).copied().collect();
    let file = args.common.load_config(&keys)?;
    args.common.merge(&file)?;
    file.fill(&mut args.kind, "kind")?;
    file.fill(&mut args.replicas, "replicas")?;
    file.fill(&mut args.resamples, "resamples")?;
    file.fill(&mut args.burn_in_factor, "burn-in-factor")?;
    file.fill(&mut args.jobs, "jobs")?;
    file.fill(&mut args.i_max, "i-max")?;

    let p = args.common.model()?;
    if p.particles == 0 {
        return Err(CliError::Config(
            "tail statistics need at least one particle".into(),
        ));
    }
    let kind = parse_kind(&args.kind)?;
    let seed = args.common.seed();
    let replicas = args.replicas.unwrap_or(100);
    let resamples = args.resamples.unwrap_or(5);
    let burn_in_factor = args.burn_in_factor.unwrap_or(10.0);
    let jobs = args.jobs.unwrap_or_else(default_jobs).max(1);
    let i_max = args.i_max.unwrap_or(3).clamp(1, p.sites as usize);

    let mut meta = Meta::new("tails");
    args.common.echo_model(&mut meta, &p);
    meta.push("kind", kind.label());
    meta.push("replicas", replicas);
    meta.push("resamples", resamples);
    meta.push("burn-in-factor", burn_in_factor);
    meta.push("jobs", jobs);
    meta.push("i-max", i_max);
    meta.push("burn-in-time", default_burn_in(kind, &p, burn_in_factor));

    let burn_in = default_burn_in(kind, &p, burn_in_factor);
    let pool = build_pool(jobs)?;
    let samples: Vec<Vec<Vec<u32>>> = pool.install(|| {
        (0..replicas)
            .into_par_iter()
            .map(|rep| replica_samples(&p, kind, seed, rep, burn_in, resamples, i_max))
            .collect()
    });

    // empirical tails over the occupation lattice, one series per index i
    let d = p.diffusion;
    let rho = p.rho();
    let mut table = Table::new(vec!["series", "u", "value"]);
    for i in 0..i_max {
        let mut counts: BTreeMap<u32, u64> = BTreeMap::new();
        let mut total = 0u64;
        for replica in &samples {
            for resample in replica {
                *counts.entry(resample[i]).or_default() += 1;
                total += 1;
            }
        }
        let mut above = total;
        let series = format!("empirical_i{}", i + 1);
        for (&occ, &count) in &counts {
            above -= count;
            table.push_row(vec![
                series.clone(),
                cell(d * f64::from(occ)),
                cell(above as f64 / total as f64),
            ]);
        }
    }

    // references on the same lattice: the exponential limit and the
    // size-biased grand-canonical law
    let mut gc_tail = 1.0;
    for occ in 1..=p.particles {
        let u = d * f64::from(occ);
        table.push_row(vec![
            "exp".into(),
            cell(u),
            cell((-u / rho).exp()),
        ]);
        gc_tail -= size_biased_gc_pmf(u64::from(occ), rho, d)?;
        table.push_row(vec!["gc".into(), cell(u), cell(gc_tail.max(0.0))]);
        if gc_tail < 1e-4 && (-u / rho).exp() < 1e-4 {
            break;
        }
    }

    args.common.target()?.write(&meta, &table)
}

fn replica_samples(
    p: &ModelParams,
    kind: DynamicsKind,
    master_seed: u64,
    replica: u32,
    burn_in: f64,
    resamples: u32,
    i_max: usize,
) -> Vec<Vec<u32>> {
    let stream_seed = replica_seed(master_seed, u64::from(replica));
    let mut state = SimState::init_uniform(p, kind, stream_seed);
    state.advance(burn_in);
    let mut rng = ChaCha8Rng::seed_from_u64(replica_seed(stream_seed, 0x5b));
    (0..resamples)
        .map(|_| {
            let sample = size_biased_permutation(state.config(), &mut rng).expect("N >= 1");
            sample.values()[..i_max].to_vec()
        })
        .collect()
}
