//! `ipsim simulate`: burn in independent replica chains, retain one
//! stationary configuration each, and emit the selected statistics over
//! `resamples` size-biased permutations per configuration.

use super::{build_pool, default_jobs, parse_kind, CommonOpts, COMMON_KEYS};
use crate::config::parse_list;
use crate::output::{cell, Format, Meta, Table};
use crate::CliError;
use clap::Args;
use ipsim_core::dynamics::{
    default_burn_in, replica_seed, Configuration, DynamicsKind, SimState,
};
use ipsim_core::stats::{
    empirical_moment, max_fraction, occupied_sites, phase_decomposition, r_k,
    size_biased_permutation,
};
use ipsim_core::ModelParams;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::path::PathBuf;

#[derive(Args, Debug, Clone)]
pub struct SimulateArgs {
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
    /// Worker pool size for the replica fan-out
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Statistics to emit (comma list of rk, max-fraction, occupied-sites, phase, moment)
    #[arg(long)]
    pub stats: Option<String>,
    /// Largest k for the remaining-mass statistic R_k
    #[arg(long = "k-max")]
    pub k_max: Option<usize>,
    /// Moment orders for the empirical occupation moments
    #[arg(long = "moment-orders")]
    pub moment_orders: Option<String>,
    /// Occupation threshold for the phase split (default: round(sqrt(N)))
    #[arg(long = "phase-threshold")]
    pub phase_threshold: Option<u32>,
    /// Also write the retained configurations to this path
    #[arg(long = "emit-configs")]
    pub emit_configs: Option<PathBuf>,
}

const KEYS: &[&str] = &[
    "kind",
    "replicas",
    "resamples",
    "burn-in-factor",
    "jobs",
    "stats",
    "k-max",
    "moment-orders",
    "phase-threshold",
    "emit-configs",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Statistic {
    Rk,
    MaxFraction,
    OccupiedSites,
    Phase,
    Moment,
}

fn parse_stats(raw: &Option<String>) -> Result<Vec<Statistic>, CliError> {
    let raw = raw
        .clone()
        .unwrap_or_else(|| "rk,max-fraction,occupied-sites,phase,moment".to_string());
    raw.split(',')
        .map(|s| match s.trim() {
            "rk" => Ok(Statistic::Rk),
            "max-fraction" => Ok(Statistic::MaxFraction),
            "occupied-sites" => Ok(Statistic::OccupiedSites),
            "phase" => Ok(Statistic::Phase),
            "moment" => Ok(Statistic::Moment),
            other => Err(CliError::Config(format!("unknown statistic '{other}'"))),
        })
        .collect()
}

pub fn run(mut args: SimulateArgs) -> Result<(), CliError> {
    let keys: Vec<&str> = COMMON_KEYS.iter().chain(KEYS.iter()).copied().collect();
    let file = args.common.load_config(&keys)?;
    args.common.merge(&file)?;
    file.fill(&mut args.kind, "kind")?;
    file.fill(&mut args.replicas, "replicas")?;
    file.fill(&mut args.resamples, "resamples")?;
    file.fill(&mut args.burn_in_factor, "burn-in-factor")?;
    file.fill(&mut args.jobs, "jobs")?;
    file.fill(&mut args.stats, "stats")?;
    file.fill(&mut args.k_max, "k-max")?;
    file.fill(&mut args.moment_orders, "moment-orders")?;
    file.fill(&mut args.phase_threshold, "phase-threshold")?;
    file.fill(&mut args.emit_configs, "emit-configs")?;

    let p = args.common.model()?;
    let kind = parse_kind(&args.kind)?;
    let seed = args.common.seed();
    let replicas = args.replicas.unwrap_or(100);
    let resamples = args.resamples.unwrap_or(5);
    let burn_in_factor = args.burn_in_factor.unwrap_or(10.0);
    if !(burn_in_factor >= 0.0) {
        return Err(CliError::Config("burn-in factor must be >= 0".into()));
    }
    let jobs = args.jobs.unwrap_or_else(default_jobs).max(1);
    let stats = parse_stats(&args.stats)?;
    let k_max = args.k_max.unwrap_or(8).min(p.sites as usize).max(1);
    let moment_orders: Vec<f64> = parse_list(
        args.moment_orders.as_deref().unwrap_or("0.5,2"),
        "moment order",
    )?;
    if moment_orders.iter().any(|&a| !(a > 0.0)) {
        return Err(CliError::Config("moment orders must be positive".into()));
    }
    let phase_threshold = args
        .phase_threshold
        .unwrap_or_else(|| (f64::from(p.particles)).sqrt().round() as u32);

    let mut meta = Meta::new("simulate");
    args.common.echo_model(&mut meta, &p);
    meta.push("kind", kind.label());
    meta.push("replicas", replicas);
    meta.push("resamples", resamples);
    meta.push("burn-in-factor", burn_in_factor);
    meta.push("jobs", jobs);
    meta.push("k-max", k_max);
    meta.push(
        "moment-orders",
        moment_orders
            .iter()
            .map(|a| a.to_string())
            .collect::<Vec<_>>()
            .join(","),
    );
    meta.push("phase-threshold", phase_threshold);
    meta.push("burn-in-time", default_burn_in(kind, &p, burn_in_factor));

    let burn_in = default_burn_in(kind, &p, burn_in_factor);
    let pool = build_pool(jobs)?;
    let per_replica: Vec<(Configuration, Vec<Vec<String>>)> = pool.install(|| {
        (0..replicas)
            .into_par_iter()
            .map(|rep| {
                replica_rows(
                    &p,
                    kind,
                    seed,
                    rep,
                    burn_in,
                    resamples,
                    &stats,
                    k_max,
                    &moment_orders,
                    phase_threshold,
                )
            })
            .collect()
    });

    let mut table = Table::new(vec!["replica", "resample", "statistic", "arg", "value"]);
    for (_, rows) in &per_replica {
        for row in rows {
            table.push_row(row.clone());
        }
    }
    args.common.target()?.write(&meta, &table)?;

    if let Some(path) = &args.emit_configs {
        let configs: Vec<&Configuration> = per_replica.iter().map(|(c, _)| c).collect();
        write_configs(path, args.common.format()?, &p, kind, seed, &configs)?;
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn replica_rows(
    p: &ModelParams,
    kind: DynamicsKind,
    master_seed: u64,
    replica: u32,
    burn_in: f64,
    resamples: u32,
    stats: &[Statistic],
    k_max: usize,
    moment_orders: &[f64],
    phase_threshold: u32,
) -> (Configuration, Vec<Vec<String>>) {
    let stream_seed = replica_seed(master_seed, u64::from(replica));
    let mut state = SimState::init_uniform(p, kind, stream_seed);
    state.advance(burn_in);
    let config = state.config().clone();
    let mut rows = Vec::new();

    // per-configuration statistics
    for stat in stats {
        match stat {
            Statistic::MaxFraction if config.total() > 0 => rows.push(vec![
                cell(replica),
                String::new(),
                "max_fraction".into(),
                String::new(),
                cell(max_fraction(&config)),
            ]),
            Statistic::OccupiedSites => rows.push(vec![
                cell(replica),
                String::new(),
                "occupied_sites".into(),
                String::new(),
                cell(occupied_sites(&config)),
            ]),
            Statistic::Phase if config.total() > 0 => {
                let phase = phase_decomposition(&config, phase_threshold);
                for (name, value) in [
                    ("phase_bulk_mass", phase.bulk_mass_fraction),
                    ("phase_condensed_mass", phase.condensed_mass_fraction),
                    ("phase_condensed_volume", phase.condensed_volume_fraction),
                ] {
                    rows.push(vec![
                        cell(replica),
                        String::new(),
                        name.into(),
                        cell(phase_threshold),
                        cell(value),
                    ]);
                }
            }
            Statistic::Moment => {
                for &a in moment_orders {
                    rows.push(vec![
                        cell(replica),
                        String::new(),
                        "moment".into(),
                        cell(a),
                        cell(empirical_moment(std::slice::from_ref(&config), a)),
                    ]);
                }
            }
            _ => {}
        }
    }

    // resampled statistics
    if stats.contains(&Statistic::Rk) && config.total() > 0 {
        let mut rng = ChaCha8Rng::seed_from_u64(replica_seed(stream_seed, 0x5b));
        for resample in 0..resamples {
            let sample = size_biased_permutation(&config, &mut rng).expect("occupied system");
            for k in 1..=k_max {
                rows.push(vec![
                    cell(replica),
                    cell(resample),
                    "r_k".into(),
                    cell(k),
                    cell(r_k(&sample, k)),
                ]);
            }
        }
    }
    (config, rows)
}

fn write_configs(
    path: &std::path::Path,
    format: Format,
    p: &ModelParams,
    kind: DynamicsKind,
    seed: u64,
    configs: &[&Configuration],
) -> Result<(), CliError> {
    let rendered = match format {
        Format::Csv => {
            let mut out = String::new();
            for (rep, config) in configs.iter().enumerate() {
                let stream_seed = replica_seed(seed, rep as u64);
                out.push_str(&config.csv_row(p, kind, stream_seed));
                out.push('\n');
            }
            out
        }
        Format::Json => {
            let records: Vec<_> = configs
                .iter()
                .enumerate()
                .map(|(rep, config)| config.record(p, kind, replica_seed(seed, rep as u64)))
                .collect();
            let mut text = serde_json::to_string_pretty(&records)
                .map_err(|e| CliError::Resource(e.to_string()))?;
            text.push('\n');
            text
        }
    };
    crate::output::write_file(path, &rendered)
}
