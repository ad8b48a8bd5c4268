//! Stochastic simulators for the inclusion process and its zero-range
//! equivalent.
//!
//! Three dynamics share the same canonical stationary distributions:
//!
//! * [`DynamicsKind::Cg`] — rejection dynamics on the complete graph: pick
//!   a particle uniformly; with probability `dL/(dL+N)` relocate it to a
//!   uniform site (the current site included), otherwise move it to the
//!   site of a second uniformly chosen particle; each attempt advances
//!   process time by `1/(N(dL+N))`.
//! * [`DynamicsKind::TaRing`] — totally asymmetric dynamics on a ring,
//!   site `x` firing at rate `eta_x (d + eta_{x+1})`, simulated with an
//!   event-driven loop over a rate tree.
//! * [`DynamicsKind::ZrpRing`] — totally asymmetric zero-range dynamics
//!   with departure rate `u(n) = n / (d + n - 1)`, same event machinery.
//!
//! Trajectories are a pure function of `(seed, params, kind)` and the
//! sequence of `advance` calls.

mod cg;
mod rate_tree;
mod ring;

pub use rate_tree::SumTree;

use crate::params::ModelParams;
use crate::{Error, Result};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Occupation vector with its conserved total.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Configuration {
    occupations: Vec<u32>,
    total: u64,
}

impl Configuration {
    pub fn from_occupations(occupations: Vec<u32>) -> Self {
        let total = occupations.iter().map(|&o| u64::from(o)).sum();
        Self { occupations, total }
    }

    pub fn occupations(&self) -> &[u32] {
        &self.occupations
    }

    pub fn sites(&self) -> u32 {
        self.occupations.len() as u32
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    /// Mass conservation check: the cached total matches the vector.
    pub fn is_consistent(&self) -> bool {
        self.occupations.iter().map(|&o| u64::from(o)).sum::<u64>() == self.total
    }

    /// CSV row `L,N,d,kind,seed,eta_1,...,eta_L`.
    pub fn csv_row(&self, p: &ModelParams, kind: DynamicsKind, seed: u64) -> String {
        let mut row = format!(
            "{},{},{},{},{}",
            p.sites,
            p.particles,
            p.diffusion,
            kind.label(),
            seed
        );
        for o in &self.occupations {
            row.push(',');
            row.push_str(&o.to_string());
        }
        row
    }

    /// JSON-serializable record carrying the same fields as the CSV row.
    pub fn record(&self, p: &ModelParams, kind: DynamicsKind, seed: u64) -> ConfigurationRecord {
        ConfigurationRecord {
            sites: p.sites,
            particles: p.particles,
            diffusion: p.diffusion,
            kind: kind.label().to_string(),
            seed,
            occupations: self.occupations.clone(),
        }
    }
}

/// Flat record of a sampled configuration.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConfigurationRecord {
    pub sites: u32,
    pub particles: u32,
    pub diffusion: f64,
    pub kind: String,
    pub seed: u64,
    pub occupations: Vec<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DynamicsKind {
    Cg,
    TaRing,
    ZrpRing,
}

impl DynamicsKind {
    pub fn label(self) -> &'static str {
        match self {
            DynamicsKind::Cg => "cg",
            DynamicsKind::TaRing => "ta",
            DynamicsKind::ZrpRing => "zrp",
        }
    }
}

impl std::str::FromStr for DynamicsKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cg" => Ok(DynamicsKind::Cg),
            "ta" => Ok(DynamicsKind::TaRing),
            "zrp" => Ok(DynamicsKind::ZrpRing),
            other => Err(Error::InvalidParams(format!(
                "unknown dynamics kind '{other}' (expected cg, ta or zrp)"
            ))),
        }
    }
}

/// A running simulation: configuration, process time and the seeded
/// random stream driving it.
pub struct SimState {
    params: ModelParams,
    kind: DynamicsKind,
    config: Configuration,
    /// Site of each particle; maintained for CG dynamics only.
    positions: Vec<u32>,
    time: f64,
    seed: u64,
    rng: ChaCha8Rng,
}

impl SimState {
    /// Place every particle on an independently uniform site.
    pub fn init_uniform(params: &ModelParams, kind: DynamicsKind, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut occupations = vec![0u32; params.sites as usize];
        let mut positions = Vec::new();
        if kind == DynamicsKind::Cg {
            positions.reserve(params.particles as usize);
        }
        for _ in 0..params.particles {
            let site = rand::Rng::random_range(&mut rng, 0..params.sites);
            occupations[site as usize] += 1;
            if kind == DynamicsKind::Cg {
                positions.push(site);
            }
        }
        Self {
            params: *params,
            kind,
            config: Configuration {
                occupations,
                total: u64::from(params.particles),
            },
            positions,
            time: 0.0,
            seed,
            rng,
        }
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn kind(&self) -> DynamicsKind {
        self.kind
    }

    pub fn config(&self) -> &Configuration {
        &self.config
    }

    pub fn time(&self) -> f64 {
        self.time
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Run the dynamics until process time reaches `t_target`.
    pub fn advance(&mut self, t_target: f64) {
        if t_target <= self.time {
            return;
        }
        match self.kind {
            DynamicsKind::Cg => cg::run(self, t_target),
            DynamicsKind::TaRing => ring::run(self, t_target, ring::RateModel::Inclusion),
            DynamicsKind::ZrpRing => ring::run(self, t_target, ring::RateModel::ZeroRange),
        }
        debug_assert!(self.config.is_consistent(), "mass conservation violated");
    }

    /// Perform exactly one event (ring kinds) or one attempted move (CG)
    /// and return the process-time increment spent in the pre-step state.
    /// Intended for diagnostics on small systems — the ring variants
    /// rebuild their rate bookkeeping per call.
    pub fn step(&mut self) -> f64 {
        match self.kind {
            DynamicsKind::Cg => cg::step_one(self),
            DynamicsKind::TaRing => ring::step_one(self, ring::RateModel::Inclusion),
            DynamicsKind::ZrpRing => ring::step_one(self, ring::RateModel::ZeroRange),
        }
    }

    pub(crate) fn parts_mut(
        &mut self,
    ) -> (
        &ModelParams,
        &mut Configuration,
        &mut Vec<u32>,
        &mut f64,
        &mut ChaCha8Rng,
    ) {
        (
            &self.params,
            &mut self.config,
            &mut self.positions,
            &mut self.time,
            &mut self.rng,
        )
    }
}

/// Complete-graph dynamics until `t_target`; the state must be a CG state.
pub fn run_cg(state: &mut SimState, t_target: f64) -> Result<()> {
    expect_kind(state, DynamicsKind::Cg)?;
    state.advance(t_target);
    Ok(())
}

/// Totally asymmetric ring dynamics until `t_target`.
pub fn run_ta(state: &mut SimState, t_target: f64) -> Result<()> {
    expect_kind(state, DynamicsKind::TaRing)?;
    state.advance(t_target);
    Ok(())
}

/// Zero-range ring dynamics until `t_target`.
pub fn run_zrp(state: &mut SimState, t_target: f64) -> Result<()> {
    expect_kind(state, DynamicsKind::ZrpRing)?;
    state.advance(t_target);
    Ok(())
}

fn expect_kind(state: &SimState, kind: DynamicsKind) -> Result<()> {
    if state.kind == kind {
        Ok(())
    } else {
        Err(Error::InvalidParams(format!(
            "state runs {} dynamics, asked for {}",
            state.kind.label(),
            kind.label()
        )))
    }
}

/// Zero-range departure rate `u(n) = n / (d + n - 1)`. The denominator is
/// formed as `d + (n - 1)` so `u(1) = 1/d` comes out exact even for tiny `d`.
pub fn zero_range_rate(n: u32, d: f64) -> f64 {
    if n == 0 {
        0.0
    } else {
        f64::from(n) / (d + f64::from(n - 1))
    }
}

/// Default equilibration time: `factor * L / d` for the ring dynamics,
/// whose coarsening is transport limited, and `factor * L` for the
/// complete graph. The default safety factor is 10.
pub fn default_burn_in(kind: DynamicsKind, p: &ModelParams, factor: f64) -> f64 {
    let l = f64::from(p.sites);
    match kind {
        DynamicsKind::Cg => factor * l,
        DynamicsKind::TaRing | DynamicsKind::ZrpRing => factor * l / p.diffusion,
    }
}

/// Stream seed for replica `index`, derived from the master seed by a
/// SplitMix64 step: `splitmix64(master + (index + 1) * 0x9E3779B97F4A7C15)`.
pub fn replica_seed(master: u64, index: u64) -> u64 {
    splitmix64(master.wrapping_add((index + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15)))
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// One retained stationary sample.
#[derive(Debug, Clone)]
pub struct SampleRecord {
    pub config: Configuration,
    pub time: f64,
    pub seed: u64,
}

/// Burn in a fresh chain and retain `n_samples` configurations separated
/// by `spacing` (defaults to one burn-in time, the only decorrelation
/// scale the equilibration analysis provides).
pub fn sample_stationary(
    p: &ModelParams,
    kind: DynamicsKind,
    n_samples: usize,
    seed: u64,
    spacing: Option<f64>,
    burn_in_factor: f64,
) -> Vec<SampleRecord> {
    let burn = default_burn_in(kind, p, burn_in_factor);
    let spacing = spacing.unwrap_or(burn);
    let mut state = SimState::init_uniform(p, kind, seed);
    state.advance(burn);
    let mut out = Vec::with_capacity(n_samples);
    for i in 0..n_samples {
        if i > 0 {
            let next = state.time() + spacing;
            state.advance(next);
        }
        out.push(SampleRecord {
            config: state.config().clone(),
            time: state.time(),
            seed,
        });
    }
    out
}
