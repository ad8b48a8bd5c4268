//! Exact finite-size distribution of the maximum occupation number.
//!
//! `P[max <= M]` is the ratio of a truncated to the plain partition
//! function, so `P[max = M]` is a first difference of truncated
//! partition functions. Taking that difference numerically destroys the
//! deep tail (both CDF values round to 1 in double precision long before
//! the interesting rates appear), so the difference is evaluated in
//! product form instead: `Z^(M) - Z^(M-1)` counts exactly the
//! configurations whose maximum equals `M`, and those satisfy the same
//! halving recursion as the tables once each block carries the pair
//! (all sites below `M`, at least one site at `M`). Every term is
//! positive, so the result is exact down to the last representable
//! probability.

use crate::logspace::{log_add, LOG_ZERO};
use crate::params::ModelParams;
use crate::partition::PartitionTable;
use crate::weights::{log_weight, log_z_closed};
use crate::{Error, Result};
use rayon::prelude::*;
use std::collections::BTreeSet;

/// Exact law of the maximum occupation number for an `(L, N, d)` system.
#[derive(Debug, Clone)]
pub struct MaxDistribution {
    pub sites: u32,
    pub particles: u32,
    pub diffusion: f64,
    /// `log P[max = M]` for `M = 0..=N`; `-inf` where impossible.
    log_probs: Vec<f64>,
}

impl MaxDistribution {
    pub fn log_prob(&self, m: u32) -> f64 {
        self.log_probs[m as usize]
    }

    pub fn log_probs(&self) -> &[f64] {
        &self.log_probs
    }

    pub fn prob(&self, m: u32) -> f64 {
        let lp = self.log_probs[m as usize];
        if lp == LOG_ZERO {
            0.0
        } else {
            lp.exp()
        }
    }

    pub fn probs(&self) -> Vec<f64> {
        (0..self.log_probs.len() as u32).map(|m| self.prob(m)).collect()
    }
}

/// A log-domain row over a contiguous support `lo ..= lo + vals.len() - 1`
/// of segment totals. Keeping the offset explicit lets the convolutions
/// skip the structurally impossible totals instead of scanning `-inf`s.
#[derive(Clone, Default)]
struct Row {
    lo: usize,
    vals: Vec<f64>,
}

impl Row {
    fn empty() -> Self {
        Self::default()
    }

    fn is_empty(&self) -> bool {
        self.vals.is_empty()
    }

    fn hi(&self) -> usize {
        self.lo + self.vals.len() - 1
    }

    fn at(&self, n: usize) -> f64 {
        if self.is_empty() || n < self.lo || n > self.hi() {
            LOG_ZERO
        } else {
            self.vals[n - self.lo]
        }
    }
}

/// Log-domain convolution of supported rows, truncated at `max_total`.
fn convolve(a: &Row, b: &Row, max_total: usize) -> Row {
    const CUTOFF: f64 = -60.0;
    if a.is_empty() || b.is_empty() {
        return Row::empty();
    }
    let lo = a.lo + b.lo;
    if lo > max_total {
        return Row::empty();
    }
    let hi = (a.hi() + b.hi()).min(max_total);
    let mut vals = vec![LOG_ZERO; hi - lo + 1];
    for (slot, n) in vals.iter_mut().zip(lo..=hi) {
        let m_lo = a.lo.max(n.saturating_sub(b.hi()));
        let m_hi = a.hi().min(n - b.lo);
        if m_lo > m_hi {
            continue;
        }
        let mut max = LOG_ZERO;
        for m in m_lo..=m_hi {
            let t = a.vals[m - a.lo] + b.vals[n - m - b.lo];
            if t > max {
                max = t;
            }
        }
        if max == LOG_ZERO {
            continue;
        }
        let mut sum = 0.0;
        for m in m_lo..=m_hi {
            let t = a.vals[m - a.lo] + b.vals[n - m - b.lo] - max;
            if t > CUTOFF {
                sum += t.exp();
            }
        }
        *slot = max + sum.ln();
    }
    Row { lo, vals }
}

/// Single entry of the convolution at total `n`.
fn convolve_at(a: &Row, b: &Row, n: usize) -> f64 {
    if a.is_empty() || b.is_empty() || n < a.lo + b.lo || n > a.hi() + b.hi() {
        return LOG_ZERO;
    }
    let m_lo = a.lo.max(n.saturating_sub(b.hi()));
    let m_hi = a.hi().min(n - b.lo);
    let mut max = LOG_ZERO;
    for m in m_lo..=m_hi {
        let t = a.vals[m - a.lo] + b.vals[n - m - b.lo];
        if t > max {
            max = t;
        }
    }
    if max == LOG_ZERO {
        return LOG_ZERO;
    }
    let mut sum = 0.0;
    for m in m_lo..=m_hi {
        let t = a.vals[m - a.lo] + b.vals[n - m - b.lo] - max;
        if t > -60.0 {
            sum += t.exp();
        }
    }
    max + sum.ln()
}

fn merge(a: &Row, b: &Row) -> Row {
    if a.is_empty() {
        return b.clone();
    }
    if b.is_empty() {
        return a.clone();
    }
    let lo = a.lo.min(b.lo);
    let hi = a.hi().max(b.hi());
    let vals = (lo..=hi).map(|n| log_add(a.at(n), b.at(n))).collect();
    Row { lo, vals }
}

/// Block-level counts for segments of the lattice, everything in logs:
/// `below` sums weight products over fillings with every site `<= M-1`,
/// `hit` requires every site `<= M` and at least one `= M`, `merged` is
/// their union. A `below` or `merged` segment must eventually pair with a
/// segment carrying `M` or more mass, so their supports are truncated at
/// `N - M`; `hit` is truncated at `N`.
struct BlockState {
    below: Row,
    hit: Row,
    merged: Row,
}

fn caps(m: u32, n: u32) -> (usize, usize) {
    let spare = (n - m.min(n)) as usize; // largest useful total next to a hit
    (spare, n as usize)
}

fn base_block(m: u32, n: u32, d: f64) -> BlockState {
    let (spare_cap, _) = caps(m, n);
    let below = if m == 0 {
        Row::empty()
    } else {
        let hi = (m as usize - 1).min(spare_cap);
        Row {
            lo: 0,
            vals: (0..=hi).map(|k| log_weight(k as u64, d)).collect(),
        }
    };
    let hit = if m <= n {
        Row {
            lo: m as usize,
            vals: vec![log_weight(u64::from(m), d)],
        }
    } else {
        Row::empty()
    };
    let merged = merge_with_cap(&below, &hit, spare_cap);
    BlockState { below, hit, merged }
}

fn merge_with_cap(a: &Row, b: &Row, cap: usize) -> Row {
    let merged = merge(a, b);
    if merged.is_empty() || merged.hi() <= cap {
        return merged;
    }
    if merged.lo > cap {
        return Row::empty();
    }
    Row {
        lo: merged.lo,
        vals: merged.vals[..cap - merged.lo + 1].to_vec(),
    }
}

fn combine(a: &BlockState, b: &BlockState, m: u32, n: u32) -> BlockState {
    let (spare_cap, hit_cap) = caps(m, n);
    let below = convolve(&a.below, &b.below, spare_cap);
    let hit = merge(
        &convolve(&a.hit, &b.merged, hit_cap),
        &convolve(&a.below, &b.hit, hit_cap),
    );
    let merged = merge_with_cap(&below, &hit, spare_cap);
    BlockState { below, hit, merged }
}

/// The halving chain needed to assemble a segment of `l` sites.
fn needed_sizes(l: u32) -> BTreeSet<u32> {
    let mut sizes = BTreeSet::new();
    let mut stack = vec![l];
    while let Some(s) = stack.pop() {
        if sizes.insert(s) && s > 1 {
            stack.push(s / 2);
            stack.push(s - s / 2);
        }
    }
    sizes
}

/// `log (Z^(M)_{L,N} - Z^(M-1)_{L,N})`, the unnormalized weight of
/// configurations with maximum exactly `m`, evaluated without
/// subtraction.
fn log_weight_max_eq(p: &ModelParams, m: u32) -> f64 {
    let n = p.particles;
    if p.sites == 1 {
        return if m == n {
            log_weight(u64::from(m), p.diffusion)
        } else {
            LOG_ZERO
        };
    }
    let mut states: Vec<(u32, BlockState)> = Vec::new();
    let sizes = needed_sizes(p.sites);
    for &size in &sizes {
        if size == p.sites {
            // only the hit count at full mass is needed at the top
            let a = &states[states.binary_search_by_key(&(size / 2), |e| e.0).unwrap()].1;
            let b = &states[states
                .binary_search_by_key(&(size - size / 2), |e| e.0)
                .unwrap()]
            .1;
            return log_add(
                convolve_at(&a.hit, &b.merged, n as usize),
                convolve_at(&a.below, &b.hit, n as usize),
            );
        }
        let state = if size == 1 {
            base_block(m, n, p.diffusion)
        } else {
            let a = &states[states.binary_search_by_key(&(size / 2), |e| e.0).unwrap()].1;
            let b = &states[states
                .binary_search_by_key(&(size - size / 2), |e| e.0)
                .unwrap()]
            .1;
            combine(a, b, m, n)
        };
        states.push((size, state));
    }
    unreachable!("halving chain always ends at the full lattice size");
}

/// Exact `P[max = M]` for all `M = 0..=N`. The sweep over `M` shares
/// nothing mutable, so it fans out across the rayon pool.
pub fn exact_max_distribution(p: &ModelParams) -> Result<MaxDistribution> {
    let log_z = log_z_closed(p);
    let log_probs: Vec<f64> = (0..=p.particles)
        .into_par_iter()
        .map(|m| {
            let lw = log_weight_max_eq(p, m);
            if lw == LOG_ZERO {
                LOG_ZERO
            } else {
                lw - log_z
            }
        })
        .collect();
    Ok(MaxDistribution {
        sites: p.sites,
        particles: p.particles,
        diffusion: p.diffusion,
        log_probs,
    })
}

/// Sandwich bounds on `P[max = M]` from one truncated partition
/// function: `w(M) Z^(M)_{L-1,N-M} / Z_{L,N}` from below and `L` times
/// that from above.
pub fn sandwich_bounds(p: &ModelParams, m: u32) -> Result<(f64, f64)> {
    if m == 0 || m > p.particles {
        return Err(Error::MassOutOfRange {
            m: f64::from(m),
            condition: "1 <= M <= N",
        });
    }
    let rest = p.particles - m;
    let log_rest = if p.sites == 1 {
        if rest == 0 {
            0.0
        } else {
            LOG_ZERO
        }
    } else if rest == 0 {
        0.0
    } else if u64::from(m) * u64::from(p.sites - 1) < u64::from(rest) {
        LOG_ZERO
    } else {
        let table = PartitionTable::build(p.diffusion, p.sites - 1, rest, Some(m))?;
        table.log_z(p.sites - 1, i64::from(rest))
    };
    let log_lower = log_weight(u64::from(m), p.diffusion) + log_rest - log_z_closed(p);
    let lower = if log_lower == LOG_ZERO {
        0.0
    } else {
        log_lower.exp()
    };
    Ok((lower, lower * f64::from(p.sites)))
}

/// Speed normalizations for finite-size rate estimates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RateSpeed {
    /// speed `L` (fixed diffusion)
    SitesL,
    /// speed `dL` (intermediate scales)
    DiffusionDl,
    /// speed `log L` (complete condensation)
    LogL,
}

impl RateSpeed {
    pub fn value(self, p: &ModelParams) -> f64 {
        match self {
            RateSpeed::SitesL => f64::from(p.sites),
            RateSpeed::DiffusionDl => p.dl(),
            RateSpeed::LogL => f64::from(p.sites).ln(),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            RateSpeed::SitesL => "L",
            RateSpeed::DiffusionDl => "dL",
            RateSpeed::LogL => "logL",
        }
    }
}

/// One point of a finite-size rate-function estimate.
#[derive(Debug, Clone, Copy)]
pub struct RatePoint {
    /// Maximum occupation `M`.
    pub occupation: u32,
    /// `M / L`, the rate-function argument at speeds `L` and `dL`.
    pub m: f64,
    /// `M / N`, the argument used on the complete-condensation axis.
    pub mass_fraction: f64,
    /// `-(1/speed) log P[max = M]`; `None` where the probability is zero.
    pub rate: Option<f64>,
}

/// Finite-size rate-function estimate from the exact law of the maximum.
pub fn empirical_rate(p: &ModelParams, speed: RateSpeed) -> Result<Vec<RatePoint>> {
    let dist = exact_max_distribution(p)?;
    let speed_value = speed.value(p);
    Ok((0..=p.particles)
        .map(|occupation| {
            let lp = dist.log_prob(occupation);
            RatePoint {
                occupation,
                m: f64::from(occupation) / f64::from(p.sites),
                mass_fraction: if p.particles == 0 {
                    0.0
                } else {
                    f64::from(occupation) / f64::from(p.particles)
                },
                rate: if lp == LOG_ZERO {
                    None
                } else {
                    Some(-lp / speed_value)
                },
            }
        })
        .collect())
}
