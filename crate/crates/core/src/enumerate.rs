//! Brute-force references for small systems.
//!
//! Everything here works by enumerating the full state space
//! `E_{L,N} = { eta : sum eta_x = N }` and weighting configurations
//! directly with products of single-site weights. None of it touches the
//! partition-table code, so these functions serve as independent oracles
//! in tests.

use crate::weights::log_weight;

/// All occupation vectors of length `l` with total `n`, in lexicographic
/// order.
pub fn configurations(l: u32, n: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut scratch = vec![0u32; l as usize];
    fill(&mut out, &mut scratch, 0, n);
    out
}

fn fill(out: &mut Vec<Vec<u32>>, scratch: &mut Vec<u32>, idx: usize, left: u32) {
    if idx + 1 == scratch.len() {
        scratch[idx] = left;
        out.push(scratch.clone());
        return;
    }
    for v in 0..=left {
        scratch[idx] = v;
        fill(out, scratch, idx + 1, left - v);
    }
}

/// The canonical stationary law on `E_{L,N}`: configurations together
/// with their normalized probabilities `prod_x w(eta_x) / Z`.
pub fn stationary_law(l: u32, n: u32, d: f64) -> (Vec<Vec<u32>>, Vec<f64>) {
    let configs = configurations(l, n);
    let log_weights: Vec<f64> = configs
        .iter()
        .map(|c| c.iter().map(|&o| log_weight(u64::from(o), d)).sum())
        .collect();
    let max = log_weights.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mut probs: Vec<f64> = log_weights.iter().map(|&lw| (lw - max).exp()).collect();
    let total: f64 = probs.iter().sum();
    for p in &mut probs {
        *p /= total;
    }
    (configs, probs)
}

/// `P[eta_x = v]` under the law `(configs, probs)`, averaged over sites
/// (the law is exchangeable, so any site gives the same answer).
pub fn single_site_marginal(configs: &[Vec<u32>], probs: &[f64], n: u32) -> Vec<f64> {
    let mut out = vec![0.0; n as usize + 1];
    for (config, &p) in configs.iter().zip(probs) {
        let share = p / config.len() as f64;
        for &o in config {
            out[o as usize] += share;
        }
    }
    out
}

/// Law of the first size-biased pick: `P[eta~_1 = v] = E[ sum_x (eta_x/N) 1{eta_x = v} ]`.
pub fn first_size_biased_marginal(configs: &[Vec<u32>], probs: &[f64], n: u32) -> Vec<f64> {
    let mut out = vec![0.0; n as usize + 1];
    for (config, &p) in configs.iter().zip(probs) {
        for &o in config {
            if o > 0 {
                out[o as usize] += p * f64::from(o) / f64::from(n);
            }
        }
    }
    out
}

/// Law of the maximum occupation, `P[max eta = m]` for `m = 0..=n`.
pub fn max_occupation_law(configs: &[Vec<u32>], probs: &[f64], n: u32) -> Vec<f64> {
    let mut out = vec![0.0; n as usize + 1];
    for (config, &p) in configs.iter().zip(probs) {
        let m = *config.iter().max().unwrap() as usize;
        out[m] += p;
    }
    out
}
