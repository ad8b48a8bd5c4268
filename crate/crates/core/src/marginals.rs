//! Canonical and size-biased marginals, computed exactly from partition
//! tables.
//!
//! The single-site canonical marginal is `w(n) Z_{L-1,N-n} / Z_{L,N}`;
//! picking a site proportionally to its occupation re-weights it by
//! `(L/N) n`. The k-site size-biased joint generalizes this with falling
//! factorial prefactors and one deeper table row per coordinate.

use crate::params::ModelParams;
use crate::partition::PartitionTable;
use crate::weights::log_weight;
use crate::{Error, Result};

fn check_table(p: &ModelParams, table: &PartitionTable, depth: u32) -> Result<()> {
    let ok = table.d() == p.diffusion
        && table.max_l() >= p.sites
        && table.max_n() >= p.particles
        && table.truncation().is_none()
        && depth <= p.sites;
    if ok {
        Ok(())
    } else {
        Err(Error::TableMismatch {
            table_d: table.d(),
            max_l: table.max_l(),
            max_n: table.max_n(),
            request: format!(
                "L={}, N={}, d={}, depth={depth} (untruncated)",
                p.sites, p.particles, p.diffusion
            ),
        })
    }
}

/// `pi_{L,N}[eta_x = n] = w(n) Z_{L-1,N-n} / Z_{L,N}`.
pub fn canonical_marginal_pmf(n: u32, p: &ModelParams, table: &PartitionTable) -> Result<f64> {
    check_table(p, table, 1)?;
    if n > p.particles {
        return Ok(0.0);
    }
    let log_p = log_weight(u64::from(n), p.diffusion)
        + table.log_z(p.sites - 1, i64::from(p.particles) - i64::from(n))
        - table.log_z(p.sites, i64::from(p.particles));
    Ok(if log_p == f64::NEG_INFINITY {
        0.0
    } else {
        log_p.exp()
    })
}

/// First size-biased marginal `(L/N) n w(n) Z_{L-1,N-n} / Z_{L,N}`.
pub fn size_biased_marginal_pmf(n: u32, p: &ModelParams, table: &PartitionTable) -> Result<f64> {
    if p.particles == 0 {
        return Err(Error::EmptySystem);
    }
    if n == 0 {
        return Ok(0.0);
    }
    let reweight = f64::from(p.sites) * f64::from(n) / f64::from(p.particles);
    Ok(reweight * canonical_marginal_pmf(n, p, table)?)
}

/// k-site size-biased joint
/// `pi_{L,N}[eta~_1 = n_1, ..., eta~_k = n_k]` for occupations `n_i >= 1`.
///
/// Tuples that cannot be completed (mass exhausted early, or total above
/// `N`) have probability zero.
pub fn size_biased_joint_pmf(ns: &[u32], p: &ModelParams, table: &PartitionTable) -> Result<f64> {
    if p.particles == 0 {
        return Err(Error::EmptySystem);
    }
    let k = ns.len() as u32;
    if k == 0 {
        return Ok(1.0);
    }
    if k > p.sites {
        return Err(Error::InvalidParams(format!(
            "joint over {k} coordinates on {} sites",
            p.sites
        )));
    }
    check_table(p, table, k)?;
    if ns.iter().any(|&n| n == 0) {
        return Err(Error::InvalidParams(
            "size-biased joint is defined for occupations >= 1".into(),
        ));
    }

    let mut log_p = 0.0f64;
    let mut remaining = i64::from(p.particles);
    for (i, &n) in ns.iter().enumerate() {
        if remaining <= 0 {
            return Ok(0.0); // mass exhausted before coordinate i
        }
        log_p += (f64::from(p.sites) - i as f64).ln() - (remaining as f64).ln();
        log_p += f64::from(n).ln() + log_weight(u64::from(n), p.diffusion);
        remaining -= i64::from(n);
    }
    if remaining < 0 {
        return Ok(0.0);
    }
    log_p += table.log_z(p.sites - k, remaining) - table.log_z(p.sites, i64::from(p.particles));
    Ok(if log_p == f64::NEG_INFINITY {
        0.0
    } else {
        log_p.exp()
    })
}

/// `P[max occupation <= m] = Z^(m)_{L,N} / Z_{L,N}` from a truncated and
/// an untruncated table over the same `(d, L, N)`.
pub fn max_occupation_cdf(
    p: &ModelParams,
    truncated: &PartitionTable,
    plain: &PartitionTable,
) -> Result<f64> {
    let m = truncated.truncation().ok_or_else(|| Error::TableMismatch {
        table_d: truncated.d(),
        max_l: truncated.max_l(),
        max_n: truncated.max_n(),
        request: "a truncated table".into(),
    })?;
    check_table(p, plain, 1)?;
    if u64::from(m) * u64::from(p.sites) < u64::from(p.particles) {
        return Ok(0.0);
    }
    let log_ratio = truncated.log_z(p.sites, i64::from(p.particles))
        - plain.log_z(p.sites, i64::from(p.particles));
    Ok(log_ratio.exp().min(1.0))
}

/// Exact distribution of the mass remaining after each of the first
/// `k_max` size-biased picks, as mixtures over the remaining total.
///
/// Returns `out[k][r] = P[N - (eta~_1 + ... + eta~_k) = r]` for
/// `k = 1..=k_max`. Size-biased sampling is Markov in the remaining
/// `(sites, mass)` sub-system, which is what this forward pass uses.
pub fn remaining_mass_distributions(
    p: &ModelParams,
    table: &PartitionTable,
    k_max: u32,
) -> Result<Vec<Vec<f64>>> {
    if p.particles == 0 {
        return Err(Error::EmptySystem);
    }
    if k_max >= p.sites {
        return Err(Error::InvalidParams(format!(
            "needs k_max < L, got k_max={k_max}, L={}",
            p.sites
        )));
    }
    check_table(p, table, k_max)?;
    let n = p.particles as usize;
    let mut current = vec![0.0f64; n + 1];
    current[n] = 1.0;
    let mut out = Vec::with_capacity(k_max as usize);
    for step in 0..k_max {
        let sites_left = p.sites - step; // sub-system size before this pick
        let mut next = vec![0.0f64; n + 1];
        for (r, &pr) in current.iter().enumerate() {
            if pr == 0.0 {
                continue;
            }
            if r == 0 {
                next[0] += pr; // only empty sites remain
                continue;
            }
            let log_denom = table.log_z(sites_left, r as i64);
            let scale = f64::from(sites_left) / r as f64;
            for pick in 1..=r {
                let log_q = log_weight(pick as u64, p.diffusion)
                    + table.log_z(sites_left - 1, (r - pick) as i64)
                    - log_denom;
                if log_q > f64::NEG_INFINITY {
                    next[r - pick] += pr * scale * pick as f64 * log_q.exp();
                }
            }
        }
        out.push(next.clone());
        current = next;
    }
    Ok(out)
}

/// Exact `E[R_k]`, the expected mass fraction left after the first `k`
/// size-biased picks, for `k = 1..=k_max`.
pub fn expected_remaining_mass(
    p: &ModelParams,
    table: &PartitionTable,
    k_max: u32,
) -> Result<Vec<f64>> {
    let dists = remaining_mass_distributions(p, table, k_max)?;
    let n = f64::from(p.particles);
    Ok(dists
        .iter()
        .map(|dist| {
            dist.iter()
                .enumerate()
                .map(|(r, &pr)| pr * r as f64)
                .sum::<f64>()
                / n
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup(l: u32, n: u32, d: f64) -> (ModelParams, PartitionTable) {
        let p = ModelParams::new(l, n, d).unwrap();
        let table = PartitionTable::build(d, l, n, None).unwrap();
        (p, table)
    }

    #[test]
    fn two_site_uniform_case() {
        let (p, table) = setup(2, 2, 1.0);
        for n in 0..=2 {
            let v = canonical_marginal_pmf(n, &p, &table).unwrap();
            assert!((v - 1.0 / 3.0).abs() < 1e-12, "n={n}: {v}");
        }
        assert_eq!(canonical_marginal_pmf(3, &p, &table).unwrap(), 0.0);
        // Size bias tilts towards the heavy site.
        assert_eq!(size_biased_marginal_pmf(0, &p, &table).unwrap(), 0.0);
        let sb1 = size_biased_marginal_pmf(1, &p, &table).unwrap();
        let sb2 = size_biased_marginal_pmf(2, &p, &table).unwrap();
        assert!((sb1 - 1.0 / 3.0).abs() < 1e-12);
        assert!((sb2 - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn single_site_is_degenerate() {
        let (p, table) = setup(1, 5, 0.4);
        for n in 0..=5 {
            let want = if n == 5 { 1.0 } else { 0.0 };
            assert!((canonical_marginal_pmf(n, &p, &table).unwrap() - want).abs() < 1e-12);
            assert!((size_biased_marginal_pmf(n, &p, &table).unwrap() - want).abs() < 1e-12);
        }
    }

    #[test]
    fn marginal_normalization_and_mean() {
        for &(l, n, d) in &[(5u32, 9u32, 0.3), (8, 12, 1.0), (6, 6, 2.5)] {
            let (p, table) = setup(l, n, d);
            let mut total = 0.0;
            let mut mean = 0.0;
            let mut sb_total = 0.0;
            for k in 0..=n {
                let c = canonical_marginal_pmf(k, &p, &table).unwrap();
                total += c;
                mean += f64::from(k) * c;
                sb_total += size_biased_marginal_pmf(k, &p, &table).unwrap();
                // exact re-weighting relation
                let sb = size_biased_marginal_pmf(k, &p, &table).unwrap();
                let want = f64::from(l) * f64::from(k) / f64::from(n) * c;
                assert!((sb - want).abs() <= 1e-15 * want.max(1.0));
            }
            assert!((total - 1.0).abs() < 1e-10);
            assert!((mean - p.rho()).abs() < 1e-9);
            assert!((sb_total - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn joint_small_case_and_reduction() {
        let (p, table) = setup(2, 2, 1.0);
        // (1,1) is the only two-coordinate outcome with both entries 1.
        let v = size_biased_joint_pmf(&[1, 1], &p, &table).unwrap();
        assert!((v - 1.0 / 3.0).abs() < 1e-12);
        // k = 1 joint reduces to the single marginal.
        for n in 1..=2 {
            let a = size_biased_joint_pmf(&[n], &p, &table).unwrap();
            let b = size_biased_marginal_pmf(n, &p, &table).unwrap();
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn joint_full_depth_sums_to_one() {
        let (p, table) = setup(3, 3, 0.5);
        // Sum the joint over every ordered occupied prefix, padding with
        // the event that the remaining mass is zero.
        let mut total = 0.0;
        for n1 in 1..=3u32 {
            for n2 in 0..=(3 - n1) {
                if n2 == 0 {
                    if n1 == 3 {
                        total += size_biased_joint_pmf(&[n1], &p, &table).unwrap();
                    }
                    continue;
                }
                let n3 = 3 - n1 - n2;
                if n3 == 0 {
                    total += size_biased_joint_pmf(&[n1, n2], &p, &table).unwrap();
                } else {
                    total += size_biased_joint_pmf(&[n1, n2, n3], &p, &table).unwrap();
                }
            }
        }
        assert!((total - 1.0).abs() < 1e-10, "total {total}");
    }

    #[test]
    fn joint_marginalization_consistency() {
        for &(l, n, d) in &[(5u32, 7u32, 0.4), (8, 12, 1.3), (4, 6, 0.9)] {
            let (p, table) = setup(l, n, d);
            for k in 2..=4u32 {
                if k > l {
                    continue;
                }
                // check a handful of prefixes
                for n1 in 1..=3u32 {
                    for n2 in 1..=2u32 {
                        let mut prefix = vec![n1, n2];
                        prefix.truncate(k as usize - 1);
                        let used: u32 = prefix.iter().sum();
                        if used >= n {
                            continue;
                        }
                        let base = size_biased_joint_pmf(&prefix, &p, &table).unwrap();
                        let mut summed = 0.0;
                        for last in 1..=(n - used) {
                            let mut full = prefix.clone();
                            full.push(last);
                            summed += size_biased_joint_pmf(&full, &p, &table).unwrap();
                        }
                        assert!(
                            (summed - base).abs() < 1e-10,
                            "L={l} N={n} d={d} prefix={prefix:?}: {summed} vs {base}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn max_cdf_monotone_and_saturating() {
        let p = ModelParams::new(5, 8, 0.6).unwrap();
        let plain = PartitionTable::build(0.6, 5, 8, None).unwrap();
        let mut prev = -1.0;
        for m in 1..=8u32 {
            let trunc = PartitionTable::build(0.6, 5, 8, Some(m)).unwrap();
            let cdf = max_occupation_cdf(&p, &trunc, &plain).unwrap();
            assert!(cdf >= prev - 1e-12, "m={m}");
            prev = cdf;
        }
        assert!((prev - 1.0).abs() < 1e-10);
    }

    #[test]
    fn expected_remaining_mass_small_case() {
        // L=2, N=2, d=1: first pick is 1 or 2 with probs 1/3, 2/3, so
        // E[R_1] = (1/3)(1/2) = 1/6; after two picks nothing remains.
        let (p, table) = setup(2, 2, 1.0);
        let er = expected_remaining_mass(&p, &table, 1).unwrap();
        assert!((er[0] - 1.0 / 6.0).abs() < 1e-12);
        let dists = remaining_mass_distributions(&p, &table, 1).unwrap();
        assert!((dists[0][0] - 2.0 / 3.0).abs() < 1e-12);
        assert!((dists[0][1] - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn empty_system_is_rejected() {
        let p = ModelParams::new(3, 0, 1.0).unwrap();
        let table = PartitionTable::build(1.0, 3, 0, None).unwrap();
        assert!(matches!(
            size_biased_marginal_pmf(1, &p, &table),
            Err(Error::EmptySystem)
        ));
    }
}
