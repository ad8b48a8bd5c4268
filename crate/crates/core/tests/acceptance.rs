//! Acceptance suite: one test per criterion, each printing a PASS line
//! with the measured numbers (visible under `--nocapture`).
//!
//! Oracles are built inside this file from first principles — state-space
//! enumeration, transition kernels written from the jump-rate formulas,
//! and closed forms — independent of the implementation paths they check.

use ipsim_core::dynamics::{replica_seed, DynamicsKind, SimState};
use ipsim_core::enumerate;
use ipsim_core::grand_canonical::{fugacity_phi, relative_entropy_rate};
use ipsim_core::ldp::{empirical_rate, rate_complete, rate_fluid, rate_intermediate, RateSpeed};
use ipsim_core::marginals::size_biased_marginal_pmf;
use ipsim_core::stats::{r_k, sample_gem, size_biased_permutation, EmpiricalDistribution};
use ipsim_core::weights::log_z_closed;
use ipsim_core::{ModelParams, PartitionTable};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::HashMap;
use std::time::Instant;

// ---------------------------------------------------------------------
// criterion 1: recursion vs closed form, L <= 64, N <= 256, four d values
// ---------------------------------------------------------------------

#[test]
fn criterion_01_partition_function_exactness() {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for &d in &[0.1, 0.5, 1.0, 2.0] {
        let table = PartitionTable::build(d, 64, 256, None).unwrap();
        for l in 1..=64u32 {
            for n in 0..=256u32 {
                let p = ModelParams::new(l, n, d).unwrap();
                let got = table.log_z(l, i64::from(n));
                let want = log_z_closed(&p);
                let err = (got - want).abs() / want.abs().max(1.0);
                worst = worst.max(err);
            }
        }
    }
    let elapsed = start.elapsed();
    assert!(worst <= 1e-9, "worst relative log error {worst}");
    assert!(
        elapsed.as_secs_f64() < 2.0,
        "exactness sweep took {elapsed:?}"
    );
    println!(
        "criterion 01 PASS: recursion vs closed form, worst rel. log error {worst:.3e} in {elapsed:?}"
    );
}

// ---------------------------------------------------------------------
// criterion 2: stationarity of all three dynamics on tiny systems
// ---------------------------------------------------------------------

/// Transition kernel of one attempted CG move, written from the printed
/// algorithm: pick particle i uniformly; relocate to a uniform site with
/// probability dL/(dL+N), else jump to the site of a uniform particle j.
fn cg_kernel(configs: &[Vec<u32>], index: &HashMap<Vec<u32>, usize>, d: f64) -> Vec<Vec<f64>> {
    let l = configs[0].len();
    let n: u32 = configs[0].iter().sum();
    let n_f = f64::from(n);
    let dl = d * l as f64;
    let mut kernel = vec![vec![0.0; configs.len()]; configs.len()];
    for (s, config) in configs.iter().enumerate() {
        let mut stay = 1.0;
        for x in 0..l {
            if config[x] == 0 {
                continue;
            }
            let pick_i = f64::from(config[x]) / n_f;
            for y in 0..l {
                if y == x {
                    continue;
                }
                let relocate = dl / (dl + n_f) / l as f64;
                let inclusion = n_f / (dl + n_f) * f64::from(config[y]) / n_f;
                let prob = pick_i * (relocate + inclusion);
                let mut next = config.clone();
                next[x] -= 1;
                next[y] += 1;
                kernel[s][index[&next]] += prob;
                stay -= prob;
            }
        }
        kernel[s][s] += stay;
    }
    kernel
}

/// Jump rates of the ring dynamics, from the generator: site x fires at
/// eta_x (d + eta_{x+1}) for the inclusion process and at
/// eta_x / (d + eta_x - 1) for the zero-range equivalent.
fn ring_generator(
    configs: &[Vec<u32>],
    index: &HashMap<Vec<u32>, usize>,
    d: f64,
    zero_range: bool,
) -> Vec<Vec<f64>> {
    let l = configs[0].len();
    let mut rates = vec![vec![0.0; configs.len()]; configs.len()];
    for (s, config) in configs.iter().enumerate() {
        for x in 0..l {
            if config[x] == 0 {
                continue;
            }
            let rate = if zero_range {
                f64::from(config[x]) / (d + f64::from(config[x]) - 1.0)
            } else {
                f64::from(config[x]) * (d + f64::from(config[(x + 1) % l]))
            };
            let mut next = config.clone();
            next[x] -= 1;
            next[(x + 1) % l] += 1;
            rates[s][index[&next]] += rate;
        }
    }
    rates
}

fn total_variation(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum::<f64>() / 2.0
}

#[test]
fn criterion_02_stationarity_oracle() {
    let start = Instant::now();
    let mut worst_residual = 0.0f64;
    let mut worst_tv = 0.0f64;
    for &(l, n) in &[(3u32, 3u32), (3, 4), (4, 3)] {
        for &d in &[0.3, 1.0] {
            let (configs, pi) = enumerate::stationary_law(l, n, d);
            let index: HashMap<Vec<u32>, usize> = configs
                .iter()
                .cloned()
                .enumerate()
                .map(|(i, c)| (c, i))
                .collect();

            // exact stationarity of the CG kernel: pi P = pi
            let kernel = cg_kernel(&configs, &index, d);
            for row in &kernel {
                let total: f64 = row.iter().sum();
                assert!((total - 1.0).abs() < 1e-12, "kernel row sum {total}");
            }
            for target in 0..configs.len() {
                let flow: f64 = (0..configs.len()).map(|s| pi[s] * kernel[s][target]).sum();
                let residual = (flow - pi[target]).abs();
                worst_residual = worst_residual.max(residual);
                assert!(residual <= 1e-10, "CG L={l} N={n} d={d}: {residual}");
            }

            // exact stationarity of the two generators: pi Q = 0
            for zero_range in [false, true] {
                let rates = ring_generator(&configs, &index, d, zero_range);
                for target in 0..configs.len() {
                    let inflow: f64 = (0..configs.len())
                        .map(|s| if s == target { 0.0 } else { pi[s] * rates[s][target] })
                        .sum();
                    let outflow: f64 = pi[target] * rates[target].iter().sum::<f64>()
                        - pi[target] * rates[target][target];
                    let residual = (inflow - outflow).abs();
                    worst_residual = worst_residual.max(residual);
                    assert!(
                        residual <= 1e-10,
                        "ring(zrp={zero_range}) L={l} N={n} d={d}: {residual}"
                    );
                }
            }

            // 1e7-event empirical histograms within TV 0.02
            let p = ModelParams::new(l, n, d).unwrap();
            for kind in [DynamicsKind::Cg, DynamicsKind::TaRing, DynamicsKind::ZrpRing] {
                let mut state = SimState::init_uniform(&p, kind, 0x5eed ^ u64::from(l * 64 + n));
                let events = 10_000_000u32;
                let mut weights = vec![0.0f64; configs.len()];
                match kind {
                    DynamicsKind::Cg => {
                        // visit counts of the discrete chain
                        for _ in 0..events {
                            state.step();
                            weights[index[state.config().occupations()]] += 1.0;
                        }
                    }
                    _ => {
                        // holding-time weights of the jump chain
                        for _ in 0..events {
                            let here = index[state.config().occupations()];
                            let holding = state.step();
                            weights[here] += holding;
                        }
                    }
                }
                let total: f64 = weights.iter().sum();
                for w in &mut weights {
                    *w /= total;
                }
                let tv = total_variation(&weights, &pi);
                worst_tv = worst_tv.max(tv);
                assert!(
                    tv <= 0.02,
                    "{} L={l} N={n} d={d}: TV {tv}",
                    kind.label()
                );
            }
        }
    }
    println!(
        "criterion 02 PASS: kernel/generator residual <= {worst_residual:.2e}, histogram TV <= {worst_tv:.4} in {:?}",
        start.elapsed()
    );
}

// ---------------------------------------------------------------------
// criterion 3: Fig. 2 at desk scale — mean R_k against (1/2)^k
// ---------------------------------------------------------------------

#[test]
fn criterion_03_fig2_remaining_mass() {
    let start = Instant::now();
    let p = ModelParams::new(512, 1024, 1.0 / 512.0).unwrap();
    let replicas = 100u64;
    let resamples = 5u32;
    // The CG attempt clock normalizes time by total jump activity, so the
    // chain equilibrates in O(1) time units here (measured against the
    // exact E[R_k] in the calibration diagnostics); 0.05 * L = 25.6 units
    // keeps a >20x margin at a fraction of the default-cost burn-in.
    let burn_in_factor = 0.05;
    let burn = burn_in_factor * 512.0;

    let k_max = 5usize;
    let mut replica_means = vec![Vec::with_capacity(replicas as usize); k_max];
    for rep in 0..replicas {
        let seed = replica_seed(20_260_809, rep);
        let mut state = SimState::init_uniform(&p, DynamicsKind::Cg, seed);
        state.advance(burn);
        let mut rng = ChaCha8Rng::seed_from_u64(replica_seed(seed, 0x5b));
        let mut acc = vec![0.0f64; k_max];
        for _ in 0..resamples {
            let sample = size_biased_permutation(state.config(), &mut rng).unwrap();
            for (k, slot) in acc.iter_mut().enumerate() {
                *slot += r_k(&sample, k + 1);
            }
        }
        for (k, slot) in acc.iter().enumerate() {
            replica_means[k].push(slot / f64::from(resamples));
        }
    }

    let mut report = String::new();
    for k in 1..=k_max {
        let values = &replica_means[k - 1];
        let mean: f64 = values.iter().sum::<f64>() / values.len() as f64;
        let var: f64 =
            values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (values.len() - 1) as f64;
        let se = (var / values.len() as f64).sqrt();
        let expected = 0.5f64.powi(k as i32);
        assert!(
            (mean - expected).abs() <= 3.0 * se,
            "k={k}: mean {mean:.5} vs {expected:.5}, se {se:.5}"
        );
        report.push_str(&format!("R{k}={mean:.4}({expected:.4};se {se:.4}) "));
    }
    println!(
        "criterion 03 PASS: {report}in {:?}",
        start.elapsed()
    );
}

// ---------------------------------------------------------------------
// criterion 4: Fig. 3 — exponential tails of d eta~_1, and the
// constant-d lane against the size-biased grand-canonical law
// ---------------------------------------------------------------------

fn sb_first_samples(p: &ModelParams, replicas: u64, resamples: u32, burn_factor: f64) -> Vec<u32> {
    let burn = burn_factor * f64::from(p.sites);
    let mut out = Vec::with_capacity((replicas * u64::from(resamples)) as usize);
    for rep in 0..replicas {
        let seed = replica_seed(20_260_809 ^ u64::from(p.particles), rep);
        let mut state = SimState::init_uniform(p, DynamicsKind::Cg, seed);
        state.advance(burn);
        let mut rng = ChaCha8Rng::seed_from_u64(replica_seed(seed, 0x5b));
        for _ in 0..resamples {
            let sample = size_biased_permutation(state.config(), &mut rng).unwrap();
            out.push(sample.values()[0]);
        }
    }
    out
}

fn exponential_lane(rho: f64, replicas: u64, burn_factor: f64) -> (f64, usize) {
    let l = 1024u32;
    let d = 1.0 / 32.0;
    let n = (rho * f64::from(l)) as u32;
    let p = ModelParams::new(l, n, d).unwrap();
    let samples = sb_first_samples(&p, replicas, 5, burn_factor);
    let count = samples.len();
    let emp = EmpiricalDistribution::new(samples.iter().map(|&v| d * f64::from(v)).collect());
    let ks = emp.ks_distance(|u| 1.0 - (-u / rho).exp()).unwrap();
    (ks, count)
}

#[test]
fn criterion_04_fig3_exponential_tails() {
    let start = Instant::now();
    // both lanes measured before any assertion so a failure cannot mask
    // the other lane's value
    let (ks1, n1) = exponential_lane(1.0, 600, 0.02);
    let (ks2, n2) = exponential_lane(2.0, 450, 0.01);

    // constant-d lane: d = 0.5 against the size-biased grand-canonical
    // law; both laws live on the same lattice, so the sup runs over all
    // occupation values.
    let p = ModelParams::new(1024, 1024, 0.5).unwrap();
    let samples = sb_first_samples(&p, 300, 5, 0.02);
    let total = samples.len() as f64;
    let mut counts = vec![0u32; p.particles as usize + 1];
    for &s in &samples {
        counts[s as usize] += 1;
    }
    let mut emp_cdf = 0.0;
    let mut gc_cdf = 0.0;
    let mut sup: f64 = 0.0;
    for occ in 1..=p.particles {
        emp_cdf += f64::from(counts[occ as usize]) / total;
        gc_cdf += ipsim_core::stats::size_biased_gc_pmf(u64::from(occ), 1.0, 0.5).unwrap();
        sup = sup.max((emp_cdf - gc_cdf).abs());
    }
    println!(
        "criterion 04 lanes: rho=1 KS {ks1:.4} (n={n1}), rho=2 KS {ks2:.4} (n={n2}), d=0.5 lane sup {sup:.4} in {:?}",
        start.elapsed()
    );
    assert!(ks1 <= 0.05, "rho=1: KS {ks1:.4} over {n1} samples");
    assert!(ks2 <= 0.05, "rho=2: KS {ks2:.4} over {n2} samples");
    assert!(sup <= 0.05, "constant-d lane: sup distance {sup:.4}");
    println!(
        "criterion 04 PASS (attainable lanes): rho=1 KS {ks1:.4}, rho=2 KS {ks2:.4}, d=0.5 sup {sup:.4}"
    );
}

/// The rho = 0.5 lane of criterion 4 as stated. It cannot pass: d eta~_1
/// lives on the lattice d N_+ with spacing d = 1/32, and below its first
/// point the exponential reference already carries mass
/// 1 - exp(-d/rho) = 0.0606 while every empirical CDF is identically
/// zero; the exact finite-size law gives an infinite-sample KS floor of
/// 0.0647. Kept faithful and red; see the analysis in the project notes.
#[test]
fn criterion_04_fig3_exponential_tail_rho_half_unattainable() {
    let start = Instant::now();
    let (ks, n) = exponential_lane(0.5, 300, 0.02);
    println!(
        "criterion 04 (rho=0.5): KS {ks:.4} over {n} samples in {:?} — exact floor 0.0647 exceeds the 0.05 tolerance",
        start.elapsed()
    );
    assert!(
        ks <= 0.05,
        "rho=0.5: KS {ks:.4} over {n} samples; infinite-sample floor is 0.0647 (> 0.05), see ledger"
    );
}

// ---------------------------------------------------------------------
// criterion 5: Fig. 4 left — intermediate-regime rate function
// ---------------------------------------------------------------------

#[test]
fn criterion_05_fig4_intermediate_rate() {
    let start = Instant::now();
    let p = ModelParams::new(1024, 1024, 1.0 / 32.0).unwrap();
    let points = empirical_rate(&p, RateSpeed::DiffusionDl).unwrap();
    let mut worst = 0.0f64;
    let mut checked = 0u32;
    for point in &points {
        if point.m < 0.2 || point.m > 0.8 {
            continue;
        }
        let estimate = point.rate.expect("positive probability in the window");
        let closed = rate_intermediate(1.0, point.m).unwrap();
        let err = (estimate - closed).abs();
        worst = worst.max(err);
        checked += 1;
        assert!(err <= 0.1, "m={}: |{estimate} - {closed}| = {err}", point.m);
    }
    let elapsed = start.elapsed();
    assert!(checked > 500, "window should cover ~614 masses, got {checked}");
    assert!(elapsed.as_secs_f64() < 60.0, "sweep took {elapsed:?}");
    println!(
        "criterion 05 PASS: {checked} masses in [0.2, 0.8], worst |estimate - log(rho/(rho-m))| = {worst:.4} in {elapsed:?}"
    );
}

// ---------------------------------------------------------------------
// criterion 6: Fig. 4 right — complete-condensation staircase
// ---------------------------------------------------------------------

#[test]
fn criterion_06_fig4_complete_staircase() {
    let start = Instant::now();
    let l = 512u32;
    let gamma = 2.0;
    let d = f64::from(l).powf(-gamma);
    let p = ModelParams::new(l, 512, d).unwrap();
    let points = empirical_rate(&p, RateSpeed::LogL).unwrap();
    let mut report = String::new();
    for x in [0.75f64, 0.4, 0.28] {
        let occupation = (x * f64::from(p.particles)).round() as usize;
        let point = &points[occupation];
        let estimate = point.rate.expect("positive probability at the midpoints");
        let closed = rate_complete(1.0, point.m, gamma).unwrap();
        let err = (estimate - closed).abs();
        assert!(
            err <= 0.3,
            "x={x}: estimate {estimate:.4} vs staircase {closed}"
        );
        report.push_str(&format!("x={x}: {estimate:.3} vs {closed} "));
    }
    println!("criterion 06 PASS: {report}in {:?}", start.elapsed());
}

// ---------------------------------------------------------------------
// criterion 7: complete condensation — P[max = N] toward 1
// ---------------------------------------------------------------------

#[test]
fn criterion_07_complete_condensation() {
    let start = Instant::now();
    let mut previous = 0.0;
    let mut report = String::new();
    for l in [64u32, 128, 256] {
        let d = f64::from(l).powi(-2);
        let p = ModelParams::new(l, 2 * l, d).unwrap();
        let dist = ipsim_core::ldp::exact_max_distribution(&p).unwrap();
        let p_full = dist.prob(p.particles);
        assert!(p_full > previous, "L={l}: {p_full} not increasing");
        previous = p_full;
        report.push_str(&format!("L={l}: {p_full:.4} "));
        if l == 256 {
            assert!(p_full >= 0.9, "L=256: P[max=N] = {p_full}");
        }
    }
    println!("criterion 07 PASS: {report}in {:?}", start.elapsed());
}

// ---------------------------------------------------------------------
// criterion 8: equivalence of ensembles via the entropy rate
// ---------------------------------------------------------------------

#[test]
fn criterion_08_entropy_rate_decay() {
    let d = 1.0;
    let phi = fugacity_phi(2.0, d).unwrap();
    let mut previous = f64::INFINITY;
    let mut last = f64::INFINITY;
    for l in [64u32, 128, 256, 512, 1024] {
        let p = ModelParams::new(l, 2 * l, d).unwrap();
        let h = relative_entropy_rate(&p, phi).unwrap();
        assert!(h < previous, "L={l}: {h} not strictly decreasing");
        previous = h;
        last = h;
    }
    assert!(last <= 1e-2, "L=1024: entropy rate {last}");
    println!("criterion 08 PASS: entropy rate strictly decreasing, {last:.5} at L=1024");
}

// ---------------------------------------------------------------------
// criterion 9: GEM machinery — E[prod (1-U_i)] = (alpha/(1+alpha))^k
// ---------------------------------------------------------------------

#[test]
fn criterion_09_gem_geometric_moments() {
    let draws = 100_000u32;
    let k_max = 8usize;
    let mut worst_z = 0.0f64;
    for &alpha in &[0.5f64, 1.0, 10.0] {
        let mut rng = ChaCha8Rng::seed_from_u64(0x6e6d ^ alpha.to_bits());
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
        for k in 1..=k_max {
            let n = f64::from(draws);
            let mean = sums[k - 1] / n;
            let var = (squares[k - 1] / n - mean * mean).max(0.0);
            let se = (var / n).sqrt();
            let expected = (alpha / (1.0 + alpha)).powi(k as i32);
            let z = (mean - expected).abs() / se;
            worst_z = worst_z.max(z);
            assert!(
                (mean - expected).abs() <= 3.0 * se,
                "alpha={alpha} k={k}: mean {mean} vs {expected}, se {se}"
            );
        }
    }
    println!("criterion 09 PASS: worst |z| = {worst_z:.2} over alpha in {{0.5, 1, 10}}, k <= 8");
}

// ---------------------------------------------------------------------
// criterion 10: rate_fluid / d converges to rate_intermediate
// ---------------------------------------------------------------------

#[test]
fn criterion_10_rate_function_small_d_consistency() {
    let d = 1e-6;
    let rho = 1.0;
    let mut worst = 0.0f64;
    for i in 1..=20 {
        let m = rho * f64::from(i) / 21.0;
        let scaled = rate_fluid(rho, m, d).unwrap() / d;
        let limit = rate_intermediate(rho, m).unwrap();
        let rel = (scaled - limit).abs() / limit.abs().max(1e-300);
        worst = worst.max(rel);
        assert!(rel <= 1e-3, "m={m}: {scaled} vs {limit} (rel {rel})");
    }
    println!("criterion 10 PASS: worst pointwise relative error {worst:.2e} on the 20-point grid");
}

// ---------------------------------------------------------------------
// supporting check: simulated size-biased marginals match the exact ones
// (ties the dynamics, the sampler and the table machinery together)
// ---------------------------------------------------------------------

#[test]
fn simulated_first_pick_matches_exact_marginal() {
    let p = ModelParams::new(64, 64, 1.0 / 8.0).unwrap();
    let table = PartitionTable::build(p.diffusion, p.sites, p.particles, None).unwrap();
    let samples = sb_first_samples(&p, 400, 5, 0.05);
    let total = samples.len() as f64;
    let mut counts = vec![0u32; p.particles as usize + 1];
    for &s in &samples {
        counts[s as usize] += 1;
    }
    let mut sup: f64 = 0.0;
    let mut emp = 0.0;
    let mut exact = 0.0;
    for occ in 1..=p.particles {
        emp += f64::from(counts[occ as usize]) / total;
        exact += size_biased_marginal_pmf(occ, &p, &table).unwrap();
        sup = sup.max((emp - exact).abs());
    }
    assert!(sup <= 0.05, "sup distance {sup}");
}
