//! Rejection dynamics on the complete graph.
//!
//! Each attempt picks particle `i` uniformly; with probability
//! `dL/(dL+N)` the particle relocates to a uniform site (its own site is
//! allowed), otherwise a second particle `j` is picked uniformly and `i`
//! moves to `j`'s site. Process time advances by `1/(N(dL+N))` per
//! attempt, whether or not the attempt changes the configuration. The
//! implied transition kernel gives every ordered pair of sites the jump
//! rate `eta_x (d + eta_y)`, so the canonical measures are exactly
//! stationary; the tiny-system kernel oracle in the acceptance suite
//! pins this down.

use super::SimState;
use rand::Rng;

#[inline]
fn attempt(
    occ: &mut [u32],
    positions: &mut [u32],
    rng: &mut rand_chacha::ChaCha8Rng,
    n: u32,
    l: u32,
    p_relocate: f64,
) {
    let i = rng.random_range(0..n) as usize;
    let dest = if rng.random::<f64>() < p_relocate {
        rng.random_range(0..l)
    } else {
        let j = rng.random_range(0..n) as usize;
        positions[j]
    };
    let src = positions[i];
    occ[src as usize] -= 1;
    occ[dest as usize] += 1;
    positions[i] = dest;
}

pub(super) fn run(state: &mut SimState, t_target: f64) {
    let (params, config, positions, time, rng) = state.parts_mut();
    let n = params.particles;
    if n == 0 {
        *time = t_target;
        return;
    }
    let n_f = f64::from(n);
    let dl = params.dl();
    let p_relocate = dl / (dl + n_f);
    let dt = 1.0 / (n_f * (dl + n_f));
    let steps = ((t_target - *time) / dt).ceil().max(0.0) as u64;

    let occ = &mut config.occupations;
    let l = params.sites;
    for _ in 0..steps {
        attempt(occ, positions, rng, n, l, p_relocate);
    }
    *time += steps as f64 * dt;
}

/// One attempted move, whether or not it changes the configuration;
/// returns the fixed time increment per attempt.
pub(super) fn step_one(state: &mut SimState) -> f64 {
    let (params, config, positions, time, rng) = state.parts_mut();
    let n = params.particles;
    assert!(n > 0, "no moves possible in an empty system");
    let n_f = f64::from(n);
    let dl = params.dl();
    let p_relocate = dl / (dl + n_f);
    let dt = 1.0 / (n_f * (dl + n_f));
    attempt(
        &mut config.occupations,
        positions,
        rng,
        n,
        params.sites,
        p_relocate,
    );
    *time += dt;
    dt
}
