//! Event-driven dynamics on a ring with totally asymmetric jumps
//! (`x -> x+1 mod L`).
//!
//! Site `x` fires at rate `eta_x (d + eta_{x+1})` for the inclusion
//! process and at `u(eta_x) = eta_x / (d + eta_x - 1)` for the zero-range
//! equivalent. Holding times are exponential in the total rate; the firing
//! site is drawn from the rate tree, and a move touches at most three
//! per-site rates.

use super::rate_tree::SumTree;
use super::{zero_range_rate, SimState};
use rand::Rng;

#[derive(Clone, Copy, PartialEq, Eq)]
pub(super) enum RateModel {
    Inclusion,
    ZeroRange,
}

impl RateModel {
    #[inline]
    fn site_rate(self, occ: &[u32], x: usize, d: f64) -> f64 {
        match self {
            RateModel::Inclusion => {
                let next = occ[(x + 1) % occ.len()];
                f64::from(occ[x]) * (d + f64::from(next))
            }
            RateModel::ZeroRange => zero_range_rate(occ[x], d),
        }
    }
}

fn build_tree(occ: &[u32], d: f64, model: RateModel) -> SumTree {
    let rates: Vec<f64> = (0..occ.len()).map(|x| model.site_rate(occ, x, d)).collect();
    SumTree::new(&rates)
}

/// Fire the chosen site and refresh the affected per-site rates.
fn apply_event(tree: &mut SumTree, occ: &mut [u32], x: usize, d: f64, model: RateModel) {
    let l = occ.len();
    let y = (x + 1) % l;
    occ[x] -= 1;
    occ[y] += 1;
    match model {
        RateModel::Inclusion => {
            let prev = (x + l - 1) % l;
            tree.update(prev, model.site_rate(occ, prev, d));
            if x != prev {
                tree.update(x, model.site_rate(occ, x, d));
            }
            if y != prev && y != x {
                tree.update(y, model.site_rate(occ, y, d));
            }
        }
        RateModel::ZeroRange => {
            tree.update(x, model.site_rate(occ, x, d));
            if y != x {
                tree.update(y, model.site_rate(occ, y, d));
            }
        }
    }
}

pub(super) fn run(state: &mut SimState, t_target: f64, model: RateModel) {
    let (params, config, _, time, rng) = state.parts_mut();
    let d = params.diffusion;
    let occ = &mut config.occupations;
    let mut tree = build_tree(occ, d, model);

    loop {
        let total = tree.total();
        if total <= 0.0 {
            // empty system: nothing ever fires
            *time = t_target;
            return;
        }
        let u: f64 = rng.random();
        let holding = -(1.0 - u).ln() / total;
        if *time + holding >= t_target {
            *time = t_target;
            return;
        }
        *time += holding;
        let x = tree.select(rng.random::<f64>() * total);
        apply_event(&mut tree, occ, x, d, model);
    }
}

/// One Gillespie event; returns the holding time spent in the pre-event
/// state. Rebuilds the rate tree per call, so this is for small-system
/// diagnostics; bulk runs go through [`run`].
pub(super) fn step_one(state: &mut SimState, model: RateModel) -> f64 {
    let (params, config, _, time, rng) = state.parts_mut();
    let d = params.diffusion;
    let occ = &mut config.occupations;
    let mut tree = build_tree(occ, d, model);
    let total = tree.total();
    assert!(total > 0.0, "no events possible in an empty system");
    let u: f64 = rng.random();
    let holding = -(1.0 - u).ln() / total;
    *time += holding;
    let x = tree.select(rng.random::<f64>() * total);
    apply_event(&mut tree, occ, x, d, model);
    holding
}
