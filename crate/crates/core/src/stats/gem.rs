//! Stick-breaking samplers: GEM and its ordered version,
//! Poisson-Dirichlet.

use rand::Rng;

/// A partition of the unit interval: retained parts plus the unbroken
/// residual. Parts are in sampling order for GEM draws and nonincreasing
/// for Poisson-Dirichlet draws.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitPartition {
    parts: Vec<f64>,
    residual: f64,
}

impl UnitPartition {
    pub fn parts(&self) -> &[f64] {
        &self.parts
    }

    pub fn residual(&self) -> f64 {
        self.residual
    }

    pub fn sum(&self) -> f64 {
        self.parts.iter().sum()
    }
}

/// GEM(alpha) by stick breaking with Beta(1, alpha) fractions sampled by
/// inverse transform, `U = 1 - (1 - R)^(1/alpha)`: the retained fraction
/// of the stick after each break is `(1 - R)^(1/alpha)` directly.
pub fn sample_gem<R: Rng + ?Sized>(alpha: f64, k_max: usize, rng: &mut R) -> UnitPartition {
    assert!(alpha > 0.0, "alpha must be positive");
    let inv_alpha = 1.0 / alpha;
    let mut stick = 1.0f64;
    let mut parts = Vec::with_capacity(k_max);
    for _ in 0..k_max {
        let r: f64 = rng.random();
        let keep = (1.0 - r).powf(inv_alpha);
        parts.push(stick * (1.0 - keep));
        stick *= keep;
    }
    UnitPartition {
        parts,
        residual: stick,
    }
}

/// Number of sticks after which the expected residual `(alpha/(1+alpha))^k`
/// drops below `eps`.
pub fn pd_part_budget(alpha: f64, eps: f64) -> usize {
    assert!(alpha > 0.0 && eps > 0.0 && eps < 1.0);
    let per_part = (alpha / (1.0 + alpha)).ln();
    (eps.ln() / per_part).ceil().max(1.0) as usize
}

/// Poisson-Dirichlet(alpha): a GEM sample ordered nonincreasing. Draws at
/// least `k_max` parts and keeps breaking until the residual is below
/// 1e-6, so the ordered prefix is the whole partition up to that mass.
pub fn sample_pd<R: Rng + ?Sized>(alpha: f64, k_max: usize, rng: &mut R) -> UnitPartition {
    const RESIDUAL_CUTOFF: f64 = 1e-6;
    let budget = k_max.max(pd_part_budget(alpha, RESIDUAL_CUTOFF));
    let mut sample = sample_gem(alpha, budget, rng);
    let inv_alpha = 1.0 / alpha;
    while sample.residual > RESIDUAL_CUTOFF {
        let r: f64 = rng.random();
        let keep = (1.0 - r).powf(inv_alpha);
        sample.parts.push(sample.residual * (1.0 - keep));
        sample.residual *= keep;
    }
    sample
        .parts
        .sort_unstable_by(|a, b| b.partial_cmp(a).unwrap());
    sample
}
