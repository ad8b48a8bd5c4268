//! Weighted empirical distributions and the Kolmogorov-Smirnov distance.

use crate::{Error, Result};

/// A collection of real-valued samples with optional positive weights.
#[derive(Debug, Clone)]
pub struct EmpiricalDistribution {
    samples: Vec<f64>,
    weights: Option<Vec<f64>>,
}

impl EmpiricalDistribution {
    pub fn new(samples: Vec<f64>) -> Self {
        Self {
            samples,
            weights: None,
        }
    }

    pub fn with_weights(samples: Vec<f64>, weights: Vec<f64>) -> Result<Self> {
        if samples.len() != weights.len() {
            return Err(Error::InvalidParams(
                "sample and weight lengths differ".into(),
            ));
        }
        if weights.iter().any(|&w| !(w >= 0.0)) {
            return Err(Error::InvalidParams("weights must be nonnegative".into()));
        }
        Ok(Self {
            samples,
            weights: Some(weights),
        })
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    /// Sup-norm distance between the empirical CDF and a reference CDF:
    /// at each jump both the left and right limits of the empirical step
    /// function are compared against the reference.
    pub fn ks_distance<F: Fn(f64) -> f64>(&self, cdf: F) -> Result<f64> {
        if self.samples.is_empty() {
            return Err(Error::InvalidParams(
                "KS distance of an empty sample".into(),
            ));
        }
        let mut order: Vec<usize> = (0..self.samples.len()).collect();
        order.sort_unstable_by(|&a, &b| self.samples[a].partial_cmp(&self.samples[b]).unwrap());
        let total: f64 = match &self.weights {
            Some(w) => w.iter().sum(),
            None => self.samples.len() as f64,
        };
        if total <= 0.0 {
            return Err(Error::InvalidParams("total weight must be positive".into()));
        }

        let mut sup: f64 = 0.0;
        let mut cum = 0.0;
        let mut i = 0;
        while i < order.len() {
            let x = self.samples[order[i]];
            let below = cum / total;
            // absorb ties so the empirical CDF jumps once per distinct value
            while i < order.len() && self.samples[order[i]] == x {
                cum += match &self.weights {
                    Some(w) => w[order[i]],
                    None => 1.0,
                };
                i += 1;
            }
            let at = cum / total;
            let f = cdf(x);
            sup = sup.max((f - below).abs()).max((at - f).abs());
        }
        Ok(sup)
    }

    /// Empirical tail `P[X > u]`.
    pub fn tail(&self, u: f64) -> f64 {
        let total: f64 = match &self.weights {
            Some(w) => w.iter().sum(),
            None => self.samples.len() as f64,
        };
        let above: f64 = self
            .samples
            .iter()
            .enumerate()
            .filter(|(_, &x)| x > u)
            .map(|(i, _)| match &self.weights {
                Some(w) => w[i],
                None => 1.0,
            })
            .sum();
        above / total
    }
}
