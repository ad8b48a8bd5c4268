//! Size-biased permutations and the statistics built on them.

use crate::dynamics::Configuration;
use crate::{Error, Result};
use rand::Rng;

/// A size-biased permutation of a configuration's occupations: occupied
/// sites appear first, drawn without replacement with probability
/// proportional to their occupation; empty sites follow.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SizeBiasedSample {
    values: Vec<u32>,
    source_n: u64,
}

impl SizeBiasedSample {
    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn source_n(&self) -> u64 {
        self.source_n
    }
}

/// Draw a size-biased permutation. Selection walks the cumulative mass of
/// the still-unpicked occupied sites (integer arithmetic, so the pick
/// probabilities are exact); empty sites cannot be selected and are
/// appended at the end.
pub fn size_biased_permutation<R: Rng + ?Sized>(
    config: &Configuration,
    rng: &mut R,
) -> Result<SizeBiasedSample> {
    if config.total() == 0 {
        return Err(Error::EmptySystem);
    }
    let mut pool: Vec<u32> = config
        .occupations()
        .iter()
        .copied()
        .filter(|&o| o > 0)
        .collect();
    let mut remaining = config.total();
    let mut values = Vec::with_capacity(config.occupations().len());
    while !pool.is_empty() {
        let mut target = rng.random_range(0..remaining);
        let mut idx = 0;
        for (i, &mass) in pool.iter().enumerate() {
            if target < u64::from(mass) {
                idx = i;
                break;
            }
            target -= u64::from(mass);
        }
        let picked = pool.swap_remove(idx);
        remaining -= u64::from(picked);
        values.push(picked);
    }
    values.resize(config.occupations().len(), 0);
    Ok(SizeBiasedSample {
        values,
        source_n: config.total(),
    })
}

/// Occupations sorted nonincreasing.
pub fn order_statistics(config: &Configuration) -> Vec<u32> {
    let mut out = config.occupations().to_vec();
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

/// Mass fraction remaining after the first `k` entries of a size-biased
/// sample: `R_k = 1 - (1/N) sum_{i<=k} eta~_i`.
pub fn r_k(sample: &SizeBiasedSample, k: usize) -> f64 {
    assert!(k >= 1 && k <= sample.values.len(), "k out of range");
    let picked: u64 = sample.values[..k].iter().map(|&v| u64::from(v)).sum();
    1.0 - picked as f64 / sample.source_n as f64
}
