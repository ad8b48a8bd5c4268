//! Log-domain primitives used by the partition-function recursions.
//!
//! Partition functions overflow doubles even at modest sizes, so every
//! table entry is carried as a natural logarithm with `f64::NEG_INFINITY`
//! standing in for an exact zero.

/// Log-domain zero.
pub const LOG_ZERO: f64 = f64::NEG_INFINITY;

/// Terms this far below the running maximum are dropped from a
/// log-sum-exp. exp(-60) ~ 9e-27; even summed over millions of terms the
/// truncation stays far below the 1e-12 accuracy the tables target.
const SIGNIFICANCE_CUTOFF: f64 = -60.0;

/// `log(exp(a) + exp(b))`.
#[inline]
pub fn log_add(a: f64, b: f64) -> f64 {
    if a == LOG_ZERO {
        return b;
    }
    if b == LOG_ZERO {
        return a;
    }
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    hi + (lo - hi).exp().ln_1p()
}

/// `log(sum(exp(v)))` over a slice.
pub fn log_sum_exp(values: &[f64]) -> f64 {
    let max = values.iter().copied().fold(LOG_ZERO, f64::max);
    if max == LOG_ZERO {
        return LOG_ZERO;
    }
    let sum: f64 = values
        .iter()
        .map(|&v| {
            let t = v - max;
            if t > SIGNIFICANCE_CUTOFF {
                t.exp()
            } else {
                0.0
            }
        })
        .sum();
    max + sum.ln()
}

/// Log-domain convolution: `out[n] = log sum_m exp(a[m] + b[n - m])` for
/// `n < out_len`. This is the work horse of every table recursion.
pub fn log_convolve(a: &[f64], b: &[f64], out_len: usize) -> Vec<f64> {
    let mut out = vec![LOG_ZERO; out_len];
    if a.is_empty() || b.is_empty() {
        return out;
    }
    for (n, slot) in out.iter_mut().enumerate() {
        let m_lo = (n + 1).saturating_sub(b.len());
        let m_hi = (a.len() - 1).min(n);
        if m_lo > m_hi {
            continue;
        }
        let mut max = LOG_ZERO;
        for m in m_lo..=m_hi {
            let t = a[m] + b[n - m];
            if t > max {
                max = t;
            }
        }
        if max == LOG_ZERO {
            continue;
        }
        let mut sum = 0.0;
        for m in m_lo..=m_hi {
            let t = a[m] + b[n - m] - max;
            if t > SIGNIFICANCE_CUTOFF {
                sum += t.exp();
            }
        }
        *slot = max + sum.ln();
    }
    out
}

/// Single entry of a log-domain convolution.
pub fn log_convolve_at(a: &[f64], b: &[f64], n: usize) -> f64 {
    if a.is_empty() || b.is_empty() {
        return LOG_ZERO;
    }
    let m_lo = (n + 1).saturating_sub(b.len());
    let m_hi = (a.len() - 1).min(n);
    if m_lo > m_hi {
        return LOG_ZERO;
    }
    let mut max = LOG_ZERO;
    for m in m_lo..=m_hi {
        let t = a[m] + b[n - m];
        if t > max {
            max = t;
        }
    }
    if max == LOG_ZERO {
        return LOG_ZERO;
    }
    let mut sum = 0.0;
    for m in m_lo..=m_hi {
        let t = a[m] + b[n - m] - max;
        if t > SIGNIFICANCE_CUTOFF {
            sum += t.exp();
        }
    }
    max + sum.ln()
}
