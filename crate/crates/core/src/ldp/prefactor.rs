//! The finite prefactor in the complete-condensation law of the maximum.
//!
//! With `x = M/N` in `(0, 1)` and `k = ceil(1/x) - 1`, the probability
//! `P[max = M]` is carried by configurations with exactly `k + 1` occupied
//! sites, masses `x = v_1 >= v_2 >= ... >= v_{k+1} > 0` summing to one.
//! Each arrangement of those masses in size-biased order contributes the
//! reciprocal of the product of its tail sums, summed over all
//! arrangements and integrated over the ordered-mass region:
//!
//! * `k = 1`: the two arrangements give `1/x + 1/(1-x) = 1/(x(1-x))` in
//!   closed form.
//! * `k = 2, 3`: the region is one- resp. two-dimensional and the
//!   integral is evaluated by adaptive Simpson quadrature; inside each
//!   branch the smallest mass is bounded away from zero, so the
//!   integrand is smooth there.

use crate::{Error, Result};

/// All permutations of `0..n` (tiny `n` only).
fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, rest: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest.is_empty() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..rest.len() {
            let v = rest.remove(i);
            prefix.push(v);
            rec(prefix, rest, out);
            prefix.pop();
            rest.insert(i, v);
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut (0..n).collect(), &mut out);
    out
}

/// Density of one ordered mass tuple: the sum over arrangements of the
/// reciprocal tail-sum products.
fn arrangement_density(masses: &[f64], perms: &[Vec<usize>]) -> f64 {
    let mut total = 0.0;
    for perm in perms {
        let mut prod = 1.0;
        let mut tail = 1.0;
        for &idx in &perm[..perm.len() - 1] {
            tail -= masses[idx];
            prod *= tail;
        }
        total += 1.0 / prod;
    }
    total
}

fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson(fa: f64, fm: f64, fb: f64, h: f64) -> f64 {
        h / 6.0 * (fa + 4.0 * fm + fb)
    }
    #[allow(clippy::too_many_arguments)]
    fn rec<F: Fn(f64) -> f64>(
        f: &F,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = simpson(fa, flm, fm, m - a);
        let right = simpson(fm, frm, fb, b - m);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            left + right + delta / 15.0
        } else {
            rec(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
                + rec(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
        }
    }
    if b <= a {
        return 0.0;
    }
    let fa = f(a);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let fb = f(b);
    let whole = simpson(fa, fm, fb, b - a);
    rec(f, a, b, fa, fm, fb, whole, tol, 40)
}

fn c_two_clusters(x: f64) -> f64 {
    1.0 / (x * (1.0 - x))
}

/// One-dimensional branch: masses `(x, s, 1-x-s)` with
/// `s` in `[(1-x)/2, x]`.
fn c_three_clusters(x: f64, tol: f64) -> f64 {
    let perms = permutations(3);
    let lo = (1.0 - x) / 2.0;
    let hi = x;
    adaptive_simpson(
        &|s| arrangement_density(&[x, s, 1.0 - x - s], &perms),
        lo,
        hi,
        tol,
    )
}

/// Two-dimensional branch: masses `(x, v2, v3, 1-x-v2-v3)` over the
/// ordered region, integrated as nested one-dimensional quadratures.
fn c_four_clusters(x: f64, tol: f64) -> f64 {
    let perms = permutations(4);
    let lo2 = (1.0 - x) / 3.0;
    let hi2 = x;
    adaptive_simpson(
        &|v2| {
            let lo3 = (1.0 - x - v2) / 2.0;
            let hi3 = v2;
            adaptive_simpson(
                &|v3| arrangement_density(&[x, v2, v3, 1.0 - x - v2 - v3], &perms),
                lo3,
                hi3,
                tol / (hi2 - lo2).max(1e-3),
            )
        },
        lo2,
        hi2,
        tol,
    )
}

/// The `x`-dependent constant in `P[max = M] ~ C(x) rho^(1-ceil(1/x))
/// d^(ceil(1/x)-1) N^(ceil(1/x)-2)`. Closed form on `ceil(1/x) = 2`,
/// adaptive quadrature (relative tolerance ~1e-4) on `ceil(1/x)` of 3
/// or 4, unsupported beyond that.
pub fn prefactor_c(x: f64) -> Result<f64> {
    if !(0.0 < x && x < 1.0) {
        return Err(Error::UnsupportedPrefactor(x));
    }
    let clusters = (1.0 / x).ceil() as u64;
    match clusters {
        2 => Ok(c_two_clusters(x)),
        3 => {
            let scale = c_two_clusters(x); // same order of magnitude
            Ok(c_three_clusters(x, 1e-6 * scale))
        }
        4 => {
            let scale = c_two_clusters(x);
            Ok(c_four_clusters(x, 1e-6 * scale))
        }
        _ => Err(Error::UnsupportedPrefactor(x)),
    }
}
