//! Closed-form rate functions for the maximum occupation number.
//!
//! Speeds differ by regime: `L` for fixed diffusion, `dL` on intermediate
//! scales, and `log L` under complete condensation where the rate is a
//! staircase in the minimum number of occupied sites needed to carry the
//! maximum.

use crate::{Error, Result};

fn check_mass(rho: f64, m: f64) -> Result<()> {
    if !(rho > 0.0) {
        return Err(Error::InvalidParams(format!(
            "density must be positive, got {rho}"
        )));
    }
    if !(0.0..).contains(&m) || m >= rho {
        return Err(Error::MassOutOfRange {
            m,
            condition: "0 <= m < rho",
        });
    }
    Ok(())
}

/// Fixed-diffusion rate function (speed `L`):
/// `(rho-m) log((rho-m)/(rho-m+d)) - rho log(rho/(rho+d)) - d log((rho-m+d)/(rho+d))`.
///
/// Written with `ln_1p` so that the leading `O(d)` behaviour survives
/// small `d`; `rate_fluid / d` converges to [`rate_intermediate`].
pub fn rate_fluid(rho: f64, m: f64, d: f64) -> Result<f64> {
    check_mass(rho, m)?;
    if !(d > 0.0) {
        return Err(Error::InvalidParams(format!(
            "diffusion parameter must be positive, got {d}"
        )));
    }
    let b = rho - m;
    Ok(-b * (d / b).ln_1p() + rho * (d / rho).ln_1p() - d * ((b + d).ln() - (rho + d).ln()))
}

/// Intermediate-scale rate function (speed `dL`): `log(rho / (rho - m))`.
pub fn rate_intermediate(rho: f64, m: f64) -> Result<f64> {
    check_mass(rho, m)?;
    Ok((rho / (rho - m)).ln())
}

/// Complete-condensation rate function (speed `log L`) for `d = L^-gamma`:
/// `(ceil(rho/m) - 1) gamma - (ceil(rho/m) - 2)`.
///
/// The staircase is evaluated as printed; its plateau boundaries
/// `m = rho/k` are discontinuity points and `m = rho` itself sits outside
/// the supporting limit theorem (the formula gives 1 there, not 0).
pub fn rate_complete(rho: f64, m: f64, gamma: f64) -> Result<f64> {
    if !(rho > 0.0) {
        return Err(Error::InvalidParams(format!(
            "density must be positive, got {rho}"
        )));
    }
    if !(m > 0.0) || m > rho {
        return Err(Error::MassOutOfRange {
            m,
            condition: "0 < m <= rho",
        });
    }
    if !(gamma > 1.0) {
        return Err(Error::InvalidParams(format!(
            "complete condensation needs gamma > 1, got {gamma}"
        )));
    }
    let k = (rho / m).ceil();
    Ok((k - 1.0) * gamma - (k - 2.0))
}

/// Limit of `d^-k` times the k-site size-biased joint under complete
/// condensation, `rho^-k prod_i (1 - x_i)^(i - k - 1)`, in the recursive
/// stick-breaking coordinates `x_i` of the sampled masses.
pub fn condensed_joint_limit(xs: &[f64], rho: f64) -> Result<f64> {
    if !(rho > 0.0) {
        return Err(Error::InvalidParams(format!(
            "density must be positive, got {rho}"
        )));
    }
    if xs.is_empty() {
        return Err(Error::InvalidParams("needs at least one coordinate".into()));
    }
    if xs.iter().any(|&x| !(0.0 < x && x < 1.0)) {
        return Err(Error::MassOutOfRange {
            m: *xs
                .iter()
                .find(|&&x| !(0.0 < x && x < 1.0))
                .unwrap_or(&f64::NAN),
            condition: "all x_i in (0,1)",
        });
    }
    let k = xs.len() as i32;
    let mut value = rho.powi(-k);
    for (i, &x) in xs.iter().enumerate() {
        value *= (1.0 - x).powi(i as i32 + 1 - k - 1);
    }
    Ok(value)
}
