//! Grand-canonical reference laws for size-biased observables.

use crate::grand_canonical::GrandCanonical;
use crate::weights::log_weight;
use crate::{Error, Result};

/// Size-biased version of the grand-canonical single-site marginal at
/// density `rho`: `n w(n) phi^n / (rho z(phi))` with `phi = rho/(d+rho)`.
///
/// This is the limiting law of `eta~_i` in the non-condensing regime of
/// constant `d`; as `d` drops to zero it scales to the exponential law
/// with mean `rho`.
pub fn size_biased_gc_pmf(n: u64, rho: f64, d: f64) -> Result<f64> {
    if !(rho > 0.0) {
        return Err(Error::InvalidParams(format!(
            "density must be positive, got {rho}"
        )));
    }
    if n == 0 {
        return Ok(0.0);
    }
    let gc = GrandCanonical::at_density(rho, d)?;
    let log_p =
        (n as f64).ln() + log_weight(n, d) + n as f64 * gc.phi().ln() - rho.ln() - gc.log_z();
    Ok(log_p.exp())
}
