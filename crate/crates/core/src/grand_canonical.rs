//! Grand-canonical single-site measure and the fugacity / density
//! correspondence.
//!
//! For fugacity `phi` in `[0, 1)` the single-site marginal is
//! `nu_phi(n) = w(n) phi^n / z(phi)` with normalization
//! `z(phi) = (1 - phi)^(-d)`, density `R(phi) = d phi / (1 - phi)` and
//! inverse `Phi(rho) = rho / (d + rho)`. At `phi -> 1` the density
//! diverges, which is what makes every positive density reachable and
//! moves the condensation transition to zero density when `d` vanishes.

use crate::params::ModelParams;
use crate::weights::{log_weight, log_z_closed};
use crate::{Error, Result};

/// A grand-canonical single-site ensemble at fugacity `phi`.
#[derive(Debug, Clone, Copy)]
pub struct GrandCanonical {
    phi: f64,
    d: f64,
}

impl GrandCanonical {
    pub fn new(phi: f64, d: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&phi) {
            return Err(Error::FugacityOutOfRange(phi));
        }
        if !(d > 0.0) || !d.is_finite() {
            return Err(Error::InvalidParams(format!(
                "diffusion parameter must be positive, got {d}"
            )));
        }
        Ok(Self { phi, d })
    }

    /// Ensemble at the fugacity matching density `rho`.
    pub fn at_density(rho: f64, d: f64) -> Result<Self> {
        Self::new(fugacity_phi(rho, d)?, d)
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn d(&self) -> f64 {
        self.d
    }

    /// `log z(phi) = -d log(1 - phi)`.
    pub fn log_z(&self) -> f64 {
        -self.d * (-self.phi).ln_1p()
    }

    /// Mean occupation `R(phi)`.
    pub fn density(&self) -> f64 {
        self.d * self.phi / (1.0 - self.phi)
    }

    /// `nu_phi(n) = w(n) phi^n / z(phi)`.
    pub fn pmf(&self, n: u64) -> f64 {
        let lp = self.log_pmf(n);
        if lp == f64::NEG_INFINITY {
            0.0
        } else {
            lp.exp()
        }
    }

    pub fn log_pmf(&self, n: u64) -> f64 {
        if self.phi == 0.0 {
            return if n == 0 { 0.0 } else { f64::NEG_INFINITY };
        }
        log_weight(n, self.d) + n as f64 * self.phi.ln() - self.log_z()
    }
}

/// Density as a function of fugacity, `R(phi) = d phi / (1 - phi)`.
pub fn density_r(phi: f64, d: f64) -> Result<f64> {
    Ok(GrandCanonical::new(phi, d)?.density())
}

/// Fugacity as a function of density, `Phi(rho) = rho / (d + rho)`;
/// the inverse of [`density_r`].
pub fn fugacity_phi(rho: f64, d: f64) -> Result<f64> {
    if !(rho >= 0.0) {
        return Err(Error::InvalidParams(format!(
            "density must be nonnegative, got {rho}"
        )));
    }
    if !(d > 0.0) {
        return Err(Error::InvalidParams(format!(
            "diffusion parameter must be positive, got {d}"
        )));
    }
    Ok(rho / (d + rho))
}

/// Specific relative entropy between the canonical distribution for `p`
/// and the grand-canonical product measure at fugacity `phi`:
/// `log z(phi) - (N/L) log phi - (1/L) log Z_{L,N}`.
///
/// Vanishes in the thermodynamic limit when `phi` matches the density,
/// which is the equivalence of ensembles.
pub fn relative_entropy_rate(p: &ModelParams, phi: f64) -> Result<f64> {
    if !(0.0 < phi && phi < 1.0) {
        return Err(Error::FugacityOutOfRange(phi));
    }
    let gc = GrandCanonical::new(phi, p.diffusion)?;
    let l = f64::from(p.sites);
    let n_over_l = f64::from(p.particles) / l;
    Ok(gc.log_z() - n_over_l * phi.ln() - log_z_closed(p) / l)
}
