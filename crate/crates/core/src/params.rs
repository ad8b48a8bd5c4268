use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// Model family. Both families share the same stationary distributions;
/// the distinction only matters for the dynamics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    Inclusion,
    ZeroRangeEquivalent,
}

/// System parameters: lattice size `L`, particle number `N` and the
/// diffusion parameter `d`. The density is `rho = N / L`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub sites: u32,
    pub particles: u32,
    pub diffusion: f64,
    pub family: Family,
}

impl ModelParams {
    pub fn new(sites: u32, particles: u32, diffusion: f64) -> Result<Self> {
        if sites == 0 {
            return Err(Error::InvalidParams("need at least one site".into()));
        }
        if !(diffusion > 0.0) || !diffusion.is_finite() {
            return Err(Error::InvalidParams(format!(
                "diffusion parameter must be positive and finite, got {diffusion}"
            )));
        }
        Ok(Self {
            sites,
            particles,
            diffusion,
            family: Family::Inclusion,
        })
    }

    pub fn with_family(mut self, family: Family) -> Self {
        self.family = family;
        self
    }

    /// Particle density `N / L`.
    pub fn rho(&self) -> f64 {
        f64::from(self.particles) / f64::from(self.sites)
    }

    /// The combination `d * L` that controls the condensation regime.
    pub fn dl(&self) -> f64 {
        self.diffusion * f64::from(self.sites)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_degenerate_parameters() {
        assert!(ModelParams::new(0, 4, 1.0).is_err());
        assert!(ModelParams::new(4, 4, 0.0).is_err());
        assert!(ModelParams::new(4, 4, -1.0).is_err());
        assert!(ModelParams::new(4, 4, f64::NAN).is_err());
        assert!(ModelParams::new(4, 0, 0.5).is_ok());
    }

    #[test]
    fn density_and_dl() {
        let p = ModelParams::new(512, 1024, 1.0 / 512.0).unwrap();
        assert_eq!(p.rho(), 2.0);
        assert!((p.dl() - 1.0).abs() < 1e-15);
    }
}
