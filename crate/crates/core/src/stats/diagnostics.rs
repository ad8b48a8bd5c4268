//! Per-configuration condensation diagnostics.

use crate::dynamics::Configuration;

/// Number of occupied sites.
pub fn occupied_sites(config: &Configuration) -> usize {
    config.occupations().iter().filter(|&&o| o > 0).count()
}

/// Mass fraction carried by the fullest site, `eta_(1) / N`.
pub fn max_fraction(config: &Configuration) -> f64 {
    assert!(config.total() > 0, "undefined for an empty system");
    let max = config.occupations().iter().copied().max().unwrap_or(0);
    f64::from(max) / config.total() as f64
}

/// Split of a configuration across an occupation threshold `K`: mass below
/// and above, and the volume fraction of sites above.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseDecomposition {
    pub bulk_mass_fraction: f64,
    pub condensed_mass_fraction: f64,
    pub condensed_volume_fraction: f64,
}

/// Mass fractions are complementary by construction, so
/// `bulk + condensed == 1` holds exactly.
pub fn phase_decomposition(config: &Configuration, threshold: u32) -> PhaseDecomposition {
    assert!(config.total() > 0, "undefined for an empty system");
    let mut condensed_mass = 0u64;
    let mut condensed_sites = 0u32;
    for &o in config.occupations() {
        if o > threshold {
            condensed_mass += u64::from(o);
            condensed_sites += 1;
        }
    }
    let condensed_mass_fraction = condensed_mass as f64 / config.total() as f64;
    PhaseDecomposition {
        bulk_mass_fraction: 1.0 - condensed_mass_fraction,
        condensed_mass_fraction,
        condensed_volume_fraction: f64::from(condensed_sites) / f64::from(config.sites()),
    }
}

/// Average of `eta_x^a` over all sites of all configurations.
pub fn empirical_moment(configs: &[Configuration], a: f64) -> f64 {
    assert!(a > 0.0, "moment order must be positive");
    assert!(!configs.is_empty(), "no configurations");
    let mut acc = 0.0;
    let mut count = 0usize;
    for c in configs {
        for &o in c.occupations() {
            if o > 0 {
                acc += f64::from(o).powf(a);
            }
        }
        count += c.occupations().len();
    }
    acc / count as f64
}
