//! Large deviations of the maximum occupation number: closed-form rate
//! functions for the three scaling regimes, and exact finite-size
//! numerics of the maximum's distribution from truncated partition
//! functions.

mod max_dist;
mod prefactor;
mod rates;

pub use max_dist::{
    exact_max_distribution, empirical_rate, sandwich_bounds, MaxDistribution, RatePoint, RateSpeed,
};
pub use prefactor::prefactor_c;
pub use rates::{condensed_joint_limit, rate_complete, rate_fluid, rate_intermediate};
