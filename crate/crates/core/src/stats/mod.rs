//! Size-biased sampling, GEM / Poisson-Dirichlet reference samplers and
//! condensation diagnostics.

mod diagnostics;
mod empirical;
mod gem;
mod reference;
mod size_biased;

pub use diagnostics::{empirical_moment, max_fraction, occupied_sites, phase_decomposition, PhaseDecomposition};
pub use empirical::EmpiricalDistribution;
pub use gem::{pd_part_budget, sample_gem, sample_pd, UnitPartition};
pub use reference::size_biased_gc_pmf;
pub use size_biased::{order_statistics, r_k, size_biased_permutation, SizeBiasedSample};
