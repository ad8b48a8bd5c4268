//! Stationary structure of the inclusion process at desk scale.
//!
//! The crate has four parts:
//!
//! * [`weights`], [`grand_canonical`], [`partition`] and [`marginals`] —
//!   exact stationary-measure numerics: single-site weights, grand-canonical
//!   quantities, canonical partition functions (closed form, log-space
//!   recursion, asymptotics) and the canonical / size-biased marginals
//!   derived from them.
//! * [`dynamics`] — stochastic simulators sharing those stationary
//!   distributions: rejection dynamics on the complete graph, totally
//!   asymmetric Gillespie dynamics on a ring, and the zero-range equivalent.
//! * [`stats`] — size-biased permutations, GEM / Poisson-Dirichlet reference
//!   samplers, empirical distributions and condensation diagnostics.
//! * [`ldp`] — closed-form large-deviation rate functions for the maximum
//!   occupation number and exact finite-size numerics of its distribution.
//!
//! [`enumerate`] holds brute-force references for small systems; it is kept
//! independent of the partition-function code so tests can use it as an
//! oracle.

pub mod dynamics;
pub mod enumerate;
pub mod error;
pub mod grand_canonical;
pub mod ldp;
pub mod logspace;
pub mod marginals;
pub mod params;
pub mod partition;
pub mod stats;
pub mod weights;

pub use error::Error;
pub use params::{Family, ModelParams};
pub use partition::PartitionTable;

/// Crate result type.
pub type Result<T> = std::result::Result<T, Error>;
