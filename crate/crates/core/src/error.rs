use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid model parameters: {0}")]
    InvalidParams(String),

    #[error("fugacity must lie in [0, 1): got {0}")]
    FugacityOutOfRange(f64),

    #[error("operation undefined for an empty system (N = 0)")]
    EmptySystem,

    #[error("memory budget exceeded: {required} bytes required, budget is {budget} bytes")]
    BudgetExceeded { required: u64, budget: u64 },

    #[error("partition table (d={table_d}, maxL={max_l}, maxN={max_n}) does not cover the request: {request}")]
    TableMismatch {
        table_d: f64,
        max_l: u32,
        max_n: u32,
        request: String,
    },

    #[error("mass fraction out of range: need {condition}, got m = {m}")]
    MassOutOfRange { m: f64, condition: &'static str },

    #[error("prefactor C(x) is implemented for ceil(1/x) <= 4 only: x = {0}")]
    UnsupportedPrefactor(f64),

    #[error("malformed table file: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
