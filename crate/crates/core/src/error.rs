use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("integer overflow in exact arithmetic")]
    Overflow,
    #[error("system has no nonzero equations")]
    DegenerateSystem,
    #[error("capacity exceeded: worst-case magnitude bound is not below 2^120")]
    CapacityExceeded,
    #[error("work budget of {budget} evaluations exceeded (needs {needed})")]
    WorkBudgetExceeded { budget: u64, needed: u128 },
    #[error("minimal polynomial must be monic of degree at least 1")]
    InvalidMinpoly,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("at least two points with positive counts are required")]
    InsufficientData,
    #[error("cannot factor zero")]
    ZeroProduct,
}
