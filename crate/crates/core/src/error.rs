use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("subset references element {index}, but the ground set has {size} elements")]
    InvalidSubset { index: usize, size: usize },

    #[error("set function returned {value} for a subset; values must be finite and non-negative")]
    InvalidValue { value: f64 },

    #[error("exhaustive check over {size} elements exceeds the limit of {limit}; use sampled mode")]
    ExhaustiveLimit { size: usize, limit: usize },

    #[error("enumeration needs {required} subset evaluations, budget is {budget}")]
    EnumerationBudget { required: u128, budget: u128 },

    #[error("restart loop needs {required} single runs, budget is {budget}")]
    RunBudget { required: f64, budget: u64 },

    #[error("solution size K={k} is invalid for a ground set of {size} elements")]
    InvalidK { k: usize, size: usize },

    #[error("invalid parameter: {0}")]
    InvalidParams(String),

    #[error("degenerate instance: v(X) = 0, every subset is optimal")]
    DegenerateInstance,

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("infeasible structure parameters: {0}")]
    Infeasible(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
