use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid hyperparameter: {0}")]
    InvalidHyperparameter(#[from] optim_core::Error),

    #[error("gradient history must contain at least one step")]
    EmptyHistory,

    #[error("history step {step} has length {got}, expected {expected}")]
    RaggedHistory {
        step: usize,
        expected: usize,
        got: usize,
    },

    #[error("weight {index} is negative ({value}); weights must be non-negative")]
    NegativeWeight { index: usize, value: f64 },

    #[error("norm exponent must be a positive finite real, got {got}")]
    NonPositiveExponent { got: f64 },

    #[error("values and weights have different lengths ({values} vs {weights})")]
    LengthMismatch { values: usize, weights: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
