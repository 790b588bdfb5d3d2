use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("objective dimension must be at least 1")]
    ZeroDimension,

    #[error("{what} has length {got}, expected the objective dimension {expected}")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("quadratic weight {index} is {value}; all weights must be strictly positive")]
    NonPositiveWeight { index: usize, value: f64 },

    #[error("noise standard deviation must be a non-negative finite real, got {got}")]
    InvalidNoiseStd { got: f64 },

    #[error("minibatch size must be at least 1")]
    ZeroMinibatch,

    #[error("spike ticks must be strictly increasing and at or after the warm-up (length {warmup_len}); tick {tick} is not")]
    InvalidSpikeSchedule { warmup_len: u64, tick: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
