use thiserror::Error;

/// Errors raised by configuration validation and step transitions.
///
/// Each violated bound gets its own variant so callers (and tests) can
/// assert the specific failure instead of matching on message text.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("p must be a positive finite real, got {got}")]
    InvalidP { got: f64 },

    #[error("learning rate alpha must be a positive finite real, got {got}")]
    InvalidAlpha { got: f64 },

    #[error("beta1 must lie in [0, 1), got {got}")]
    InvalidBeta1 { got: f64 },

    #[error("beta2 must lie in (0, 1), got {got}")]
    InvalidBeta2 { got: f64 },

    /// beta2 <= beta1^p makes plateau steps grow instead of decay.
    #[error("beta2 ({beta2}) must exceed beta1^p ({floor}) for p = {p}, or plateau steps will not decay")]
    NonDecayingBetaPair { beta1: f64, beta2: f64, p: f64, floor: f64 },

    #[error("epsilon must be a non-negative finite real, got {got}")]
    InvalidEpsilon { got: f64 },

    #[error("state dimension must be at least 1")]
    ZeroDimension,

    #[error("gradient length {got} does not match state dimension {expected}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("gradient entry {index} is not finite ({value})")]
    NonFiniteGradient { index: usize, value: f64 },

    /// A magnitude left the finitely representable range of the working
    /// precision (|g|^p or the update itself). Reported instead of letting
    /// an infinity poison all later state.
    #[error("value at coordinate {index} is not finitely representable in the working precision")]
    Overflow { index: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
