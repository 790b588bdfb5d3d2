//! Adaptive gradient optimizers built around L^p-norm preconditioning.
//!
//! Every optimizer here is a pure state machine: a step maps
//! `(config, state, gradient)` to `(update, next state)` without touching the
//! inputs, so runs are deterministic and trivially replayable. The family
//! covers L^p generalizations of Adam, AdaGrad, and RMSProp (the usual
//! methods are the `p = 2` instances), plus AdaMax as the `p -> infinity`
//! limit and plain SGD as a baseline.
//!
//! All arithmetic is generic over the floating-point scalar via [`Real`];
//! the `*F64` aliases at the crate root pin the double-precision variants
//! used by the experiment harness.

mod config;
mod error;
mod scalar;
mod state;
mod step;

pub use config::{recommended_lr, Method, OptimizerConfig};
pub use error::{Error, Result};
pub use scalar::Real;
pub use state::{OptimizerState, StepResult};
pub use step::{step, step_adamax, step_lp_adagrad, step_lp_adam, step_lp_rmsprop, step_sgd};

/// Double-precision optimizer configuration (the harness default).
pub type OptimizerConfigF64 = OptimizerConfig<f64>;
/// Double-precision optimizer state.
pub type OptimizerStateF64 = OptimizerState<f64>;
/// Double-precision step result.
pub type StepResultF64 = StepResult<f64>;

/// Single-precision optimizer configuration.
pub type OptimizerConfigF32 = OptimizerConfig<f32>;
/// Single-precision optimizer state.
pub type OptimizerStateF32 = OptimizerState<f32>;
/// Single-precision step result.
pub type StepResultF32 = StepResult<f32>;
