//! Closed-form calculators for the step-size quantities of the L^p
//! optimizer family, plus an expanded-sum reference stepper used as the
//! independent ground truth when checking the recursive implementations.

mod bounds;
mod error;
mod norms;
mod reference;

pub use bounds::{inertia_decay_rate, max_step_bound, BoundReport};
pub use error::{Error, Result};
pub use norms::weighted_norm;
pub use reference::reference_step_expanded;
