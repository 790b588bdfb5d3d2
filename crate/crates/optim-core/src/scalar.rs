use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive};

/// Floating-point scalar the optimizers run on: `f32` or `f64`.
///
/// The tight tolerances in the test suites are only reachable in `f64`;
/// `f32` is supported for callers that can live with looser accuracy.
pub trait Real: Float + FromPrimitive + Debug + Display {
    /// Converts an `f64` constant into `Self`.
    fn of(value: f64) -> Self {
        Self::from_f64(value).expect("finite f64 constant")
    }
}

impl Real for f32 {}
impl Real for f64 {}
