//! Gradient sources for optimizer experiments: diagonal quadratics,
//! seeded stochastic linear regression, and scheduled plateau/spike
//! streams.
//!
//! Everything is reproducible by construction: randomness comes from the
//! fully specified [`SplitMix64`] generator, and identical `(spec, seed)`
//! pairs replay identical gradient sequences bit for bit.

mod error;
mod rng;
mod source;
mod spec;

pub use error::{Error, Result};
pub use rng::SplitMix64;
pub use source::GradientSource;
pub use spec::{ObjectiveKind, ObjectiveSpec};

/// Double-precision objective specification (the harness default).
pub type ObjectiveSpecF64 = ObjectiveSpec<f64>;
/// Double-precision gradient source.
pub type GradientSourceF64 = GradientSource<f64>;
