use serde::{Deserialize, Serialize};

use optim_core::Real;

use crate::error::{Error, Result};

/// What kind of gradient stream an [`ObjectiveSpec`] produces.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
#[serde(bound(deserialize = "T: Real + Deserialize<'de>"))]
pub enum ObjectiveKind<T> {
    /// f(theta) = 1/2 sum_i a_i theta_i^2 with strictly positive weights;
    /// gradients are a . theta, fully deterministic.
    DiagonalQuadratic { weights: Vec<T> },
    /// Minibatch least squares against y = x . w* + noise with standard
    /// normal features. The true weights are drawn once from the seed when
    /// not given explicitly.
    StochasticLinearRegression {
        noise_std: T,
        minibatch: usize,
        #[serde(default)]
        true_weights: Option<Vec<T>>,
    },
    /// A scheduled stream for inertia and spike experiments: `warmup_len`
    /// seeded nonzero gradients, then exact zeros except at the listed
    /// spike ticks. Nonzero entries are positive draws in [0.5, 2), so the
    /// stream is bounded away from zero and safe for epsilon = 0.
    PlateauStream {
        warmup_len: u64,
        #[serde(default)]
        spike_ticks: Vec<u64>,
    },
}

/// A deterministic or seeded-stochastic gradient source specification.
///
/// Identical `(spec, seed)` pairs always produce identical gradient
/// sequences, bit for bit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(deserialize = "T: Real + Deserialize<'de>"))]
pub struct ObjectiveSpec<T> {
    #[serde(flatten)]
    pub kind: ObjectiveKind<T>,
    pub dim: usize,
    /// RNG seed; unused by the deterministic kinds.
    #[serde(default)]
    pub seed: u64,
}

impl<T: Real> ObjectiveSpec<T> {
    pub fn diagonal_quadratic(weights: Vec<T>) -> Self {
        let dim = weights.len();
        Self {
            kind: ObjectiveKind::DiagonalQuadratic { weights },
            dim,
            seed: 0,
        }
    }

    /// The stock regression problem: dim 20, minibatch 8, noise 0.1, true
    /// weights drawn from the seed.
    pub fn default_regression(seed: u64) -> Self {
        Self {
            kind: ObjectiveKind::StochasticLinearRegression {
                noise_std: T::of(0.1),
                minibatch: 8,
                true_weights: None,
            },
            dim: 20,
            seed,
        }
    }

    pub fn plateau(dim: usize, warmup_len: u64, spike_ticks: Vec<u64>, seed: u64) -> Self {
        Self {
            kind: ObjectiveKind::PlateauStream {
                warmup_len,
                spike_ticks,
            },
            dim,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.dim == 0 {
            return Err(Error::ZeroDimension);
        }
        match &self.kind {
            ObjectiveKind::DiagonalQuadratic { weights } => {
                if weights.len() != self.dim {
                    return Err(Error::DimensionMismatch {
                        what: "quadratic weights",
                        expected: self.dim,
                        got: weights.len(),
                    });
                }
                for (index, &w) in weights.iter().enumerate() {
                    if !(w.is_finite() && w > T::zero()) {
                        return Err(Error::NonPositiveWeight {
                            index,
                            value: w.to_f64().unwrap_or(f64::NAN),
                        });
                    }
                }
            }
            ObjectiveKind::StochasticLinearRegression {
                noise_std,
                minibatch,
                true_weights,
            } => {
                if !(noise_std.is_finite() && *noise_std >= T::zero()) {
                    return Err(Error::InvalidNoiseStd {
                        got: noise_std.to_f64().unwrap_or(f64::NAN),
                    });
                }
                if *minibatch == 0 {
                    return Err(Error::ZeroMinibatch);
                }
                if let Some(w) = true_weights {
                    if w.len() != self.dim {
                        return Err(Error::DimensionMismatch {
                            what: "true weights",
                            expected: self.dim,
                            got: w.len(),
                        });
                    }
                }
            }
            ObjectiveKind::PlateauStream {
                warmup_len,
                spike_ticks,
            } => {
                let mut previous = None;
                for &tick in spike_ticks {
                    let ascending = previous.is_none_or(|prev| tick > prev);
                    if tick < *warmup_len || !ascending {
                        return Err(Error::InvalidSpikeSchedule {
                            warmup_len: *warmup_len,
                            tick,
                        });
                    }
                    previous = Some(tick);
                }
            }
        }
        Ok(())
    }
}
