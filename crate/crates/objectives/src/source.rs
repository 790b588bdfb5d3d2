use optim_core::Real;

use crate::error::{Error, Result};
use crate::rng::SplitMix64;
use crate::spec::{ObjectiveKind, ObjectiveSpec};

/// A live gradient stream: the spec plus the RNG state it owns.
///
/// Construction resolves everything the seed determines (currently the
/// regression true weights, drawn as standard normals before any minibatch
/// is sampled), so two sources built from the same `(spec, seed)` replay
/// the exact same stream.
#[derive(Debug, Clone)]
pub struct GradientSource<T> {
    spec: ObjectiveSpec<T>,
    rng: SplitMix64,
    tick: u64,
    true_weights: Vec<T>,
}

impl<T: Real> GradientSource<T> {
    pub fn new(spec: &ObjectiveSpec<T>) -> Result<Self> {
        Self::with_seed(spec, spec.seed)
    }

    /// Builds the source with an explicit seed, overriding `spec.seed`.
    /// Used by the harness to compose the run seed with the objective seed.
    pub fn with_seed(spec: &ObjectiveSpec<T>, seed: u64) -> Result<Self> {
        spec.validate()?;
        let mut rng = SplitMix64::new(seed);
        let true_weights = match &spec.kind {
            ObjectiveKind::StochasticLinearRegression { true_weights, .. } => match true_weights {
                Some(w) => w.clone(),
                // Drawn uniformly from [-1, 1) so any constant-rate run of a
                // couple thousand steps can reach them from the origin.
                None => (0..spec.dim).map(|_| T::of(rng.next_in(-1.0, 1.0))).collect(),
            },
            _ => Vec::new(),
        };
        Ok(Self {
            spec: spec.clone(),
            rng,
            tick: 0,
            true_weights,
        })
    }

    pub fn spec(&self) -> &ObjectiveSpec<T> {
        &self.spec
    }

    pub fn dim(&self) -> usize {
        self.spec.dim
    }

    /// Gradients emitted so far.
    pub fn tick(&self) -> u64 {
        self.tick
    }

    /// The resolved regression weights (empty for other kinds).
    pub fn true_weights(&self) -> &[T] {
        &self.true_weights
    }

    fn check_theta(&self, theta: &[T]) -> Result<()> {
        if theta.len() != self.spec.dim {
            return Err(Error::DimensionMismatch {
                what: "parameter vector",
                expected: self.spec.dim,
                got: theta.len(),
            });
        }
        Ok(())
    }

    /// Noise-free loss at `theta`, for reporting.
    ///
    /// DiagonalQuadratic: 1/2 sum a_i theta_i^2. Regression: the expected
    /// full-data mean squared error ||theta - w*||^2 (standard normal
    /// features, noise excluded). PlateauStream has no objective value and
    /// reports zero.
    pub fn eval_loss(&self, theta: &[T]) -> Result<T> {
        self.check_theta(theta)?;
        match &self.spec.kind {
            ObjectiveKind::DiagonalQuadratic { weights } => {
                let mut acc = T::zero();
                for (a, x) in weights.iter().zip(theta) {
                    acc = acc + *a * *x * *x;
                }
                Ok(T::of(0.5) * acc)
            }
            ObjectiveKind::StochasticLinearRegression { .. } => {
                let mut acc = T::zero();
                for (x, w) in theta.iter().zip(&self.true_weights) {
                    let d = *x - *w;
                    acc = acc + d * d;
                }
                Ok(acc)
            }
            ObjectiveKind::PlateauStream { .. } => Ok(T::zero()),
        }
    }

    /// Emits the next gradient and advances the stream.
    pub fn grad(&mut self, theta: &[T]) -> Result<Vec<T>> {
        self.check_theta(theta)?;
        let g = match &self.spec.kind {
            ObjectiveKind::DiagonalQuadratic { weights } => {
                weights.iter().zip(theta).map(|(a, x)| *a * *x).collect()
            }
            ObjectiveKind::StochasticLinearRegression {
                noise_std,
                minibatch,
                ..
            } => {
                let dim = self.spec.dim;
                let batch = *minibatch;
                let sigma = noise_std.to_f64().unwrap_or(0.0);
                let mut grad = vec![T::zero(); dim];
                let scale = T::of(2.0 / batch as f64);
                for _ in 0..batch {
                    let features: Vec<T> =
                        (0..dim).map(|_| T::of(self.rng.next_gaussian())).collect();
                    let noise = T::of(self.rng.next_gaussian() * sigma);
                    let mut residual = -noise;
                    for ((x, w), f) in theta.iter().zip(&self.true_weights).zip(&features) {
                        residual = residual + (*x - *w) * *f;
                    }
                    for (g, f) in grad.iter_mut().zip(&features) {
                        *g = *g + scale * residual * *f;
                    }
                }
                grad
            }
            ObjectiveKind::PlateauStream {
                warmup_len,
                spike_ticks,
            } => {
                let active =
                    self.tick < *warmup_len || spike_ticks.binary_search(&self.tick).is_ok();
                if active {
                    (0..self.spec.dim)
                        .map(|_| T::of(self.rng.next_in(0.5, 2.0)))
                        .collect()
                } else {
                    vec![T::zero(); self.spec.dim]
                }
            }
        };
        self.tick += 1;
        Ok(g)
    }
}
