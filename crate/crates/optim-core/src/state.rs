
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Per-run optimizer state: the iteration counter plus the two
/// per-dimension statistic vectors.
///
/// `m` is the first moment. `v` is the denominator statistic and its
/// meaning depends on the method: the EMA of |g|^p for LpAdam/LpRmsProp,
/// the running sum of |g|^p for LpAdaGrad, the decayed running max of |g|
/// for AdaMax, and unused (all zero) for SGD. Entries of `v` are never
/// negative.
#[derive(Debug, Clone, PartialEq)]
pub struct OptimizerState<T> {
    t: u64,
    m: Vec<T>,
    v: Vec<T>,
}

impl<T: Real> OptimizerState<T> {
    /// Fresh state at t = 0 with both statistic vectors all zero.
    pub fn new(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        Ok(Self {
            t: 0,
            m: vec![T::zero(); dim],
            v: vec![T::zero(); dim],
        })
    }

    pub(crate) fn advanced(t: u64, m: Vec<T>, v: Vec<T>) -> Self {
        debug_assert_eq!(m.len(), v.len());
        debug_assert!(v.iter().all(|&x| x >= T::zero()));
        Self { t, m, v }
    }

    /// Number of completed steps.
    pub fn t(&self) -> u64 {
        self.t
    }

    /// First-moment vector.
    pub fn m(&self) -> &[T] {
        &self.m
    }

    /// Denominator-statistic vector.
    pub fn v(&self) -> &[T] {
        &self.v
    }

    /// Problem dimension.
    pub fn dim(&self) -> usize {
        self.m.len()
    }
}

/// The applied update for one iteration plus its diagnostic magnitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct StepResult<T> {
    /// Vector added to the parameters.
    pub update: Vec<T>,
    /// max_i |update_i|
    pub step_inf_norm: T,
    /// Euclidean norm of the update.
    pub step_l2_norm: T,
}

impl<T: Real> StepResult<T> {
    pub(crate) fn from_update(update: Vec<T>) -> Self {
        let mut max_abs = T::zero();
        let mut sum_sq = T::zero();
        for &u in &update {
            max_abs = max_abs.max(u.abs());
            sum_sq = sum_sq + u * u;
        }
        Self {
            update,
            step_inf_norm: max_abs,
            step_l2_norm: sum_sq.sqrt(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn new_state_is_zeroed() {
        let state = OptimizerState::<f64>::new(2).unwrap();
        assert_eq!(state.t(), 0);
        assert_eq!(state.m(), &[0.0, 0.0]);
        assert_eq!(state.v(), &[0.0, 0.0]);

        let single = OptimizerState::<f64>::new(1).unwrap();
        assert_eq!((single.t(), single.m(), single.v()), (0, &[0.0][..], &[0.0][..]));
    }

    #[test]
    fn new_state_handles_large_dimensions() {
        let state = OptimizerState::<f64>::new(1_000_000).unwrap();
        assert_eq!(state.dim(), 1_000_000);
        assert!(state.m().iter().all(|&x| x == 0.0));
        assert!(state.v().iter().all(|&x| x == 0.0));
    }

    #[test]
    fn zero_dimension_is_rejected() {
        assert_eq!(OptimizerState::<f64>::new(0), Err(Error::ZeroDimension));
    }

    #[test]
    fn step_result_norms_are_consistent_with_the_update() {
        let result = StepResult::from_update(vec![3.0, -4.0]);
        assert_eq!(result.step_inf_norm, 4.0);
        assert_eq!(result.step_l2_norm, 5.0);

        let zero = StepResult::from_update(vec![0.0; 3]);
        assert_eq!(zero.step_inf_norm, 0.0);
        assert_eq!(zero.step_l2_norm, 0.0);
    }
}
