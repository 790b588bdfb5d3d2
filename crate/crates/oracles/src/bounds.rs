use optim_core::Real;

use crate::error::Result;

fn check_ranges<T: Real>(p: T, alpha: Option<T>, beta1: T, beta2: T) -> Result<()> {
    if !(p.is_finite() && p > T::zero()) {
        return Err(optim_core::Error::InvalidP {
            got: p.to_f64().unwrap_or(f64::NAN),
        }
        .into());
    }
    if let Some(a) = alpha {
        if !(a.is_finite() && a > T::zero()) {
            return Err(optim_core::Error::InvalidAlpha {
                got: a.to_f64().unwrap_or(f64::NAN),
            }
            .into());
        }
    }
    if !(beta1.is_finite() && beta1 >= T::zero() && beta1 < T::one()) {
        return Err(optim_core::Error::InvalidBeta1 {
            got: beta1.to_f64().unwrap_or(f64::NAN),
        }
        .into());
    }
    if !(beta2.is_finite() && beta2 > T::zero() && beta2 < T::one()) {
        return Err(optim_core::Error::InvalidBeta2 {
            got: beta2.to_f64().unwrap_or(f64::NAN),
        }
        .into());
    }
    Ok(())
}

/// Largest per-coordinate step the uncorrected optimizer can take, reached
/// by a spike after a long zero-gradient run:
/// `alpha (1 - beta1) / (1 - beta2)^(1/p)`.
pub fn max_step_bound<T: Real>(p: T, alpha: T, beta1: T, beta2: T) -> Result<T> {
    check_ranges(p, Some(alpha), beta1, beta2)?;
    Ok(alpha * (T::one() - beta1) / (T::one() - beta2).powf(T::one() / p))
}

/// Geometric rate at which updates shrink once gradients go quiet:
/// `beta1 / beta2^(1/p)`.
///
/// Deliberately accepts beta pairs that violate the LpAdam constraint so
/// the non-decaying regime (rate >= 1) can be computed and flagged.
pub fn inertia_decay_rate<T: Real>(p: T, beta1: T, beta2: T) -> Result<T> {
    check_ranges(p, None, beta1, beta2)?;
    Ok(beta1 / beta2.powf(T::one() / p))
}

/// The two closed-form step-size quantities for one hyperparameter tuple.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundReport<T> {
    pub p: T,
    pub alpha: T,
    pub beta1: T,
    pub beta2: T,
    /// Per-coordinate step ceiling (spike after zeros).
    pub max_step: T,
    /// Plateau decay factor per step.
    pub decay_rate: T,
}

impl<T: Real> BoundReport<T> {
    pub fn new(p: T, alpha: T, beta1: T, beta2: T) -> Result<Self> {
        Ok(Self {
            p,
            alpha,
            beta1,
            beta2,
            max_step: max_step_bound(p, alpha, beta1, beta2)?,
            decay_rate: inertia_decay_rate(p, beta1, beta2)?,
        })
    }

    /// Whether plateau updates actually shrink (rate < 1); false means the
    /// beta pair violates the beta2 > beta1^p constraint.
    pub fn decaying(&self) -> bool {
        self.decay_rate < T::one()
    }
}

#[cfg(test)]
mod tests {
    use approx::assert_relative_eq;

    use super::*;

    #[test]
    fn max_step_matches_the_geometric_table() {
        // At beta1 = 0.9, beta2 = 0.999 the max steps for
        // p = 1.2, 1.5, 2, 3, 6 form a geometric sequence with ratio sqrt(10).
        let alpha = 1e-3;
        let table = [
            (1.2, 10.0 * 10f64.sqrt()),
            (1.5, 10.0),
            (2.0, 10f64.sqrt()),
            (3.0, 1.0),
            (6.0, 0.1 * 10f64.sqrt()),
        ];
        for (p, factor) in table {
            let bound = max_step_bound(p, alpha, 0.9, 0.999).unwrap();
            assert_relative_eq!(bound, factor * alpha, max_relative = 1e-12);
        }
    }

    #[test]
    fn max_step_decreases_in_p_but_never_reaches_alpha_one_minus_beta1() {
        let alpha = 1.0;
        let floor = alpha * (1.0 - 0.9);
        let mut previous = f64::INFINITY;
        for p in [1.2, 1.5, 2.0, 3.0, 6.0, 100.0] {
            let bound = max_step_bound(p, alpha, 0.9, 0.999).unwrap();
            assert!(bound < previous, "bound not decreasing at p = {p}");
            assert!(bound > floor, "bound {bound} at p = {p} fell to the floor");
            previous = bound;
        }
    }

    #[test]
    fn decay_rate_matches_direct_evaluation() {
        assert_eq!(inertia_decay_rate(2.0, 0.0, 0.999).unwrap(), 0.0);
        assert_eq!(inertia_decay_rate(7.3, 0.0, 0.42).unwrap(), 0.0);

        let rate = inertia_decay_rate(2.0, 0.9, 0.999).unwrap();
        assert_relative_eq!(rate, 0.9 / 0.999f64.sqrt(), max_relative = 1e-15);
        assert_relative_eq!(rate, 0.900450, max_relative = 1e-6);
    }

    #[test]
    fn non_decaying_beta_pairs_are_flagged() {
        // 0.9 > 0.5^(1/6), so a plateau would grow instead of decay.
        let report = BoundReport::new(6.0, 1e-3, 0.9, 0.5).unwrap();
        assert!(report.decay_rate > 1.0);
        assert!(!report.decaying());
        assert_relative_eq!(
            report.decay_rate,
            0.9 / 0.5f64.powf(1.0 / 6.0),
            max_relative = 1e-15
        );

        let healthy = BoundReport::new(6.0, 1e-3, 0.9, 0.999).unwrap();
        assert!(healthy.decaying());
    }

    #[test]
    fn invalid_ranges_are_rejected() {
        assert!(max_step_bound(0.0, 1e-3, 0.9, 0.999).is_err());
        assert!(max_step_bound(2.0, 0.0, 0.9, 0.999).is_err());
        assert!(max_step_bound(2.0, 1e-3, 1.0, 0.999).is_err());
        assert!(max_step_bound(2.0, 1e-3, 0.9, 1.0).is_err());
        assert!(inertia_decay_rate(-2.0, 0.9, 0.999).is_err());
        assert!(inertia_decay_rate(2.0, 0.9, 0.0).is_err());
    }
}
