use optim_core::Real;

use crate::error::{Error, Result};

/// Weighted L^p magnitude: `(sum_i w_i |x_i|^e)^(1/e)`.
///
/// Weights are absorbed into the entries, i.e. this equals the plain L^e
/// norm of `(w_i^(1/e) x_i)`. With exponential weights `w_i` and any
/// q > e, the value is at least as large as the same expression at
/// exponent q with weights `w_i^(q/e)`.
pub fn weighted_norm<T: Real>(values: &[T], weights: &[T], exponent: T) -> Result<T> {
    if !(exponent.is_finite() && exponent > T::zero()) {
        return Err(Error::NonPositiveExponent {
            got: exponent.to_f64().unwrap_or(f64::NAN),
        });
    }
    if values.len() != weights.len() {
        return Err(Error::LengthMismatch {
            values: values.len(),
            weights: weights.len(),
        });
    }
    for (index, &w) in weights.iter().enumerate() {
        if !(w.is_finite() && w >= T::zero()) {
            return Err(Error::NegativeWeight {
                index,
                value: w.to_f64().unwrap_or(f64::NAN),
            });
        }
    }

    let mut acc = T::zero();
    for (&x, &w) in values.iter().zip(weights) {
        acc = acc + w * x.abs().powf(exponent);
    }
    if acc == T::zero() {
        return Ok(T::zero());
    }
    Ok(acc.powf(T::one() / exponent))
}

#[cfg(test)]
mod tests {
    use approx::assert_relative_eq;

    use super::*;

    #[test]
    fn unit_weights_at_exponent_two_give_the_euclidean_norm() {
        let values = [3.0, -4.0];
        let weights = [1.0, 1.0];
        assert_relative_eq!(
            weighted_norm(&values, &weights, 2.0).unwrap(),
            5.0,
            max_relative = 1e-15
        );
    }

    #[test]
    fn single_element_reweighting_is_an_equality_case() {
        // With n = 1 the p-norm and the reweighted q-norm both collapse to
        // w^(1/p) |x|, for any q >= p.
        let (x, w, p) = (0.73f64, 0.4f64, 1.5f64);
        for q in [1.5, 2.0, 4.0, 9.0] {
            let lhs = weighted_norm(&[x], &[w], p).unwrap();
            let rhs = weighted_norm(&[x], &[w.powf(q / p)], q).unwrap();
            assert_relative_eq!(lhs, rhs, max_relative = 1e-12);
            assert_relative_eq!(lhs, w.powf(1.0 / p) * x, max_relative = 1e-12);
        }
    }

    #[test]
    fn zero_vector_has_zero_norm_even_at_fractional_exponents() {
        assert_eq!(weighted_norm(&[0.0, 0.0], &[0.3, 0.7], 1.3).unwrap(), 0.0);
        assert_eq!(weighted_norm::<f64>(&[], &[], 2.0).unwrap(), 0.0);
    }

    #[test]
    fn invalid_inputs_are_rejected() {
        assert_eq!(
            weighted_norm(&[1.0], &[-0.1], 2.0).unwrap_err(),
            Error::NegativeWeight { index: 0, value: -0.1 }
        );
        assert!(matches!(
            weighted_norm(&[1.0], &[1.0], 0.0).unwrap_err(),
            Error::NonPositiveExponent { .. }
        ));
        assert!(matches!(
            weighted_norm(&[1.0, 2.0], &[1.0], 2.0).unwrap_err(),
            Error::LengthMismatch { .. }
        ));
    }
}
