//! Pure step transitions for every method in the family.
//!
//! Each stepper maps `(config, state, gradient)` to `(StepResult, next
//! state)` and never mutates its inputs. Powers and roots go through
//! `exp`/`ln` with the zero cases short-circuited, which stays accurate for
//! fractional exponents and avoids pow-of-negative pitfalls. Any magnitude
//! that leaves the representable range is reported as [`Error::Overflow`]
//! instead of silently poisoning the state with infinities.


use crate::config::{Method, OptimizerConfig};
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::state::{OptimizerState, StepResult};

/// |x|^p computed as exp(p * ln|x|), with |0|^p = 0.
pub(crate) fn abs_pow<T: Real>(x: T, p: T) -> T {
    if x == T::zero() {
        T::zero()
    } else {
        (p * x.abs().ln()).exp()
    }
}

/// x^(1/p) for x >= 0, computed as exp(ln(x) / p), with 0^(1/p) = 0.
pub(crate) fn root<T: Real>(x: T, p: T) -> T {
    debug_assert!(x >= T::zero());
    if x == T::zero() {
        T::zero()
    } else {
        (x.ln() / p).exp()
    }
}

fn check_gradient<T: Real>(state: &OptimizerState<T>, gradient: &[T]) -> Result<()> {
    if gradient.len() != state.dim() {
        return Err(Error::DimensionMismatch {
            expected: state.dim(),
            got: gradient.len(),
        });
    }
    for (index, &g) in gradient.iter().enumerate() {
        if !g.is_finite() {
            return Err(Error::NonFiniteGradient {
                index,
                value: g.to_f64().unwrap_or(f64::NAN),
            });
        }
    }
    Ok(())
}

/// -alpha * numerator / (epsilon + denom_root), with 0/0 defined as 0.
///
/// A zero denominator with a nonzero numerator would be an infinity; that
/// only happens outside the epsilon = 0 contract (gradients bounded away
/// from zero), so it is reported as overflow.
fn apply_update<T: Real>(
    index: usize,
    alpha: T,
    epsilon: T,
    numerator: T,
    denom_root: T,
) -> Result<T> {
    let denom = epsilon + denom_root;
    if denom == T::zero() {
        if numerator == T::zero() {
            return Ok(T::zero());
        }
        return Err(Error::Overflow { index });
    }
    let update = -(alpha * numerator / denom);
    if !update.is_finite() {
        return Err(Error::Overflow { index });
    }
    Ok(update)
}

/// One L^p Adam step:
/// m' = beta1 m + (1 - beta1) g, v' = beta2 v + (1 - beta2) |g|^p,
/// update = -alpha * m_hat / (epsilon + v_hat^(1/p)), where the hats are
/// the (1 - beta^t) bias corrections when enabled.
pub fn step_lp_adam<T: Real>(
    config: &OptimizerConfig<T>,
    state: &OptimizerState<T>,
    gradient: &[T],
) -> Result<(StepResult<T>, OptimizerState<T>)> {
    debug_assert_eq!(config.method, Method::LpAdam);
    check_gradient(state, gradient)?;

    let one = T::one();
    let t_next = state.t() + 1;
    let dim = state.dim();

    let mut m = Vec::with_capacity(dim);
    let mut v = Vec::with_capacity(dim);
    for (i, &g) in gradient.iter().enumerate() {
        m.push(config.beta1 * state.m()[i] + (one - config.beta1) * g);
        let g_pow = abs_pow(g, config.p);
        if !g_pow.is_finite() {
            return Err(Error::Overflow { index: i });
        }
        v.push(config.beta2 * state.v()[i] + (one - config.beta2) * g_pow);
    }

    let (m_corr, v_corr) = if config.bias_correction {
        let t = T::of(t_next as f64);
        (one - config.beta1.powf(t), one - config.beta2.powf(t))
    } else {
        (one, one)
    };

    let mut update = Vec::with_capacity(dim);
    for i in 0..dim {
        let m_hat = m[i] / m_corr;
        let v_hat = v[i] / v_corr;
        update.push(apply_update(
            i,
            config.alpha,
            config.epsilon,
            m_hat,
            root(v_hat, config.p),
        )?);
    }

    Ok((
        StepResult::from_update(update),
        OptimizerState::advanced(t_next, m, v),
    ))
}

/// One L^p AdaGrad step: v' = v + |g|^p (cumulative, no decay), update =
/// -alpha * g / (epsilon + v'^(1/p)). No momentum, no bias correction.
pub fn step_lp_adagrad<T: Real>(
    config: &OptimizerConfig<T>,
    state: &OptimizerState<T>,
    gradient: &[T],
) -> Result<(StepResult<T>, OptimizerState<T>)> {
    debug_assert_eq!(config.method, Method::LpAdaGrad);
    check_gradient(state, gradient)?;

    let dim = state.dim();
    let mut v = Vec::with_capacity(dim);
    for (i, &g) in gradient.iter().enumerate() {
        let g_pow = abs_pow(g, config.p);
        if !g_pow.is_finite() {
            return Err(Error::Overflow { index: i });
        }
        let next = state.v()[i] + g_pow;
        if !next.is_finite() {
            return Err(Error::Overflow { index: i });
        }
        v.push(next);
    }

    let mut update = Vec::with_capacity(dim);
    for i in 0..dim {
        update.push(apply_update(
            i,
            config.alpha,
            config.epsilon,
            gradient[i],
            root(v[i], config.p),
        )?);
    }

    Ok((
        StepResult::from_update(update),
        OptimizerState::advanced(state.t() + 1, state.m().to_vec(), v),
    ))
}

/// One L^p RMSProp step: v' = beta2 v + (1 - beta2) |g|^p, update =
/// -alpha * g / (epsilon + v'^(1/p)). No momentum, no bias correction.
pub fn step_lp_rmsprop<T: Real>(
    config: &OptimizerConfig<T>,
    state: &OptimizerState<T>,
    gradient: &[T],
) -> Result<(StepResult<T>, OptimizerState<T>)> {
    debug_assert_eq!(config.method, Method::LpRmsProp);
    check_gradient(state, gradient)?;

    let one = T::one();
    let dim = state.dim();
    let mut v = Vec::with_capacity(dim);
    for (i, &g) in gradient.iter().enumerate() {
        let g_pow = abs_pow(g, config.p);
        if !g_pow.is_finite() {
            return Err(Error::Overflow { index: i });
        }
        v.push(config.beta2 * state.v()[i] + (one - config.beta2) * g_pow);
    }

    let mut update = Vec::with_capacity(dim);
    for i in 0..dim {
        update.push(apply_update(
            i,
            config.alpha,
            config.epsilon,
            gradient[i],
            root(v[i], config.p),
        )?);
    }

    Ok((
        StepResult::from_update(update),
        OptimizerState::advanced(state.t() + 1, state.m().to_vec(), v),
    ))
}

/// One AdaMax step: m' as in Adam, u' = max(beta2 u, |g|) element-wise,
/// update = -alpha * m_hat / (epsilon + u'). Bias correction applies to the
/// first moment only; the running max needs none.
pub fn step_adamax<T: Real>(
    config: &OptimizerConfig<T>,
    state: &OptimizerState<T>,
    gradient: &[T],
) -> Result<(StepResult<T>, OptimizerState<T>)> {
    debug_assert_eq!(config.method, Method::AdaMax);
    check_gradient(state, gradient)?;

    let one = T::one();
    let t_next = state.t() + 1;
    let dim = state.dim();

    let mut m = Vec::with_capacity(dim);
    let mut u = Vec::with_capacity(dim);
    for (i, &g) in gradient.iter().enumerate() {
        m.push(config.beta1 * state.m()[i] + (one - config.beta1) * g);
        u.push((config.beta2 * state.v()[i]).max(g.abs()));
    }

    let m_corr = if config.bias_correction {
        one - config.beta1.powf(T::of(t_next as f64))
    } else {
        one
    };

    let mut update = Vec::with_capacity(dim);
    for i in 0..dim {
        update.push(apply_update(
            i,
            config.alpha,
            config.epsilon,
            m[i] / m_corr,
            u[i],
        )?);
    }

    Ok((
        StepResult::from_update(update),
        OptimizerState::advanced(t_next, m, u),
    ))
}

/// One SGD step: update = -alpha * g. The statistic vectors are untouched.
pub fn step_sgd<T: Real>(
    config: &OptimizerConfig<T>,
    state: &OptimizerState<T>,
    gradient: &[T],
) -> Result<(StepResult<T>, OptimizerState<T>)> {
    debug_assert_eq!(config.method, Method::Sgd);
    check_gradient(state, gradient)?;

    let update: Vec<T> = gradient.iter().map(|&g| -(config.alpha * g)).collect();
    Ok((
        StepResult::from_update(update),
        OptimizerState::advanced(state.t() + 1, state.m().to_vec(), state.v().to_vec()),
    ))
}

/// Dispatches one step according to `config.method`.
pub fn step<T: Real>(
    config: &OptimizerConfig<T>,
    state: &OptimizerState<T>,
    gradient: &[T],
) -> Result<(StepResult<T>, OptimizerState<T>)> {
    match config.method {
        Method::LpAdam => step_lp_adam(config, state, gradient),
        Method::LpAdaGrad => step_lp_adagrad(config, state, gradient),
        Method::LpRmsProp => step_lp_rmsprop(config, state, gradient),
        Method::AdaMax => step_adamax(config, state, gradient),
        Method::Sgd => step_sgd(config, state, gradient),
    }
}

#[cfg(test)]
mod tests {
    use approx::assert_relative_eq;

    use super::*;

    fn drive<T: Real>(
        config: &OptimizerConfig<T>,
        dim: usize,
        stream: impl IntoIterator<Item = Vec<T>>,
    ) -> Vec<StepResult<T>> {
        let mut state = OptimizerState::new(dim).unwrap();
        let mut results = Vec::new();
        for g in stream {
            let (result, next) = step(config, &state, &g).unwrap();
            results.push(result);
            state = next;
        }
        results
    }

    #[test]
    fn lp_adam_first_step_is_signed_alpha_when_epsilon_is_zero() {
        let config = OptimizerConfig::new(Method::LpAdam, 3.0, 0.05).with_epsilon(0.0);
        let state = OptimizerState::new(3).unwrap();
        let g = [0.7f64, -1.3, 2.5];
        let (result, next) = step_lp_adam(&config, &state, &g).unwrap();
        for (u, gi) in result.update.iter().zip(&g) {
            assert_relative_eq!(*u, -0.05 * gi.signum(), max_relative = 1e-12);
        }
        assert_eq!(next.t(), 1);
    }

    #[test]
    fn lp_adam_zero_stream_stays_at_zero() {
        let config = OptimizerConfig::new(Method::LpAdam, 2.0, 1e-3);
        for result in drive(&config, 2, vec![vec![0.0; 2]; 20]) {
            assert_eq!(result.update, vec![0.0, 0.0]);
        }
        // Same with epsilon = 0: the 0/0 case is defined as a zero update.
        let raw = config.with_epsilon(0.0);
        for result in drive(&raw, 2, vec![vec![0.0; 2]; 5]) {
            assert_eq!(result.update, vec![0.0, 0.0]);
        }
    }

    #[test]
    fn lp_adam_spike_after_long_zero_run_hits_the_max_step() {
        // 1e4 zero-gradient steps and then a spike: the step magnitude is
        // alpha * (1 - beta1) / (1 - beta2)^(1/p), i.e. sqrt(10) * alpha at p = 2.
        let alpha = 1e-3;
        let config = OptimizerConfig::new(Method::LpAdam, 2.0, alpha);
        let mut state = OptimizerState::new(2).unwrap();
        let zeros = [0.0, 0.0];
        for _ in 0..10_000 {
            let (_, next) = step_lp_adam(&config, &state, &zeros).unwrap();
            state = next;
        }
        let (result, _) = step_lp_adam(&config, &state, &[0.37, -4.2]).unwrap();
        assert_relative_eq!(
            result.step_inf_norm,
            10f64.sqrt() * alpha,
            max_relative = 1e-3
        );
    }

    #[test]
    fn lp_adam_rejects_bad_gradients() {
        let config = OptimizerConfig::new(Method::LpAdam, 2.0, 1e-3);
        let state = OptimizerState::new(2).unwrap();
        assert_eq!(
            step_lp_adam(&config, &state, &[1.0]),
            Err(Error::DimensionMismatch { expected: 2, got: 1 })
        );
        assert!(matches!(
            step_lp_adam(&config, &state, &[1.0, f64::NAN]),
            Err(Error::NonFiniteGradient { index: 1, .. })
        ));
        assert!(matches!(
            step_lp_adam(&config, &state, &[f64::INFINITY, 1.0]),
            Err(Error::NonFiniteGradient { index: 0, .. })
        ));
    }

    #[test]
    fn lp_adam_reports_overflow_instead_of_storing_infinities() {
        // |1e300|^6 is far beyond f64 range.
        let config = OptimizerConfig::new(Method::LpAdam, 6.0, 1e-3);
        let state = OptimizerState::new(1).unwrap();
        assert_eq!(
            step_lp_adam(&config, &state, &[1e300]),
            Err(Error::Overflow { index: 0 })
        );
    }

    #[test]
    fn lp_adagrad_constant_gradient_steps_shrink_as_t_to_the_minus_inv_p() {
        for p in [1.2, 2.0, 6.0] {
            let alpha = 0.05;
            let config = OptimizerConfig::new(Method::LpAdaGrad, p, alpha).with_epsilon(0.0);
            let results = drive(&config, 2, vec![vec![0.8, -1.7]; 40]);
            for (k, result) in results.iter().enumerate() {
                let t = (k + 1) as f64;
                let expected = alpha / t.powf(1.0 / p);
                for u in &result.update {
                    assert_relative_eq!(u.abs(), expected, max_relative = 1e-12);
                }
            }
        }
    }

    #[test]
    fn lp_adagrad_at_p2_divides_by_root_of_summed_squares() {
        let alpha = 0.1;
        let config = OptimizerConfig::new(Method::LpAdaGrad, 2.0, alpha).with_epsilon(0.0);
        let stream = [vec![0.5, -1.0], vec![2.0, 0.25], vec![-1.5, 3.0]];
        let mut sums = [0.0f64; 2];
        let mut state = OptimizerState::new(2).unwrap();
        for g in &stream {
            let (result, next) = step_lp_adagrad(&config, &state, g).unwrap();
            for i in 0..2 {
                sums[i] += g[i] * g[i];
                assert_relative_eq!(
                    result.update[i],
                    -alpha * g[i] / sums[i].sqrt(),
                    max_relative = 1e-12
                );
            }
            state = next;
        }
    }

    #[test]
    fn lp_adagrad_updates_are_invariant_to_positive_diagonal_rescaling() {
        let config = OptimizerConfig::new(Method::LpAdaGrad, 1.5, 0.05).with_epsilon(0.0);
        let scale = [3.0, 0.04];
        let stream: Vec<Vec<f64>> = (0..30)
            .map(|k| vec![(k as f64 * 0.77).sin() + 1.2, (k as f64 * 0.31).cos() - 1.4])
            .collect();
        let scaled: Vec<Vec<f64>> = stream
            .iter()
            .map(|g| g.iter().zip(&scale).map(|(x, c)| x * c).collect())
            .collect();
        let base = drive(&config, 2, stream);
        let rescaled = drive(&config, 2, scaled);
        for (a, b) in base.iter().zip(&rescaled) {
            for (x, y) in a.update.iter().zip(&b.update) {
                assert_relative_eq!(x, y, max_relative = 1e-10);
            }
        }
    }

    #[test]
    fn lp_rmsprop_equals_lp_adam_with_zero_beta1_and_no_correction() {
        let rmsprop = OptimizerConfig::new(Method::LpRmsProp, 3.0, 0.01);
        let adam = OptimizerConfig {
            method: Method::LpAdam,
            beta1: 0.0,
            bias_correction: false,
            ..rmsprop
        };
        let stream: Vec<Vec<f64>> = (0..50)
            .map(|k| vec![(k as f64 * 1.3).sin() * 2.0, 0.5 + (k % 7) as f64])
            .collect();
        let a = drive(&rmsprop, 2, stream.clone());
        let b = drive(&adam, 2, stream);
        // Identical formulas, so the sequences must match bit for bit.
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.update, y.update);
        }
    }

    #[test]
    fn lp_rmsprop_first_step_magnitude_is_alpha_over_root_one_minus_beta2() {
        let alpha = 0.02f64;
        for p in [1.2, 2.0, 6.0] {
            let config = OptimizerConfig::new(Method::LpRmsProp, p, alpha).with_epsilon(0.0);
            let state = OptimizerState::new(2).unwrap();
            let (result, _) = step_lp_rmsprop(&config, &state, &[0.3, -7.0]).unwrap();
            let expected = alpha / (1.0 - config.beta2).powf(1.0 / p);
            for u in &result.update {
                assert_relative_eq!(u.abs(), expected, max_relative = 1e-12);
            }
        }
    }

    #[test]
    fn adamax_constant_gradient_step_tends_to_alpha() {
        let alpha = 0.01f64;
        let config = OptimizerConfig::new(Method::AdaMax, 2.0, alpha).with_epsilon(0.0);
        let results = drive(&config, 2, vec![vec![1.3, -0.4]; 300]);
        let last = results.last().unwrap();
        for u in &last.update {
            assert_relative_eq!(u.abs(), alpha, max_relative = 1e-9);
        }
    }

    #[test]
    fn adamax_running_max_never_drops_below_its_decayed_self() {
        let config = OptimizerConfig::new(Method::AdaMax, 2.0, 0.01);
        let mut state = OptimizerState::new(3).unwrap();
        let mut rolling = 1u64;
        for _ in 0..100 {
            rolling = rolling.wrapping_mul(6364136223846793005).wrapping_add(1);
            let x = (rolling >> 11) as f64 / (1u64 << 53) as f64;
            let g = vec![x * 2.0 - 1.0, 1.5, x];
            let prev = state.v().to_vec();
            let (_, next) = step_adamax(&config, &state, &g).unwrap();
            for i in 0..3 {
                assert!(next.v()[i] >= config.beta2 * prev[i]);
                assert!(next.v()[i] >= g[i].abs());
            }
            state = next;
        }
    }

    #[test]
    fn lp_adam_with_reparameterized_beta2_approaches_adamax_as_p_grows() {
        // With beta2 -> beta2^p, L^p Adam's denominator tends to AdaMax's
        // running max as p -> infinity; the per-step gap must shrink in p.
        let alpha = 1e-3;
        let beta2 = 0.999f64;
        let stream: Vec<Vec<f64>> = (0..120)
            .map(|k| {
                let a = 0.5 + 1.5 * (0.5 + 0.5 * ((k * 37 % 100) as f64 / 100.0));
                let b = 0.5 + 1.5 * ((k * 59 % 100) as f64 / 100.0);
                vec![a, -b]
            })
            .collect();

        let adamax = OptimizerConfig::new(Method::AdaMax, 2.0, alpha).with_epsilon(0.0);
        let reference = drive(&adamax, 2, stream.clone());

        let mut worst = Vec::new();
        for p in [16.0, 64.0, 256.0] {
            let config = OptimizerConfig::new(Method::LpAdam, p, alpha)
                .with_beta2(beta2.powf(p))
                .with_epsilon(0.0)
                .validate()
                .unwrap();
            let candidate = drive(&config, 2, stream.clone());
            let mut max_rel = 0.0f64;
            for (a, b) in reference.iter().zip(&candidate) {
                for (x, y) in a.update.iter().zip(&b.update) {
                    let scale = x.abs().max(y.abs());
                    if scale > 0.0 {
                        max_rel = max_rel.max((x - y).abs() / scale);
                    }
                }
            }
            worst.push(max_rel);
        }
        assert!(worst[0] > worst[1] && worst[1] > worst[2], "gaps {worst:?}");
        assert!(worst[2] < 0.01, "p = 256 gap {} not below 1%", worst[2]);
    }

    #[test]
    fn sgd_matches_the_definition() {
        let config = OptimizerConfig::new(Method::Sgd, 2.0, 0.1);
        let state = OptimizerState::new(2).unwrap();
        let (result, next) = step_sgd(&config, &state, &[1.0, -2.0]).unwrap();
        assert_eq!(result.update, vec![-0.1, 0.2]);
        assert_eq!(next.t(), 1);
        assert_eq!(next.m(), state.m());
        assert_eq!(next.v(), state.v());

        let (zero, _) = step_sgd(&config, &state, &[0.0, 0.0]).unwrap();
        assert_eq!(zero.update, vec![0.0, 0.0]);
    }

    #[test]
    fn sgd_updates_scale_exactly_linearly_in_alpha() {
        let g = [0.37, -12.5, 3.125e-3];
        let single = OptimizerConfig::new(Method::Sgd, 2.0, 0.05);
        let double = OptimizerConfig::new(Method::Sgd, 2.0, 0.1);
        let state = OptimizerState::new(3).unwrap();
        let (a, _) = step_sgd(&single, &state, &g).unwrap();
        let (b, _) = step_sgd(&double, &state, &g).unwrap();
        for (x, y) in a.update.iter().zip(&b.update) {
            assert_eq!(*y, 2.0 * x);
        }
    }

    #[test]
    fn dispatcher_routes_every_method() {
        let state = OptimizerState::new(1).unwrap();
        for method in [
            Method::LpAdam,
            Method::LpAdaGrad,
            Method::LpRmsProp,
            Method::AdaMax,
            Method::Sgd,
        ] {
            let config = OptimizerConfig::new(method, 2.0, 1e-2);
            let (result, next) = step(&config, &state, &[1.0]).unwrap();
            assert!(result.update[0] < 0.0, "{method} moved the wrong way");
            assert_eq!(next.t(), 1);
        }
    }

    #[test]
    fn steppers_do_not_mutate_their_inputs() {
        let config = OptimizerConfig::new(Method::LpAdam, 2.0, 1e-3);
        let state = OptimizerState::new(2).unwrap();
        let before = state.clone();
        let _ = step(&config, &state, &[1.0, 2.0]).unwrap();
        assert_eq!(state, before);
    }

    #[test]
    fn steppers_work_in_single_precision() {
        let config = OptimizerConfig::<f32>::new(Method::LpAdam, 3.0, 0.05).with_epsilon(0.0);
        let state = OptimizerState::<f32>::new(2).unwrap();
        let (result, _) = step_lp_adam(&config, &state, &[2.0f32, -0.5]).unwrap();
        for (u, g) in result.update.iter().zip([2.0f32, -0.5]) {
            assert_relative_eq!(*u, -0.05 * g.signum(), max_relative = 1e-5);
        }
    }
}
