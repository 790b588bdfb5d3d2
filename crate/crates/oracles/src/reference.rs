use optim_core::{Method, OptimizerConfig, Real};

use crate::error::{Error, Result};

/// beta^t for a history length t. Histories are test-scale; anything past
/// i32 range has underflowed to zero for beta < 1 anyway.
fn beta_pow<T: Real>(beta: T, t: u64) -> T {
    beta.powi(t.min(i32::MAX as u64) as i32)
}

/// Update vector at step t computed from the full gradient history by
/// direct summation of the exponentially weighted series, with no use of
/// the recursive steppers. Serves as the independent ground truth in the
/// recursion-equivalence tests.
///
/// Per method the sums are:
/// LpAdam      m = (1-b1) sum b1^(t-i) g_i, v = (1-b2) sum b2^(t-i) |g_i|^p
/// LpRmsProp   numerator g_t,               v as above
/// LpAdaGrad   numerator g_t,               v = sum |g_i|^p
/// AdaMax      m as LpAdam,                 u = max_i b2^(t-i) |g_i|
/// Sgd         -alpha g_t
///
/// Terms are accumulated in descending weight order (oldest last) to keep
/// rounding drift down. Bias correction and the epsilon placement follow
/// the same policy as the steppers: LpAdaGrad and LpRmsProp never correct,
/// AdaMax corrects the first moment only, and epsilon is added outside the
/// p-th root with 0/0 defined as a zero update.
pub fn reference_step_expanded<T: Real>(
    history: &[Vec<T>],
    config: &OptimizerConfig<T>,
) -> Result<Vec<T>> {
    let config = config.validate()?;
    let t = history.len();
    if t == 0 {
        return Err(Error::EmptyHistory);
    }
    let dim = history[0].len();
    for (step, g) in history.iter().enumerate() {
        if g.len() != dim {
            return Err(Error::RaggedHistory {
                step: step + 1,
                expected: dim,
                got: g.len(),
            });
        }
    }

    let one = T::one();
    let last = &history[t - 1];

    // First moment and denominator statistic, summed most-recent-first.
    let mut m = vec![T::zero(); dim];
    let mut v = vec![T::zero(); dim];
    match config.method {
        Method::LpAdam | Method::LpRmsProp | Method::AdaMax => {
            let mut w1 = one; // beta1^(t-i)
            let mut w2 = one; // beta2^(t-i)
            for g in history.iter().rev() {
                for i in 0..dim {
                    m[i] = m[i] + w1 * g[i];
                    match config.method {
                        Method::AdaMax => v[i] = v[i].max(w2 * g[i].abs()),
                        _ => v[i] = v[i] + w2 * g[i].abs().powf(config.p),
                    }
                }
                w1 = w1 * config.beta1;
                w2 = w2 * config.beta2;
            }
            for i in 0..dim {
                m[i] = (one - config.beta1) * m[i];
                if config.method != Method::AdaMax {
                    v[i] = (one - config.beta2) * v[i];
                }
            }
        }
        Method::LpAdaGrad => {
            for g in history.iter().rev() {
                for i in 0..dim {
                    v[i] = v[i] + g[i].abs().powf(config.p);
                }
            }
        }
        Method::Sgd => {}
    }

    let (m_corr, v_corr) = if config.bias_correction {
        match config.method {
            Method::LpAdam => (
                one - beta_pow(config.beta1, t as u64),
                one - beta_pow(config.beta2, t as u64),
            ),
            Method::AdaMax => (one - beta_pow(config.beta1, t as u64), one),
            _ => (one, one),
        }
    } else {
        (one, one)
    };

    let mut update = Vec::with_capacity(dim);
    for i in 0..dim {
        let numerator = match config.method {
            Method::LpAdam | Method::AdaMax => m[i] / m_corr,
            Method::LpRmsProp | Method::LpAdaGrad | Method::Sgd => last[i],
        };
        if config.method == Method::Sgd {
            update.push(-(config.alpha * numerator));
            continue;
        }
        let denom_root = match config.method {
            Method::AdaMax => v[i],
            _ => (v[i] / v_corr).powf(one / config.p),
        };
        let denom = config.epsilon + denom_root;
        if denom == T::zero() {
            update.push(T::zero());
        } else {
            update.push(-(config.alpha * numerator / denom));
        }
    }
    Ok(update)
}
