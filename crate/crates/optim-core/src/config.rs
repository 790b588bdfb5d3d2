use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Optimizer family selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Method {
    /// Momentum over an EMA of |g|^p, optional bias correction.
    #[serde(rename = "lp-adam")]
    LpAdam,
    /// Cumulative sum of |g|^p, no momentum, no decay.
    #[serde(rename = "lp-adagrad")]
    LpAdaGrad,
    /// EMA of |g|^p, no momentum, no bias correction.
    #[serde(rename = "lp-rmsprop")]
    LpRmsProp,
    /// Decayed running max of |g| in the denominator; the p -> infinity limit.
    #[serde(rename = "adamax")]
    AdaMax,
    /// Plain stochastic gradient descent.
    #[serde(rename = "sgd")]
    Sgd,
}

impl Method {
    fn as_str(self) -> &'static str {
        match self {
            Method::LpAdam => "lp-adam",
            Method::LpAdaGrad => "lp-adagrad",
            Method::LpRmsProp => "lp-rmsprop",
            Method::AdaMax => "adamax",
            Method::Sgd => "sgd",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "lp-adam" => Ok(Method::LpAdam),
            "lp-adagrad" => Ok(Method::LpAdaGrad),
            "lp-rmsprop" => Ok(Method::LpRmsProp),
            "adamax" => Ok(Method::AdaMax),
            "sgd" => Ok(Method::Sgd),
            other => Err(format!(
                "unknown method `{other}` (expected lp-adam, lp-adagrad, lp-rmsprop, adamax, or sgd)"
            )),
        }
    }
}

/// Hyperparameter tuple shared by every optimizer in the family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound(deserialize = "T: Real + Deserialize<'de>"))]
pub struct OptimizerConfig<T> {
    pub method: Method,
    /// Exponent of the L^p norm. Any finite p > 0 is accepted; note that
    /// p < 1 is a quasi-norm regime where the usual norm-monotonicity
    /// arguments (which require proper norms) no longer apply.
    pub p: T,
    /// Learning rate, in parameter units per step.
    pub alpha: T,
    /// First-moment (momentum) decay, in [0, 1).
    pub beta1: T,
    /// Denominator-statistic decay, in (0, 1).
    pub beta2: T,
    /// Stability constant added outside the p-th root. epsilon = 0 is
    /// permitted but callers then must keep gradient magnitudes bounded
    /// away from zero (as the scale-invariance tests do).
    #[serde(default = "default_epsilon")]
    pub epsilon: T,
    /// Whether the (1 - beta^t) initialization-bias corrections are applied.
    /// Ignored by LpAdaGrad and LpRmsProp, which never bias-correct; AdaMax
    /// corrects the first moment only.
    pub bias_correction: bool,
}

fn default_epsilon<T: Real>() -> T {
    T::of(1e-8)
}

impl<T: Real> OptimizerConfig<T> {
    /// Creates a config with the recommended defaults: beta1 = 0.9,
    /// beta2 = 0.999, epsilon = 1e-8, and bias correction switched on for
    /// the methods that define it (LpAdam, AdaMax).
    pub fn new(method: Method, p: T, alpha: T) -> Self {
        Self {
            method,
            p,
            alpha,
            beta1: T::of(0.9),
            beta2: T::of(0.999),
            epsilon: default_epsilon(),
            bias_correction: matches!(method, Method::LpAdam | Method::AdaMax),
        }
    }

    pub fn with_beta1(mut self, beta1: T) -> Self {
        self.beta1 = beta1;
        self
    }

    pub fn with_beta2(mut self, beta2: T) -> Self {
        self.beta2 = beta2;
        self
    }

    pub fn with_epsilon(mut self, epsilon: T) -> Self {
        self.epsilon = epsilon;
        self
    }

    pub fn with_bias_correction(mut self, on: bool) -> Self {
        self.bias_correction = on;
        self
    }

    /// Checks every hyperparameter bound and returns the config unchanged
    /// if all of them hold.
    ///
    /// The beta2 > beta1^p constraint applies to LpAdam only: it is what
    /// keeps the plateau decay rate beta1 / beta2^(1/p) below one.
    pub fn validate(self) -> Result<Self> {
        let f = |x: T| x.to_f64().unwrap_or(f64::NAN);
        if !(self.p.is_finite() && self.p > T::zero()) {
            return Err(Error::InvalidP { got: f(self.p) });
        }
        if !(self.alpha.is_finite() && self.alpha > T::zero()) {
            return Err(Error::InvalidAlpha { got: f(self.alpha) });
        }
        if !(self.beta1.is_finite() && self.beta1 >= T::zero() && self.beta1 < T::one()) {
            return Err(Error::InvalidBeta1 { got: f(self.beta1) });
        }
        if !(self.beta2.is_finite() && self.beta2 > T::zero() && self.beta2 < T::one()) {
            return Err(Error::InvalidBeta2 { got: f(self.beta2) });
        }
        if !(self.epsilon.is_finite() && self.epsilon >= T::zero()) {
            return Err(Error::InvalidEpsilon { got: f(self.epsilon) });
        }
        if self.method == Method::LpAdam {
            let floor = self.beta1.powf(self.p);
            if self.beta2 <= floor {
                return Err(Error::NonDecayingBetaPair {
                    beta1: f(self.beta1),
                    beta2: f(self.beta2),
                    p: f(self.p),
                    floor: f(floor),
                });
            }
        }
        Ok(self)
    }
}

/// Starting learning rate recommended for a given exponent:
/// `10^-(1.5 + 3/p)`, chosen so that the maximum step size at the default
/// betas stays at the usual `10^-2.5` regardless of p.
pub fn recommended_lr<T: Real>(p: T) -> Result<T> {
    if !(p.is_finite() && p > T::zero()) {
        return Err(Error::InvalidP {
            got: p.to_f64().unwrap_or(f64::NAN),
        });
    }
    let exponent = -(T::of(1.5) + T::of(3.0) / p);
    Ok(T::of(10.0).powf(exponent))
}
