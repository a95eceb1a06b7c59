use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::special::{
    check_mixture, sample_bernoulli, sample_mixture, sample_normal, sample_scaled_bernoulli, SeededStream,
};

/// A sampling model with known parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    Normal {
        mu: f64,
        sigma: f64,
    },
    Bernoulli {
        p: f64,
    },
    /// Takes `mean / p` with probability `p`, zero otherwise.
    ScaledBernoulli {
        p: f64,
        mean: f64,
    },
    GaussianMixture {
        weights: Vec<f64>,
        mus: Vec<f64>,
        sigmas: Vec<f64>,
    },
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Normal { .. } => "normal",
            Family::Bernoulli { .. } => "bernoulli",
            Family::ScaledBernoulli { .. } => "scaled_bernoulli",
            Family::GaussianMixture { .. } => "gaussian_mixture",
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Family::Normal { mu, sigma } => {
                if !mu.is_finite() || !(*sigma > 0.0 && sigma.is_finite()) {
                    return domain("normal target needs finite mu and sigma > 0");
                }
            }
            Family::Bernoulli { p } => {
                if !(0.0..=1.0).contains(p) {
                    return domain(format!("Bernoulli rate {p} is outside [0, 1]"));
                }
            }
            Family::ScaledBernoulli { p, mean } => {
                if !(*p > 0.0 && *p <= 1.0) {
                    return domain(format!("scaled Bernoulli needs 0 < p <= 1, got {p}"));
                }
                if !(*mean > 0.0 && mean.is_finite()) {
                    return domain("scaled Bernoulli mean must be positive");
                }
            }
            Family::GaussianMixture { weights, mus, sigmas } => check_mixture(weights, mus, sigmas)?,
        }
        Ok(())
    }

    /// The population quantity each family is naturally inferred on: the
    /// mean for continuous and scaled families, the rate for Bernoulli.
    pub fn natural_truth(&self) -> f64 {
        match self {
            Family::Normal { mu, .. } => *mu,
            Family::Bernoulli { p } => *p,
            Family::ScaledBernoulli { mean, .. } => *mean,
            Family::GaussianMixture { weights, mus, .. } => weights.iter().zip(mus).map(|(w, m)| w * m).sum(),
        }
    }

    /// The family with its swept parameter set to `theta`: the mean of a
    /// normal, the rate of a Bernoulli, and the rate `p` of a scaled
    /// Bernoulli (whose mean stays fixed).
    pub fn with_parameter(&self, theta: f64) -> Result<Family> {
        let f = match self {
            Family::Normal { sigma, .. } => Family::Normal { mu: theta, sigma: *sigma },
            Family::Bernoulli { .. } => Family::Bernoulli { p: theta },
            Family::ScaledBernoulli { mean, .. } => Family::ScaledBernoulli { p: theta, mean: *mean },
            Family::GaussianMixture { .. } => {
                return domain("gaussian_mixture has no single sweepable parameter")
            }
        };
        f.validate()?;
        Ok(f)
    }

    pub fn draw(&self, stream: &SeededStream, n: usize) -> Result<Vec<f64>> {
        match self {
            Family::Normal { mu, sigma } => sample_normal(stream, *mu, *sigma, n),
            Family::Bernoulli { p } => sample_bernoulli(stream, *p, n),
            Family::ScaledBernoulli { p, mean } => sample_scaled_bernoulli(stream, *p, *mean, n),
            Family::GaussianMixture { weights, mus, sigmas } => {
                sample_mixture(stream, weights, mus, sigmas, n)
            }
        }
    }

    pub fn is_binary(&self) -> bool {
        matches!(self, Family::Bernoulli { .. })
    }
}

/// What a replicate's structure is evaluated at.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Truth {
    /// A fixed true parameter value.
    Parameter(f64),
    /// The next draw, `x_{n+1}`, from the same target.
    Predictive,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TargetSpec {
    family: Family,
    truth: Truth,
}

impl TargetSpec {
    pub fn new(family: Family, truth: Truth) -> Result<Self> {
        family.validate()?;
        if let Truth::Parameter(t) = truth {
            if !t.is_finite() {
                return domain("true parameter must be finite");
            }
        }
        Ok(Self { family, truth })
    }

    /// Target inferred on the family's natural parameter.
    pub fn inference(family: Family) -> Result<Self> {
        let t = family.natural_truth();
        Self::new(family, Truth::Parameter(t))
    }

    pub fn predictive(family: Family) -> Result<Self> {
        Self::new(family, Truth::Predictive)
    }

    pub fn normal(mu: f64, sigma: f64) -> Result<Self> {
        Self::inference(Family::Normal { mu, sigma })
    }

    pub fn bernoulli(p: f64) -> Result<Self> {
        Self::inference(Family::Bernoulli { p })
    }

    pub fn scaled_bernoulli(p: f64, mean: f64) -> Result<Self> {
        Self::inference(Family::ScaledBernoulli { p, mean })
    }

    pub fn mixture(weights: Vec<f64>, mus: Vec<f64>, sigmas: Vec<f64>) -> Result<Self> {
        Self::inference(Family::GaussianMixture { weights, mus, sigmas })
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn truth(&self) -> Truth {
        self.truth
    }

    pub fn is_predictive(&self) -> bool {
        self.truth == Truth::Predictive
    }
}
