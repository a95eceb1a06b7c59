//! Special functions and seeded sampling.

mod beta;
mod gamma;
mod sampling;
mod student_t;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

pub use beta::reg_inc_beta;
pub use gamma::{erfc, ln_gamma, normal_cdf};
pub use sampling::{
    check_mixture, sample_bernoulli, sample_mixture, sample_normal, sample_scaled_bernoulli,
    scaled_bernoulli_skewness, SeededStream,
};
pub use student_t::student_t_cdf;

/// A value in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Probability(f64);

impl Probability {
    pub fn new(value: f64) -> Result<Self> {
        if (0.0..=1.0).contains(&value) {
            Ok(Self(value))
        } else {
            domain(format!("{value} is not a probability"))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for Probability {
    type Error = crate::Error;

    fn try_from(value: f64) -> Result<Self> {
        Self::new(value)
    }
}

impl From<Probability> for f64 {
    fn from(p: Probability) -> f64 {
        p.0
    }
}
