//! Empirical coverage curves and their evaluation.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

/// A distribution of required-confidence values that can be read as a
/// coverage curve `S(α) = P(required <= α)`.
pub trait CoverageCurve {
    /// Coverage at `alpha`; NEVER outcomes never count, even at `alpha = 1`.
    fn eval(&self, alpha: f64) -> f64;

    /// Monte Carlo replicate count, `None` for exact curves.
    fn replicates(&self) -> Option<usize>;

    /// Probability mass of NEVER outcomes.
    fn never_fraction(&self) -> f64;

    /// Distinct finite required-confidence values, ascending.
    fn support(&self) -> Vec<f64>;
}

/// Sorted required-confidence values from `m` replicates plus the count of
/// replicates no confidence level could cover.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SinghCurve {
    required: Vec<f64>,
    never_count: usize,
}

impl SinghCurve {
    /// Builds a curve from per-replicate outcomes, `None` meaning NEVER.
    pub fn from_outcomes<I: IntoIterator<Item = Option<f64>>>(outcomes: I) -> Result<Self> {
        let mut required = Vec::new();
        let mut never_count = 0;
        for o in outcomes {
            match o {
                Some(v) => required.push(v),
                None => never_count += 1,
            }
        }
        required.sort_by(f64::total_cmp);
        Self::from_parts(required, never_count)
    }

    /// Builds a curve from already sorted values.
    pub fn from_parts(required: Vec<f64>, never_count: usize) -> Result<Self> {
        if required.is_empty() && never_count == 0 {
            return domain("a Singh curve needs at least one replicate");
        }
        if required.iter().any(|v| !(0.0..=1.0).contains(v)) {
            return domain("required confidence values must lie in [0, 1]");
        }
        if required.windows(2).any(|w| w[0] > w[1]) {
            return domain("required confidence values must be sorted");
        }
        Ok(Self { required, never_count })
    }

    pub fn required(&self) -> &[f64] {
        &self.required
    }

    pub fn never_count(&self) -> usize {
        self.never_count
    }

    pub fn m(&self) -> usize {
        self.required.len() + self.never_count
    }

    /// The `m` order statistics with NEVER sorted above every finite value.
    pub fn order_statistics(&self) -> impl Iterator<Item = f64> + '_ {
        self.required.iter().copied().chain(std::iter::repeat_n(f64::INFINITY, self.never_count))
    }

    pub(crate) fn from_order_statistics(stats: Vec<f64>) -> Result<Self> {
        let never = stats.iter().filter(|v| v.is_infinite()).count();
        let finite: Vec<f64> = stats.into_iter().filter(|v| v.is_finite()).collect();
        Self::from_parts(finite, never)
    }
}

impl CoverageCurve for SinghCurve {
    fn eval(&self, alpha: f64) -> f64 {
        if alpha.is_nan() {
            return 0.0;
        }
        let covered = self.required.partition_point(|v| *v <= alpha);
        covered as f64 / self.m() as f64
    }

    fn replicates(&self) -> Option<usize> {
        Some(self.m())
    }

    fn never_fraction(&self) -> f64 {
        self.never_count as f64 / self.m() as f64
    }

    fn support(&self) -> Vec<f64> {
        let mut v = self.required.clone();
        v.dedup();
        v
    }
}

/// Exact step distribution of required confidence: distinct values with
/// their probabilities, plus the NEVER mass.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightedCurve {
    values: Vec<f64>,
    cumulative: Vec<f64>,
    never_weight: f64,
}

impl WeightedCurve {
    /// `outcomes` pairs a required value (`None` = NEVER) with its weight.
    pub fn from_weighted<I: IntoIterator<Item = (Option<f64>, f64)>>(outcomes: I) -> Result<Self> {
        let mut finite = Vec::new();
        let mut never_weight = 0.0;
        for (v, w) in outcomes {
            if !(w >= 0.0 && w.is_finite()) {
                return domain("weights must be finite and non-negative");
            }
            match v {
                Some(v) if !(0.0..=1.0).contains(&v) => {
                    return domain("required confidence values must lie in [0, 1]")
                }
                Some(v) => finite.push((v, w)),
                None => never_weight += w,
            }
        }
        finite.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut values: Vec<f64> = Vec::new();
        let mut cumulative: Vec<f64> = Vec::new();
        let mut acc = 0.0;
        for (v, w) in finite {
            acc += w;
            if values.last() == Some(&v) {
                *cumulative.last_mut().unwrap() = acc;
            } else {
                values.push(v);
                cumulative.push(acc);
            }
        }
        Ok(Self { values, cumulative, never_weight })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Probability attached to each entry of [`values`](Self::values).
    pub fn weights(&self) -> Vec<f64> {
        let mut prev = 0.0;
        self.cumulative
            .iter()
            .map(|c| {
                let w = c - prev;
                prev = *c;
                w
            })
            .collect()
    }

    pub fn never_weight(&self) -> f64 {
        self.never_weight
    }
}

impl CoverageCurve for WeightedCurve {
    fn eval(&self, alpha: f64) -> f64 {
        if alpha.is_nan() {
            return 0.0;
        }
        match self.values.partition_point(|v| *v <= alpha) {
            0 => 0.0,
            i => self.cumulative[i - 1],
        }
    }

    fn replicates(&self) -> Option<usize> {
        None
    }

    fn never_fraction(&self) -> f64 {
        self.never_weight
    }

    fn support(&self) -> Vec<f64> {
        self.values.clone()
    }
}

/// Paired curves of an imprecise structure evaluated on the same replicates.
///
/// `lower` collects the lower bound of each replicate's confidence interval
/// and so has the higher coverage; `upper` collects the upper bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SinghBand<C = SinghCurve> {
    pub lower: C,
    pub upper: C,
}

/// Output of a Singh analysis: one curve for precise structures, a band for
/// imprecise ones.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "snake_case")]
pub enum SinghResult<C = SinghCurve> {
    Precise { curve: C },
    Band(SinghBand<C>),
}

impl<C: CoverageCurve> SinghResult<C> {
    /// The curve coverage validity is judged on: the single curve, or the
    /// band's lower curve.
    pub fn coverage_curve(&self) -> &C {
        match self {
            SinghResult::Precise { curve } => curve,
            SinghResult::Band(b) => &b.lower,
        }
    }

    pub fn band(&self) -> Option<&SinghBand<C>> {
        match self {
            SinghResult::Band(b) => Some(b),
            SinghResult::Precise { .. } => None,
        }
    }

    pub fn is_band(&self) -> bool {
        matches!(self, SinghResult::Band(_))
    }

    pub fn curves(&self) -> Vec<&C> {
        match self {
            SinghResult::Precise { curve } => vec![curve],
            SinghResult::Band(b) => vec![&b.lower, &b.upper],
        }
    }

    pub fn replicates(&self) -> Option<usize> {
        self.coverage_curve().replicates()
    }
}

/// Fraction of outcomes whose required confidence is at most `alpha`.
pub fn eval_curve<C: CoverageCurve>(curve: &C, alpha: f64) -> f64 {
    curve.eval(alpha)
}

/// `k` evenly spaced points covering `[0, 1]` inclusive.
pub fn alpha_grid(k: usize) -> Vec<f64> {
    let last = (k.max(2) - 1) as f64;
    (0..k.max(2)).map(|i| i as f64 / last).collect()
}
