//! Confidence structures: each maps a candidate value (parameter or next
//! observation) and a dataset to the confidence required to cover it.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::special::{reg_inc_beta, student_t_cdf};

/// An immutable sample `x_1..x_n`, `n >= 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    samples: Vec<f64>,
    sorted: Vec<f64>,
}

impl Dataset {
    pub fn new(samples: Vec<f64>) -> Result<Self> {
        if samples.is_empty() {
            return domain("dataset must contain at least one sample");
        }
        if samples.iter().any(|x| !x.is_finite()) {
            return domain("dataset samples must be finite");
        }
        let mut sorted = samples.clone();
        sorted.sort_by(f64::total_cmp);
        Ok(Self { samples, sorted })
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn sorted(&self) -> &[f64] {
        &self.sorted
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_binary(&self) -> bool {
        self.samples.iter().all(|x| *x == 0.0 || *x == 1.0)
    }

    /// Number of ones in a 0/1 dataset.
    pub fn successes(&self) -> Result<usize> {
        if !self.is_binary() {
            return domain("structure requires binary (0/1) data");
        }
        Ok(self.samples.iter().filter(|x| **x == 1.0).count())
    }

    /// Sample mean, summed in sorted order so it does not depend on the
    /// order the samples were drawn in.
    pub fn mean(&self) -> f64 {
        self.sorted.iter().sum::<f64>() / self.len() as f64
    }

    /// Sample standard deviation with the `n - 1` divisor; `None` when `n < 2`.
    pub fn std_dev(&self) -> Option<f64> {
        let n = self.len();
        if n < 2 {
            return None;
        }
        let mean = self.mean();
        let ss: f64 = self.sorted.iter().map(|x| (x - mean) * (x - mean)).sum();
        Some((ss / (n - 1) as f64).sqrt())
    }
}

/// Confidence assigned to a value: `[lower, upper]` with `lower <= upper`.
/// Precise structures produce `lower == upper`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConfidenceValue {
    lower: f64,
    upper: f64,
}

impl ConfidenceValue {
    pub fn precise(value: f64) -> Result<Self> {
        Self::interval(value, value)
    }

    /// Builds an interval from two bounds given in either order.
    pub fn interval(a: f64, b: f64) -> Result<Self> {
        for v in [a, b] {
            if !(0.0..=1.0).contains(&v) {
                return domain(format!("confidence {v} is outside [0, 1]"));
            }
        }
        Ok(Self { lower: a.min(b), upper: a.max(b) })
    }

    pub fn lower(&self) -> f64 {
        self.lower
    }

    pub fn upper(&self) -> f64 {
        self.upper
    }

    pub fn is_precise(&self) -> bool {
        self.lower == self.upper
    }

    pub fn contains(&self, v: f64) -> bool {
        self.lower <= v && v <= self.upper
    }
}

/// Minimum confidence needed for the one-sided interval to cover the truth.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Required {
    Value(ConfidenceValue),
    /// No confidence level covers the truth.
    Never,
}

impl Required {
    pub fn value(&self) -> Option<ConfidenceValue> {
        match self {
            Required::Value(v) => Some(*v),
            Required::Never => None,
        }
    }
}

impl From<ConfidenceValue> for Required {
    fn from(v: ConfidenceValue) -> Self {
        Required::Value(v)
    }
}

/// The catalogue of supported confidence structures.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StructureSpec {
    /// Student-t pivot for a normal mean.
    StudentTPivot,
    /// Jeffreys-prior beta posterior for a Bernoulli rate.
    Jeffreys,
    /// Clopper-Pearson c-box for a Bernoulli rate.
    ClopperPearson,
    /// Clopper-Pearson c-box with the unit offset replaced by `c`.
    ScaledCbox { c: f64 },
    /// Non-parametric c-box for the next observation.
    EmpiricalPredictive,
    /// Chebyshev-inequality upper confidence limit on a mean.
    ChebyshevUcl,
}

impl StructureSpec {
    pub fn scaled_cbox(c: f64) -> Result<Self> {
        let s = StructureSpec::ScaledCbox { c };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            StructureSpec::ScaledCbox { c } if !(*c > 0.0 && c.is_finite()) => domain("c must be positive"),
            _ => Ok(()),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            StructureSpec::StudentTPivot => "student_t_pivot",
            StructureSpec::Jeffreys => "jeffreys",
            StructureSpec::ClopperPearson => "clopper_pearson",
            StructureSpec::ScaledCbox { .. } => "scaled_cbox",
            StructureSpec::EmpiricalPredictive => "empirical_predictive",
            StructureSpec::ChebyshevUcl => "chebyshev_ucl",
        }
    }

    pub fn is_precise(&self) -> bool {
        matches!(self, StructureSpec::StudentTPivot | StructureSpec::Jeffreys | StructureSpec::ChebyshevUcl)
    }

    pub fn min_sample_size(&self) -> usize {
        match self {
            StructureSpec::StudentTPivot | StructureSpec::ChebyshevUcl => 2,
            _ => 1,
        }
    }

    pub fn requires_binary(&self) -> bool {
        matches!(
            self,
            StructureSpec::Jeffreys | StructureSpec::ClopperPearson | StructureSpec::ScaledCbox { .. }
        )
    }

    /// Required confidence at `truth` given `data`.
    pub fn evaluate(&self, truth: f64, data: &Dataset) -> Result<Required> {
        match *self {
            StructureSpec::StudentTPivot => student_t_pivot(truth, data).map(Into::into),
            StructureSpec::Jeffreys => jeffreys(truth, data).map(Into::into),
            StructureSpec::ClopperPearson => clopper_pearson(truth, data).map(Into::into),
            StructureSpec::ScaledCbox { c } => scaled_cbox(truth, data, c).map(Into::into),
            StructureSpec::EmpiricalPredictive => empirical_predictive(truth, data).map(Into::into),
            StructureSpec::ChebyshevUcl => chebyshev_required_confidence(truth, data),
        }
    }
}

impl fmt::Display for StructureSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StructureSpec::ScaledCbox { c } => write!(f, "scaled_cbox(c={c})"),
            other => f.write_str(other.name()),
        }
    }
}

fn check_rate(theta: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&theta) {
        return domain(format!("rate {theta} is outside [0, 1]"));
    }
    Ok(())
}

/// `T((mu - x̄) / (s/√n); n - 1)`.
pub fn student_t_pivot(mu: f64, data: &Dataset) -> Result<ConfidenceValue> {
    if mu.is_nan() {
        return domain("mu is NaN");
    }
    let n = data.len();
    let s = match data.std_dev() {
        Some(s) if s > 0.0 => s,
        Some(_) => return Err(Error::DegenerateData("sample standard deviation is zero".into())),
        None => return Err(Error::DegenerateData("the t pivot needs at least two samples".into())),
    };
    let t = (mu - data.mean()) / (s / (n as f64).sqrt());
    ConfidenceValue::precise(student_t_cdf(t, (n - 1) as f64)?)
}

/// Jeffreys posterior CDF, `I_θ(k + 1/2, n - k + 1/2)`.
pub fn jeffreys(theta: f64, data: &Dataset) -> Result<ConfidenceValue> {
    check_rate(theta)?;
    let k = data.successes()? as f64;
    let n = data.len() as f64;
    ConfidenceValue::precise(reg_inc_beta(theta, k + 0.5, n - k + 0.5)?)
}

/// Clopper-Pearson c-box: `[I_θ(k+1, n-k), I_θ(k, n-k+1)]`.
pub fn clopper_pearson(theta: f64, data: &Dataset) -> Result<ConfidenceValue> {
    scaled_cbox(theta, data, 1.0)
}

/// Clopper-Pearson c-box with offset `c`: `[I_θ(k+c, n-k), I_θ(k, n-k+c)]`.
///
/// At `k = n` the first bound is a unit mass at one; its left limit (zero)
/// is used so the interval spans the whole jump when `θ = 1`. At `k = 0` the
/// second bound is a unit mass at zero and evaluates to one everywhere.
pub fn scaled_cbox(theta: f64, data: &Dataset, c: f64) -> Result<ConfidenceValue> {
    if !(c > 0.0 && c.is_finite()) {
        return domain("c must be positive");
    }
    check_rate(theta)?;
    let k = data.successes()?;
    let n = data.len();
    let (kf, nf) = (k as f64, n as f64);
    let first = if k == n { 0.0 } else { reg_inc_beta(theta, kf + c, nf - kf)? };
    let second = reg_inc_beta(theta, kf, nf - kf + c)?;
    ConfidenceValue::interval(first, second)
}

/// Non-parametric predictive c-box from the ranks of `x_next` among the data.
pub fn empirical_predictive(x_next: f64, data: &Dataset) -> Result<ConfidenceValue> {
    if x_next.is_nan() {
        return domain("prediction target is NaN");
    }
    let sorted = data.sorted();
    let n = sorted.len();
    let at_most = sorted.partition_point(|v| *v <= x_next);
    let at_least = n - sorted.partition_point(|v| *v < x_next);
    let denom = (n + 1) as f64;
    // integer numerators keep every bound an exact multiple of 1/(n+1)
    ConfidenceValue::interval(at_most as f64 / denom, (n + 1 - at_least) as f64 / denom)
}

/// Chebyshev UCL, `x̄ + √(1/(1-α) - 1) · s/√n`.
pub fn chebyshev_ucl(alpha: f64, data: &Dataset) -> Result<f64> {
    if !(0.0..1.0).contains(&alpha) {
        return domain(format!("alpha must lie in [0, 1), got {alpha}"));
    }
    let n = data.len();
    let s = data
        .std_dev()
        .ok_or_else(|| Error::DegenerateData("the Chebyshev UCL needs at least two samples".into()))?;
    Ok(data.mean() + (1.0 / (1.0 - alpha) - 1.0).sqrt() * s / (n as f64).sqrt())
}

/// Smallest α whose Chebyshev UCL reaches `mu`.
///
/// Zero when `mu` does not exceed the sample mean; [`Required::Never`] when
/// the data have no spread and `mu` lies above the mean.
pub fn chebyshev_required_confidence(mu: f64, data: &Dataset) -> Result<Required> {
    if mu.is_nan() {
        return domain("mu is NaN");
    }
    let n = data.len();
    let s = data
        .std_dev()
        .ok_or_else(|| Error::DegenerateData("the Chebyshev UCL needs at least two samples".into()))?;
    let mean = data.mean();
    if mu <= mean {
        return Ok(ConfidenceValue::precise(0.0)?.into());
    }
    if s == 0.0 {
        return Ok(Required::Never);
    }
    let t = (mu - mean) * (n as f64).sqrt() / s;
    let t2 = t * t;
    let alpha = if t2.is_infinite() { 1.0 } else { t2 / (t2 + 1.0) };
    Ok(ConfidenceValue::precise(alpha)?.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binary(n: usize, k: usize) -> Dataset {
        let mut v = vec![1.0; k];
        v.extend(std::iter::repeat_n(0.0, n - k));
        Dataset::new(v).unwrap()
    }

    #[test]
    fn dataset_statistics() {
        let d = Dataset::new(vec![3.0, 1.0, 2.0]).unwrap();
        assert_eq!(d.sorted(), &[1.0, 2.0, 3.0]);
        assert_eq!(d.mean(), 2.0);
        assert_eq!(d.std_dev(), Some(1.0));
        assert_eq!(Dataset::new(vec![5.0]).unwrap().std_dev(), None);
        assert!(Dataset::new(vec![]).is_err());
        assert!(Dataset::new(vec![f64::NAN]).is_err());
    }

    #[test]
    fn confidence_value_is_ordered() {
        let v = ConfidenceValue::interval(0.7, 0.2).unwrap();
        assert_eq!((v.lower(), v.upper()), (0.2, 0.7));
        assert!(ConfidenceValue::precise(1.2).is_err());
        assert!(ConfidenceValue::precise(0.3).unwrap().is_precise());
    }

    #[test]
    fn t_pivot_examples() {
        let d = Dataset::new(vec![0.0, 2.0]).unwrap();
        assert_eq!(student_t_pivot(1.0, &d).unwrap().lower(), 0.5);
        assert!((student_t_pivot(2.0, &d).unwrap().lower() - 0.75).abs() < 1e-15);
        assert_eq!(student_t_pivot(f64::NEG_INFINITY, &d).unwrap().upper(), 0.0);
        assert_eq!(student_t_pivot(f64::INFINITY, &d).unwrap().upper(), 1.0);
        assert!(student_t_pivot(-1e6, &d).unwrap().upper() < 1e-5);
        assert!(matches!(
            student_t_pivot(1.0, &Dataset::new(vec![3.0, 3.0]).unwrap()),
            Err(Error::DegenerateData(_))
        ));
        assert!(matches!(
            student_t_pivot(1.0, &Dataset::new(vec![3.0]).unwrap()),
            Err(Error::DegenerateData(_))
        ));
    }

    #[test]
    fn jeffreys_examples() {
        let d = binary(10, 5);
        assert!((jeffreys(0.5, &d).unwrap().lower() - 0.5).abs() < 1e-15);
        assert_eq!(jeffreys(1.0, &d).unwrap().lower(), 1.0);
        assert_eq!(jeffreys(0.0, &d).unwrap().lower(), 0.0);
        // Simpson quadrature of the Beta(0.5, 10.5) density (see tests/structures.rs)
        let v = jeffreys(0.1, &binary(10, 0)).unwrap();
        assert!((v.lower() - 0.858_446_908_187_113).abs() < 1e-12);
        assert!(jeffreys(0.5, &Dataset::new(vec![0.0, 2.0]).unwrap()).is_err());
        assert!(jeffreys(1.5, &d).is_err());
    }

    #[test]
    fn clopper_pearson_examples() {
        let v = clopper_pearson(0.1, &binary(10, 0)).unwrap();
        assert!((v.lower() - (1.0 - 0.9_f64.powi(10))).abs() < 1e-14);
        assert_eq!(v.upper(), 1.0);

        for k in 1..=10 {
            let v = clopper_pearson(0.0, &binary(10, k)).unwrap();
            assert_eq!((v.lower(), v.upper()), (0.0, 0.0));
        }

        let v = clopper_pearson(0.5, &binary(10, 5)).unwrap();
        let b56 = reg_inc_beta(0.5, 5.0, 6.0).unwrap();
        let b65 = reg_inc_beta(0.5, 6.0, 5.0).unwrap();
        assert!(b56 >= b65);
        assert_eq!((v.lower(), v.upper()), (b65, b56));
    }

    #[test]
    fn clopper_pearson_boundary_truths() {
        // all-zero data at θ = 0 and all-one data at θ = 1 both span [0, 1]
        let v = clopper_pearson(0.0, &binary(10, 0)).unwrap();
        assert_eq!((v.lower(), v.upper()), (0.0, 1.0));
        let v = clopper_pearson(1.0, &binary(10, 10)).unwrap();
        assert_eq!((v.lower(), v.upper()), (0.0, 1.0));
    }

    #[test]
    fn scaled_cbox_nesting() {
        let d = binary(10, 5);
        let base = clopper_pearson(0.5, &d).unwrap();
        let narrow = scaled_cbox(0.5, &d, 0.5).unwrap();
        let wide = scaled_cbox(0.5, &d, 3.0).unwrap();
        assert!(narrow.lower() > base.lower() && narrow.upper() < base.upper());
        assert!(wide.lower() <= base.lower() && wide.upper() >= base.upper());
        assert_eq!(scaled_cbox(0.5, &d, 1.0).unwrap(), base);
        assert!(scaled_cbox(0.5, &d, 0.0).is_err());
        assert!(scaled_cbox(0.5, &d, -1.0).is_err());
        assert!(StructureSpec::scaled_cbox(-1.0).is_err());
    }

    #[test]
    fn empirical_predictive_examples() {
        let d = Dataset::new((1..=10).map(f64::from).collect()).unwrap();
        let v = empirical_predictive(0.5, &d).unwrap();
        assert_eq!((v.lower(), v.upper()), (0.0, 1.0 / 11.0));
        let v = empirical_predictive(11.0, &d).unwrap();
        assert_eq!((v.lower(), v.upper()), (10.0 / 11.0, 1.0));
        let v = empirical_predictive(3.5, &d).unwrap();
        assert_eq!((v.lower(), v.upper()), (3.0 / 11.0, 4.0 / 11.0));
        assert!((v.lower() - 0.2727).abs() < 1e-4 && (v.upper() - 0.3636).abs() < 1e-4);
    }

    #[test]
    fn chebyshev_examples() {
        let d = Dataset::new(vec![1.0, 2.0, 4.0, 7.0]).unwrap();
        let (m, s, rn) = (d.mean(), d.std_dev().unwrap(), 2.0);
        assert_eq!(chebyshev_ucl(0.0, &d).unwrap(), m);
        assert!((chebyshev_ucl(0.75, &d).unwrap() - (m + 3f64.sqrt() * s / rn)).abs() < 1e-12);
        assert!((chebyshev_ucl(0.95, &d).unwrap() - (m + 19f64.sqrt() * s / rn)).abs() < 1e-12);
        assert!(chebyshev_ucl(1.0, &d).is_err());

        let at_mean = chebyshev_required_confidence(m, &d).unwrap();
        assert_eq!(at_mean.value().unwrap().lower(), 0.0);

        let mut v = vec![40.0];
        v.extend([0.0; 29]);
        let d = Dataset::new(v).unwrap();
        let a = chebyshev_required_confidence(2.0, &d).unwrap().value().unwrap();
        assert!((a.lower() - 0.2).abs() < 1e-12);

        let zeros = Dataset::new(vec![0.0; 5]).unwrap();
        assert_eq!(chebyshev_required_confidence(2.0, &zeros).unwrap(), Required::Never);
    }

    #[test]
    fn structure_metadata() {
        assert!(StructureSpec::Jeffreys.is_precise());
        assert!(!StructureSpec::ClopperPearson.is_precise());
        assert_eq!(StructureSpec::ChebyshevUcl.min_sample_size(), 2);
        assert!(StructureSpec::ScaledCbox { c: 2.0 }.requires_binary());
        assert_eq!(StructureSpec::ScaledCbox { c: 2.0 }.to_string(), "scaled_cbox(c=2)");
    }
}
