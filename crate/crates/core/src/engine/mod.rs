//! Monte Carlo Singh curves, exact enumeration for discrete targets, and
//! coverage classification.

mod curve;
mod report;
mod target;

use rayon::prelude::*;

use crate::error::{domain, Error, Result};
use crate::special::{ln_gamma, SeededStream};
use crate::structures::{Dataset, Required, StructureSpec};

pub use curve::{alpha_grid, eval_curve, CoverageCurve, SinghBand, SinghCurve, SinghResult, WeightedCurve};
pub use report::{
    classify, conservatism_area, deficit_at, dkw_epsilon, max_coverage_deficit, Classification,
    CoverageReport, CLASSIFY_GRID, DEFAULT_DELTA,
};
pub use target::{Family, TargetSpec, Truth};

/// Default number of Monte Carlo replicates.
pub const DEFAULT_REPLICATES: usize = 10_000;

pub(crate) fn check_run(structure: &StructureSpec, family: &Family, n: usize, m: usize) -> Result<()> {
    structure.validate()?;
    if m == 0 {
        return domain("at least one replicate is required");
    }
    if n < structure.min_sample_size() {
        return domain(format!("{} needs n >= {}, got {n}", structure.name(), structure.min_sample_size()));
    }
    if structure.requires_binary() && !family.is_binary() {
        return domain(format!("{} requires a bernoulli target", structure.name()));
    }
    Ok(())
}

/// Draws one replicate and evaluates the structure at its truth.
fn replicate(
    structure: &StructureSpec,
    target: &TargetSpec,
    n: usize,
    stream: &SeededStream,
) -> Result<Required> {
    let (data, truth) = match target.truth() {
        Truth::Parameter(theta) => (target.family().draw(stream, n)?, theta),
        Truth::Predictive => {
            let mut xs = target.family().draw(stream, n + 1)?;
            let next = xs.pop().expect("n + 1 >= 1 draws");
            (xs, next)
        }
    };
    structure.evaluate(truth, &Dataset::new(data)?)
}

fn assemble(structure: &StructureSpec, outcomes: &[Required]) -> Result<SinghResult<SinghCurve>> {
    let lower = || outcomes.iter().map(|r| r.value().map(|v| v.lower()));
    if structure.is_precise() {
        return Ok(SinghResult::Precise { curve: SinghCurve::from_outcomes(lower())? });
    }
    let upper = outcomes.iter().map(|r| r.value().map(|v| v.upper()));
    Ok(SinghResult::Band(SinghBand {
        lower: SinghCurve::from_outcomes(lower())?,
        upper: SinghCurve::from_outcomes(upper)?,
    }))
}

/// Monte Carlo Singh analysis of `structure` against `target`.
///
/// Replicate `i` draws its data from `stream.replicate(i)`, so the result is
/// independent of thread count and scheduling.
pub fn singh_curve(
    structure: &StructureSpec,
    target: &TargetSpec,
    n: usize,
    m: usize,
    stream: &SeededStream,
) -> Result<SinghResult<SinghCurve>> {
    check_run(structure, target.family(), n, m)?;
    let outcomes: Vec<Required> = (0..m as u64)
        .into_par_iter()
        .map(|i| replicate(structure, target, n, &stream.replicate(i)))
        .collect::<Result<_>>()?;
    assemble(structure, &outcomes)
}

fn binomial_pmf(k: usize, n: usize, p: f64) -> f64 {
    if p == 0.0 {
        return if k == 0 { 1.0 } else { 0.0 };
    }
    if p == 1.0 {
        return if k == n { 1.0 } else { 0.0 };
    }
    let (kf, nf) = (k as f64, n as f64);
    (ln_gamma(nf + 1.0) - ln_gamma(kf + 1.0) - ln_gamma(nf - kf + 1.0)
        + kf * p.ln()
        + (nf - kf) * (-p).ln_1p())
    .exp()
}

/// Exact Singh analysis for Bernoulli-type targets.
///
/// The structure sees the data only through the number of successes, so the
/// required-confidence distribution is enumerated over `k = 0..=n` with
/// binomial weights.
pub fn exact_singh_curve(
    structure: &StructureSpec,
    target: &TargetSpec,
    n: usize,
) -> Result<SinghResult<WeightedCurve>> {
    check_run(structure, target.family(), n, 1)?;
    let truth = match target.truth() {
        Truth::Parameter(t) => t,
        Truth::Predictive => {
            return Err(Error::UnsupportedTarget("predictive targets cannot be enumerated".into()))
        }
    };
    let (p, high) = match *target.family() {
        Family::Bernoulli { p } => (p, 1.0),
        Family::ScaledBernoulli { p, mean } => (p, mean / p),
        ref other => {
            return Err(Error::UnsupportedTarget(format!(
                "{} targets have no finite sufficient statistic",
                other.name()
            )))
        }
    };
    let mut outcomes = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let w = binomial_pmf(k, n, p);
        if w == 0.0 {
            continue;
        }
        let mut xs = vec![0.0; n - k];
        xs.extend(std::iter::repeat_n(high, k));
        let r = structure.evaluate(truth, &Dataset::new(xs)?)?;
        outcomes.push((r, w));
    }
    let pick = |f: fn(&crate::structures::ConfidenceValue) -> f64| {
        WeightedCurve::from_weighted(outcomes.iter().map(|(r, w)| (r.value().map(|v| f(&v)), *w)))
    };
    if structure.is_precise() {
        Ok(SinghResult::Precise { curve: pick(|v| v.lower())? })
    } else {
        Ok(SinghResult::Band(SinghBand { lower: pick(|v| v.lower())?, upper: pick(|v| v.upper())? }))
    }
}
