//! Global Singh curves: worst-case coverage across a grid of parameter values.
//!
//! Each grid point gets its own local analysis; the sorted required-confidence
//! columns are then combined index by index. The coverage-relevant curve (a
//! precise curve, or a band's lower curve) takes the largest `i`-th order
//! statistic across the grid, which is the pointwise minimum coverage. A
//! band's upper curve takes the smallest, the pointwise maximum of its
//! coverage. Both envelopes therefore move towards the diagonal.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::engine::{check_run, singh_curve, Family, SinghBand, SinghCurve, SinghResult, TargetSpec};
use crate::error::{domain, Result};
use crate::special::SeededStream;
use crate::structures::StructureSpec;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParameterGrid {
    thetas: Vec<f64>,
}

impl ParameterGrid {
    pub fn new(thetas: Vec<f64>) -> Result<Self> {
        if thetas.is_empty() {
            return domain("parameter grid must not be empty");
        }
        if thetas.iter().any(|t| !t.is_finite()) {
            return domain("parameter grid values must be finite");
        }
        Ok(Self { thetas })
    }

    /// `k` evenly spaced values over `[lo, hi]`. With `inclusive = false`
    /// the endpoints are dropped and the points split the interval into
    /// `k + 1` equal cells.
    pub fn uniform(lo: f64, hi: f64, k: usize, inclusive: bool) -> Result<Self> {
        if k == 0 {
            return domain("grid_k must be at least 1");
        }
        if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
            return domain(format!("grid bounds [{lo}, {hi}] are not an interval"));
        }
        let thetas = if inclusive {
            if k == 1 {
                vec![lo]
            } else {
                let step = (hi - lo) / (k - 1) as f64;
                (0..k).map(|j| if j == k - 1 { hi } else { lo + step * j as f64 }).collect()
            }
        } else {
            let step = (hi - lo) / (k + 1) as f64;
            (1..=k).map(|j| lo + step * j as f64).collect()
        };
        Self::new(thetas)
    }

    pub fn thetas(&self) -> &[f64] {
        &self.thetas
    }

    pub fn len(&self) -> usize {
        self.thetas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.thetas.is_empty()
    }
}

#[derive(Clone, Copy)]
enum Envelope {
    Max,
    Min,
}

/// Index-wise combination of equally sized curves' order statistics.
fn combine(curves: &[&SinghCurve], how: Envelope) -> Result<SinghCurve> {
    let m = curves[0].m();
    if curves.iter().any(|c| c.m() != m) {
        return domain("curves must have the same replicate count to combine");
    }
    let mut acc: Vec<f64> = curves[0].order_statistics().collect();
    for c in &curves[1..] {
        for (a, v) in acc.iter_mut().zip(c.order_statistics()) {
            *a = match how {
                Envelope::Max => a.max(v),
                Envelope::Min => a.min(v),
            };
        }
    }
    SinghCurve::from_order_statistics(acc)
}

/// Worst-case combination of per-point results.
pub fn combine_results(results: &[SinghResult<SinghCurve>]) -> Result<SinghResult<SinghCurve>> {
    if results.is_empty() {
        return domain("nothing to combine");
    }
    if results.iter().all(|r| !r.is_band()) {
        let curves: Vec<&SinghCurve> = results.iter().map(|r| r.coverage_curve()).collect();
        return Ok(SinghResult::Precise { curve: combine(&curves, Envelope::Max)? });
    }
    let bands: Vec<&SinghBand> = results.iter().filter_map(|r| r.band()).collect();
    if bands.len() != results.len() {
        return domain("cannot combine precise and imprecise results");
    }
    let lowers: Vec<&SinghCurve> = bands.iter().map(|b| &b.lower).collect();
    let uppers: Vec<&SinghCurve> = bands.iter().map(|b| &b.upper).collect();
    Ok(SinghResult::Band(SinghBand {
        lower: combine(&lowers, Envelope::Max)?,
        upper: combine(&uppers, Envelope::Min)?,
    }))
}

/// Local Singh analyses at every grid point, in grid order.
///
/// Grid point `j` runs on `stream.offset(j)`, so a one-point grid reproduces
/// [`singh_curve`] on `stream` exactly.
pub fn per_point_singh(
    structure: &StructureSpec,
    family: &Family,
    grid: &ParameterGrid,
    n: usize,
    m: usize,
    stream: &SeededStream,
) -> Result<Vec<SinghResult<SinghCurve>>> {
    check_run(structure, family, n, m)?;
    let targets: Vec<TargetSpec> = grid
        .thetas()
        .iter()
        .map(|t| TargetSpec::inference(family.with_parameter(*t)?))
        .collect::<Result<_>>()?;
    targets
        .par_iter()
        .enumerate()
        .map(|(j, target)| singh_curve(structure, target, n, m, &stream.offset(j as u64)))
        .collect()
}

/// Global Singh analysis of `structure` over `grid` for the given family.
pub fn global_singh(
    structure: &StructureSpec,
    family: &Family,
    grid: &ParameterGrid,
    n: usize,
    m: usize,
    stream: &SeededStream,
) -> Result<SinghResult<SinghCurve>> {
    combine_results(&per_point_singh(structure, family, grid, n, m, stream)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_grids() {
        let g = ParameterGrid::uniform(0.0, 1.0, 100, true).unwrap();
        assert_eq!(g.len(), 100);
        assert_eq!((g.thetas()[0], g.thetas()[99]), (0.0, 1.0));
        let g = ParameterGrid::uniform(0.0, 1.0, 3, false).unwrap();
        assert_eq!(g.thetas(), &[0.25, 0.5, 0.75]);
        assert_eq!(ParameterGrid::uniform(0.2, 0.8, 1, true).unwrap().thetas(), &[0.2]);
        assert!(ParameterGrid::uniform(0.0, 1.0, 0, true).is_err());
        assert!(ParameterGrid::uniform(1.0, 0.0, 3, true).is_err());
        assert!(ParameterGrid::new(vec![]).is_err());
    }

    #[test]
    fn combine_treats_never_as_largest() {
        let a = SinghCurve::from_parts(vec![0.1, 0.5], 1).unwrap();
        let b = SinghCurve::from_parts(vec![0.2, 0.3, 0.9], 0).unwrap();
        let hi = combine(&[&a, &b], Envelope::Max).unwrap();
        assert_eq!((hi.required(), hi.never_count()), (&[0.2, 0.5][..], 1));
        let lo = combine(&[&a, &b], Envelope::Min).unwrap();
        assert_eq!((lo.required(), lo.never_count()), (&[0.1, 0.3, 0.9][..], 0));
    }

    #[test]
    fn combine_rejects_mismatched_lengths() {
        let a = SinghCurve::from_parts(vec![0.1], 0).unwrap();
        let b = SinghCurve::from_parts(vec![0.1, 0.2], 0).unwrap();
        assert!(combine(&[&a, &b], Envelope::Min).is_err());
    }

    #[test]
    fn mixture_cannot_be_swept() {
        let fam = Family::GaussianMixture { weights: vec![1.0], mus: vec![0.0], sigmas: vec![1.0] };
        let grid = ParameterGrid::new(vec![0.0]).unwrap();
        let r =
            global_singh(&StructureSpec::EmpiricalPredictive, &fam, &grid, 5, 10, &SeededStream::new(0, 0));
        assert!(r.is_err());
    }
}
