//! Coverage metrics and classification against the uniform diagonal.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

use super::curve::{alpha_grid, CoverageCurve, SinghResult};

/// Number of α points every classification is judged on.
pub const CLASSIFY_GRID: usize = 1001;

/// Default Monte Carlo tolerance level.
pub const DEFAULT_DELTA: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    /// Coverage falls below nominal somewhere beyond Monte Carlo noise.
    Overconfident,
    /// Coverage tracks the diagonal within Monte Carlo noise.
    Favourable,
    /// Never below nominal, with slack somewhere.
    Conservative,
    /// Not overconfident, but neither of the sharper descriptions applies.
    Valid,
}

impl Classification {
    pub fn is_valid(self) -> bool {
        self != Classification::Overconfident
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::Overconfident => "overconfident",
            Classification::Favourable => "favourable",
            Classification::Conservative => "conservative",
            Classification::Valid => "valid",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoverageReport {
    pub classification: Classification,
    /// `sup_α (α - S(α))` on the coverage-relevant curve.
    pub max_deficit: f64,
    /// Trapezoidal area between the band's curves; zero for precise results.
    pub conservatism_area: f64,
    pub dkw_epsilon: f64,
    pub delta: f64,
    /// Replicates per curve, absent for exact results.
    pub m: Option<usize>,
    pub never_fraction: f64,
}

impl CoverageReport {
    pub fn is_valid(&self) -> bool {
        self.classification.is_valid()
    }
}

/// DKW half-width `√(ln(2/δ) / (2m))`.
pub fn dkw_epsilon(delta: f64, m: usize) -> f64 {
    ((2.0 / delta).ln() / (2.0 * m as f64)).sqrt()
}

/// Largest shortfall `α - S(α)` over `grid` evenly spaced α in `[0, 1]`.
/// Negative when the curve sits strictly above the diagonal everywhere.
pub fn max_coverage_deficit<C: CoverageCurve>(result: &SinghResult<C>, grid: usize) -> Result<f64> {
    if grid < 2 {
        return domain("deficit grid needs at least two points");
    }
    let curve = result.coverage_curve();
    Ok(alpha_grid(grid).into_iter().map(|a| a - curve.eval(a)).fold(f64::NEG_INFINITY, f64::max))
}

/// Shortfall `α - S(α)` at a single α.
pub fn deficit_at<C: CoverageCurve>(result: &SinghResult<C>, alpha: f64) -> f64 {
    alpha - result.coverage_curve().eval(alpha)
}

/// Trapezoidal area between the band's curves on the classification grid.
pub fn conservatism_area<C: CoverageCurve>(result: &SinghResult<C>) -> f64 {
    let Some(band) = result.band() else {
        return 0.0;
    };
    let grid = alpha_grid(CLASSIFY_GRID);
    let gaps: Vec<f64> = grid.iter().map(|a| band.lower.eval(*a) - band.upper.eval(*a)).collect();
    let h = 1.0 / (CLASSIFY_GRID - 1) as f64;
    gaps.windows(2).map(|w| 0.5 * h * (w[0] + w[1])).sum::<f64>().max(0.0)
}

/// Classifies a Singh result at Monte Carlo tolerance level `delta`.
///
/// Exact results carry no sampling noise and are judged with zero tolerance.
pub fn classify<C: CoverageCurve>(result: &SinghResult<C>, delta: f64) -> Result<CoverageReport> {
    if !(delta > 0.0 && delta < 1.0) {
        return domain(format!("delta must lie in (0, 1), got {delta}"));
    }
    let m = result.replicates();
    let eps = m.map_or(0.0, |m| dkw_epsilon(delta, m));
    let grid = alpha_grid(CLASSIFY_GRID);
    let relevant = result.coverage_curve();

    let mut dips = false;
    let mut in_tube = true;
    let mut above = false;
    let mut separated = false;
    for &a in &grid {
        let s = relevant.eval(a);
        if s < a - eps {
            dips = true;
        }
        if s > a + eps {
            above = true;
        }
        if (s - a).abs() > eps {
            in_tube = false;
        }
        if let Some(band) = result.band() {
            if band.lower.eval(a) - band.upper.eval(a) > 2.0 * eps {
                separated = true;
            }
        }
    }
    let slack = if result.is_band() { separated || above } else { above };
    let classification = if dips {
        Classification::Overconfident
    } else if in_tube {
        Classification::Favourable
    } else if slack {
        Classification::Conservative
    } else {
        Classification::Valid
    };

    Ok(CoverageReport {
        classification,
        max_deficit: max_coverage_deficit(result, CLASSIFY_GRID)?,
        conservatism_area: conservatism_area(result),
        dkw_epsilon: eps,
        delta,
        m,
        never_fraction: relevant.never_fraction(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::curve::{SinghBand, SinghCurve};

    fn diagonal(m: usize) -> SinghCurve {
        // midpoints of m equal cells: ECDF within 1/(2m) of the identity
        SinghCurve::from_outcomes((0..m).map(|i| Some((i as f64 + 0.5) / m as f64))).unwrap()
    }

    #[test]
    fn dkw_value() {
        assert!((dkw_epsilon(0.01, 10_000) - 0.016_276_236_307).abs() < 1e-11);
    }

    #[test]
    fn diagonal_is_favourable_with_zero_deficit() {
        let r = SinghResult::Precise { curve: diagonal(10_000) };
        let rep = classify(&r, 0.01).unwrap();
        assert_eq!(rep.classification, Classification::Favourable);
        assert!(rep.max_deficit.abs() <= 1.0 / 20_000.0 + 1e-12);
        assert_eq!(rep.conservatism_area, 0.0);
    }

    #[test]
    fn shifted_curves() {
        // required values all at zero: coverage 1 everywhere
        let high = SinghCurve::from_outcomes((0..1000).map(|_| Some(0.0))).unwrap();
        let rep = classify(&SinghResult::Precise { curve: high }, 0.01).unwrap();
        assert_eq!(rep.classification, Classification::Conservative);
        assert_eq!(rep.max_deficit, 0.0);

        let low = SinghCurve::from_outcomes((0..1000).map(|_| Some(1.0))).unwrap();
        let rep = classify(&SinghResult::Precise { curve: low }, 0.01).unwrap();
        assert_eq!(rep.classification, Classification::Overconfident);
        assert!((rep.max_deficit - 0.999).abs() < 1e-12);
    }

    #[test]
    fn band_area() {
        let lower = SinghCurve::from_outcomes((0..100).map(|_| Some(0.0))).unwrap();
        let upper = SinghCurve::from_outcomes((0..100).map(|_| Some(1.0))).unwrap();
        let r = SinghResult::Band(SinghBand { lower, upper });
        let rep = classify(&r, 0.01).unwrap();
        // gap is 1 on [0, 1) and 0 at α = 1
        assert!((rep.conservatism_area - (1.0 - 0.0005)).abs() < 1e-12);
        assert_eq!(rep.classification, Classification::Conservative);
    }

    #[test]
    fn bad_inputs() {
        let r = SinghResult::Precise { curve: diagonal(10) };
        assert!(classify(&r, 0.0).is_err());
        assert!(classify(&r, 1.0).is_err());
        assert!(max_coverage_deficit(&r, 1).is_err());
    }
}
