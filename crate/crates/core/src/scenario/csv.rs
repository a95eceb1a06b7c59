//! Step-curve CSV files.
//!
//! Rows sit at α = 0, at every distinct required-confidence value and at
//! α = 1. Alphas are printed with 9 significant digits rounded *up*, and the
//! coverage columns are evaluated at the printed alpha, so re-evaluating a
//! parsed file reproduces it exactly.

use std::fs;
use std::path::Path;

use crate::engine::{CoverageCurve, SinghCurve, SinghResult};

use super::ScenarioError;

const SIG: i32 = 9;

fn trim(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    let t = s.trim_end_matches('0').trim_end_matches('.');
    if t.is_empty() || t == "-" {
        "0".into()
    } else {
        t.to_string()
    }
}

fn decimals(v: f64) -> usize {
    if v == 0.0 {
        return 0;
    }
    (SIG - 1 - v.abs().log10().floor() as i32).max(0) as usize
}

/// `v` in plain decimal notation, 9 significant digits, trailing zeros
/// dropped.
pub fn format_sig9(v: f64) -> String {
    trim(format!("{:.*}", decimals(v), v))
}

/// Smallest 9-significant-digit decimal `>= v`, with its text.
fn round_up(v: f64) -> (f64, String) {
    let prec = decimals(v);
    let s = format!("{v:.prec$}");
    let p: f64 = s.parse().expect("formatted float parses");
    if p >= v {
        return (p, trim(s));
    }
    let bumped = p + 10f64.powi(-(prec as i32));
    let s = format!("{bumped:.prec$}");
    (s.parse().expect("formatted float parses"), trim(s))
}

/// CSV text for a Monte Carlo result.
pub fn render_csv(result: &SinghResult<SinghCurve>) -> String {
    let curves = result.curves();
    let mut alphas: Vec<(f64, String)> = vec![(0.0, "0".into())];
    let mut support: Vec<f64> = curves.iter().flat_map(|c| c.support()).collect();
    support.sort_by(f64::total_cmp);
    support.dedup();
    alphas.extend(support.into_iter().map(round_up));
    alphas.push((1.0, "1".into()));
    alphas.dedup_by(|b, a| a.1 == b.1);

    let mut out = String::from(if result.is_band() {
        "alpha,coverage_lower,coverage_upper\n"
    } else {
        "alpha,coverage\n"
    });
    for (a, text) in &alphas {
        out.push_str(text);
        for c in &curves {
            out.push(',');
            out.push_str(&format_sig9(c.eval(*a)));
        }
        out.push('\n');
    }
    out.push_str(&format!("# never={}\n", result.coverage_curve().never_count()));
    out
}

pub fn emit_csv(result: &SinghResult<SinghCurve>, path: &Path) -> Result<(), ScenarioError> {
    fs::write(path, render_csv(result))
        .map_err(|source| ScenarioError::Io { path: path.to_path_buf(), source })
}

/// A parsed step-curve CSV.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvTable {
    pub columns: Vec<String>,
    /// Each row as written: alpha then one value per curve.
    pub rows: Vec<Vec<f64>>,
    pub never: usize,
}

/// Parses text written by [`render_csv`].
pub fn read_csv(text: &str) -> Result<CsvTable, ScenarioError> {
    let err = |line: usize, message: &str| ScenarioError::Parse { line, message: message.into() };
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or_else(|| err(1, "empty CSV"))?;
    let columns: Vec<String> = header.split(',').map(str::to_string).collect();
    let mut rows = Vec::new();
    let mut never = None;
    for (i, line) in lines {
        if let Some(rest) = line.strip_prefix("# never=") {
            never = Some(rest.parse().map_err(|_| err(i + 1, "bad never count"))?);
            continue;
        }
        let row: Vec<f64> = line
            .split(',')
            .map(|f| f.parse::<f64>())
            .collect::<Result<_, _>>()
            .map_err(|_| err(i + 1, "non-numeric field"))?;
        if row.len() != columns.len() {
            return Err(err(i + 1, "wrong number of fields"));
        }
        rows.push(row);
    }
    let never = never.ok_or_else(|| err(0, "missing `# never=` line"))?;
    Ok(CsvTable { columns, rows, never })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn precise(values: &[Option<f64>]) -> SinghResult {
        SinghResult::Precise { curve: SinghCurve::from_outcomes(values.iter().copied()).unwrap() }
    }

    #[test]
    fn single_value() {
        assert_eq!(render_csv(&precise(&[Some(0.5)])), "alpha,coverage\n0,0\n0.5,1\n1,1\n# never=0\n");
    }

    #[test]
    fn never_only() {
        assert_eq!(render_csv(&precise(&[None])), "alpha,coverage\n0,0\n1,0\n# never=1\n");
    }

    #[test]
    fn formatting() {
        assert_eq!(format_sig9(0.0), "0");
        assert_eq!(format_sig9(1.0), "1");
        assert_eq!(format_sig9(0.1234), "0.1234");
        assert_eq!(format_sig9(1.0 / 3.0), "0.333333333");
        assert_eq!(format_sig9(2.5e-5), "0.000025");
        assert_eq!(round_up(1.0 / 3.0).1, "0.333333334");
        assert_eq!(round_up(0.999_999_999_9).1, "1");
        assert_eq!(round_up(0.25).1, "0.25");
    }

    #[test]
    fn band_rows_and_round_trip() {
        let lower = SinghCurve::from_outcomes([Some(0.0), Some(1.0 / 3.0), None]).unwrap();
        let upper = SinghCurve::from_outcomes([Some(0.2), Some(1.0), None]).unwrap();
        let r = SinghResult::Band(crate::engine::SinghBand { lower, upper });
        let text = render_csv(&r);
        let t = read_csv(&text).unwrap();
        assert_eq!(t.columns, ["alpha", "coverage_lower", "coverage_upper"]);
        assert_eq!(t.never, 1);
        let alphas: Vec<f64> = t.rows.iter().map(|r| r[0]).collect();
        assert_eq!(alphas, [0.0, 0.2, 0.333333334, 1.0]);
        for row in &t.rows {
            let b = r.band().unwrap();
            assert_eq!(format_sig9(b.lower.eval(row[0])), format_sig9(row[1]));
            assert_eq!(format_sig9(b.upper.eval(row[0])), format_sig9(row[2]));
        }
    }
}
