//! Hand-rolled SVG 1.1 Singh plots.
//!
//! Only the curves and the diagonal are `<path>` elements; the frame, ticks
//! and legend swatches use `<rect>` and `<line>`, so path counts identify the
//! plot's content. Coordinates are printed with two decimals, which keeps the
//! output byte-stable.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::engine::{CoverageCurve, CoverageReport, SinghCurve, SinghResult};

use super::ScenarioError;

const WIDTH: f64 = 520.0;
const HEIGHT: f64 = 520.0;
const LEFT: f64 = 70.0;
const TOP: f64 = 50.0;
const SIDE: f64 = 400.0;

const SOLID: &str = "";
const DASHED: &str = " stroke-dasharray=\"8,5\"";
const DOTTED: &str = " stroke-dasharray=\"2,4\"";
const DASH_DOT: &str = " stroke-dasharray=\"9,4,2,4\"";
const PALETTE: [&str; 4] = ["#1f4e9c", "#c0392b", "#2e8b57", "#7d3c98"];

fn px(alpha: f64) -> f64 {
    LEFT + alpha * SIDE
}

fn py(coverage: f64) -> f64 {
    TOP + (1.0 - coverage) * SIDE
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// Right-continuous step path of `S(α)` over `[0, 1]`.
fn step_path(curve: &SinghCurve) -> String {
    let mut level = curve.eval(0.0);
    let mut d = format!("M{:.2},{:.2}", px(0.0), py(level));
    for v in curve.support() {
        if v == 0.0 {
            continue;
        }
        let next = curve.eval(v);
        if next != level {
            let _ = write!(d, " H{:.2} V{:.2}", px(v), py(next));
            level = next;
        }
    }
    let _ = write!(d, " H{:.2}", px(1.0));
    d
}

fn path(out: &mut String, d: &str, stroke: &str, dash: &str, width: f64) {
    let _ = writeln!(
        out,
        "  <path d=\"{d}\" fill=\"none\" stroke=\"{stroke}\" stroke-width=\"{width:.1}\"{dash}/>"
    );
}

fn diagonal(out: &mut String, dash: &str) {
    let d = format!("M{:.2},{:.2} L{:.2},{:.2}", px(0.0), py(0.0), px(1.0), py(1.0));
    path(out, &d, "#555555", dash, 1.2);
}

fn open(title: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\" font-family=\"sans-serif\">"
    );
    let t = escape(title);
    let _ = writeln!(out, "  <title>{t}</title>");
    let _ = writeln!(out, "  <rect x=\"0\" y=\"0\" width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"#ffffff\"/>");
    let _ = writeln!(
        out,
        "  <text x=\"{:.2}\" y=\"30\" font-size=\"16\" text-anchor=\"middle\">{t}</text>",
        LEFT + SIDE / 2.0
    );
    let _ = writeln!(
        out,
        "  <rect x=\"{LEFT}\" y=\"{TOP}\" width=\"{SIDE}\" height=\"{SIDE}\" fill=\"none\" stroke=\"#000000\" stroke-width=\"1\"/>"
    );
    for i in 0..=5 {
        let v = i as f64 / 5.0;
        let (x, y) = (px(v), py(v));
        let bottom = TOP + SIDE;
        let _ = writeln!(
            out,
            "  <line x1=\"{x:.2}\" y1=\"{bottom:.2}\" x2=\"{x:.2}\" y2=\"{:.2}\" stroke=\"#000000\"/>",
            bottom + 5.0
        );
        let _ = writeln!(
            out,
            "  <text x=\"{x:.2}\" y=\"{:.2}\" font-size=\"11\" text-anchor=\"middle\">{v:.1}</text>",
            bottom + 18.0
        );
        let _ = writeln!(
            out,
            "  <line x1=\"{:.2}\" y1=\"{y:.2}\" x2=\"{LEFT:.2}\" y2=\"{y:.2}\" stroke=\"#000000\"/>",
            LEFT - 5.0
        );
        let _ = writeln!(
            out,
            "  <text x=\"{:.2}\" y=\"{:.2}\" font-size=\"11\" text-anchor=\"end\">{v:.1}</text>",
            LEFT - 8.0,
            y + 4.0
        );
    }
    let _ = writeln!(
        out,
        "  <text x=\"{:.2}\" y=\"{:.2}\" font-size=\"13\" text-anchor=\"middle\">confidence level \u{3b1}</text>",
        LEFT + SIDE / 2.0,
        TOP + SIDE + 40.0
    );
    let _ = writeln!(
        out,
        "  <text x=\"20\" y=\"{:.2}\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 20 {:.2})\">coverage S(\u{3b1})</text>",
        TOP + SIDE / 2.0,
        TOP + SIDE / 2.0
    );
    out
}

fn legend(out: &mut String, row: usize, label: &str, stroke: &str, dash: &str) {
    let y = TOP + 18.0 + 16.0 * row as f64;
    let x = LEFT + SIDE - 150.0;
    let _ = writeln!(
        out,
        "  <line x1=\"{x:.2}\" y1=\"{y:.2}\" x2=\"{:.2}\" y2=\"{y:.2}\" stroke=\"{stroke}\" stroke-width=\"1.8\"{dash}/>",
        x + 28.0
    );
    let _ = writeln!(
        out,
        "  <text x=\"{:.2}\" y=\"{:.2}\" font-size=\"11\">{}</text>",
        x + 34.0,
        y + 4.0,
        escape(label)
    );
}

/// Plot of one result: a single curve with a dashed diagonal, or a band
/// (solid upper, dashed lower) with a dotted diagonal.
pub fn render_svg(result: &SinghResult<SinghCurve>, report: &CoverageReport, name: &str) -> String {
    let mut out = open(&format!("{name}: {}", report.classification));
    match result {
        SinghResult::Precise { curve } => {
            path(&mut out, &step_path(curve), "#000000", SOLID, 1.8);
            diagonal(&mut out, DASHED);
            legend(&mut out, 0, "S(\u{3b1})", "#000000", SOLID);
            legend(&mut out, 1, "U(0,1)", "#555555", DASHED);
        }
        SinghResult::Band(b) => {
            path(&mut out, &step_path(&b.upper), "#000000", SOLID, 1.8);
            path(&mut out, &step_path(&b.lower), "#000000", DASHED, 1.8);
            diagonal(&mut out, DOTTED);
            legend(&mut out, 0, "upper", "#000000", SOLID);
            legend(&mut out, 1, "lower", "#000000", DASHED);
            legend(&mut out, 2, "U(0,1)", "#555555", DOTTED);
        }
    }
    out.push_str("</svg>\n");
    out
}

pub fn emit_svg(
    result: &SinghResult<SinghCurve>,
    report: &CoverageReport,
    name: &str,
    path: &Path,
) -> Result<(), ScenarioError> {
    fs::write(path, render_svg(result, report, name))
        .map_err(|source| ScenarioError::Io { path: path.to_path_buf(), source })
}

/// One labelled result in a multi-curve plot.
pub struct OverlaySeries<'a> {
    pub label: String,
    pub result: &'a SinghResult<SinghCurve>,
}

/// Several results on shared axes with a dotted diagonal.
///
/// Precise curves are told apart by line style (solid, dashed, dash-dot,
/// then repeating); bands by colour, each with a solid upper and dashed
/// lower curve.
pub fn render_overlay(title: &str, series: &[OverlaySeries<'_>]) -> String {
    let mut out = open(title);
    let styles = [SOLID, DASHED, DASH_DOT];
    let mut row = 0;
    for (i, s) in series.iter().enumerate() {
        let colour = PALETTE[i % PALETTE.len()];
        match s.result {
            SinghResult::Precise { curve } => {
                let dash = styles[i % styles.len()];
                path(&mut out, &step_path(curve), colour, dash, 1.8);
                legend(&mut out, row, &s.label, colour, dash);
                row += 1;
            }
            SinghResult::Band(b) => {
                path(&mut out, &step_path(&b.upper), colour, SOLID, 1.6);
                path(&mut out, &step_path(&b.lower), colour, DASHED, 1.6);
                legend(&mut out, row, &s.label, colour, SOLID);
                row += 1;
            }
        }
    }
    diagonal(&mut out, DOTTED);
    legend(&mut out, row, "U(0,1)", "#555555", DOTTED);
    out.push_str("</svg>\n");
    out
}
