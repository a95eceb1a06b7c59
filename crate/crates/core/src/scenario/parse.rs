//! Line-oriented `key = value` scenario documents.
//!
//! ```text
//! # Clopper-Pearson at a fixed rate
//! name = cp_local
//! structure = clopper_pearson
//! target = bernoulli
//! theta0 = 0.4
//! n = 10
//! m = 10000
//! seed = 1
//! ```
//!
//! `#` starts a comment. Lists (`weights`, `mus`, `sigmas`, `outputs`) are
//! comma separated. Supplying `grid_lo`, `grid_hi` and `grid_k` selects
//! global mode.

use std::collections::BTreeMap;

use crate::engine::{Family, TargetSpec, Truth, DEFAULT_DELTA, DEFAULT_REPLICATES};
use crate::global::ParameterGrid;
use crate::structures::StructureSpec;

use super::{Mode, Outputs, Scenario, ScenarioError};

const KEYS: &[&str] = &[
    "name",
    "structure",
    "c",
    "target",
    "p",
    "mu",
    "sigma",
    "weights",
    "mus",
    "sigmas",
    "theta0",
    "grid_lo",
    "grid_hi",
    "grid_k",
    "mean",
    "n",
    "m",
    "seed",
    "delta",
    "predict",
    "outputs",
];

struct Entry {
    line: usize,
    value: String,
}

struct Doc {
    entries: BTreeMap<&'static str, Entry>,
}

fn parse_err(line: usize, message: impl Into<String>) -> ScenarioError {
    ScenarioError::Parse { line, message: message.into() }
}

fn invalid(message: impl Into<String>) -> ScenarioError {
    ScenarioError::Validation(message.into())
}

impl Doc {
    fn read(text: &str) -> Result<Self, ScenarioError> {
        let mut entries = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let (key, value) = body
                .split_once('=')
                .ok_or_else(|| parse_err(line, format!("expected `key = value`, found `{body}`")))?;
            let key = key.trim();
            let value = value.trim();
            let known = KEYS
                .iter()
                .find(|k| **k == key)
                .ok_or_else(|| parse_err(line, format!("unknown key `{key}`")))?;
            if value.is_empty() {
                return Err(parse_err(line, format!("`{key}` has no value")));
            }
            if let Some(prev) = entries.get(known) {
                let prev: &Entry = prev;
                return Err(parse_err(line, format!("`{key}` already set on line {}", prev.line)));
            }
            entries.insert(*known, Entry { line, value: value.to_string() });
        }
        Ok(Self { entries })
    }

    fn has(&self, key: &str) -> bool {
        self.entries.contains_key(key)
    }

    fn raw(&self, key: &str) -> Option<&Entry> {
        self.entries.get(key)
    }

    fn text(&self, key: &str) -> Option<&str> {
        self.raw(key).map(|e| e.value.as_str())
    }

    fn get<T: std::str::FromStr>(&self, key: &str, what: &str) -> Result<Option<T>, ScenarioError> {
        match self.raw(key) {
            None => Ok(None),
            Some(e) => e
                .value
                .parse::<T>()
                .map(Some)
                .map_err(|_| parse_err(e.line, format!("`{key}` must be {what}, found `{}`", e.value))),
        }
    }

    fn real(&self, key: &str) -> Result<Option<f64>, ScenarioError> {
        let v: Option<f64> = self.get(key, "a number")?;
        if let (Some(x), Some(e)) = (v, self.raw(key)) {
            if !x.is_finite() {
                return Err(parse_err(e.line, format!("`{key}` must be finite")));
            }
        }
        Ok(v)
    }

    fn list(&self, key: &str) -> Result<Option<Vec<f64>>, ScenarioError> {
        let Some(e) = self.raw(key) else { return Ok(None) };
        e.value
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<f64>()
                    .ok()
                    .filter(|x| x.is_finite())
                    .ok_or_else(|| parse_err(e.line, format!("`{key}` must be a list of numbers")))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Some)
    }

    fn require<T>(&self, key: &str, v: Option<T>, context: &str) -> Result<T, ScenarioError> {
        v.ok_or_else(|| invalid(format!("`{key}` is required {context}")))
    }

    fn forbid(&self, keys: &[&str], context: &str) -> Result<(), ScenarioError> {
        for k in keys {
            if self.has(k) {
                return Err(invalid(format!("`{k}` does not apply {context}")));
            }
        }
        Ok(())
    }
}

fn parse_structure(doc: &Doc) -> Result<StructureSpec, ScenarioError> {
    let name = doc.require("structure", doc.text("structure"), "")?;
    let s = match name {
        "student_t_pivot" => StructureSpec::StudentTPivot,
        "jeffreys" => StructureSpec::Jeffreys,
        "clopper_pearson" => StructureSpec::ClopperPearson,
        "scaled_cbox" => {
            let c = doc.require("c", doc.real("c")?, "for scaled_cbox")?;
            StructureSpec::ScaledCbox { c }
        }
        "empirical_predictive" => StructureSpec::EmpiricalPredictive,
        "chebyshev_ucl" => StructureSpec::ChebyshevUcl,
        other => {
            let line = doc.raw("structure").map_or(0, |e| e.line);
            return Err(parse_err(line, format!("unknown structure `{other}`")));
        }
    };
    if !matches!(s, StructureSpec::ScaledCbox { .. }) {
        doc.forbid(&["c"], &format!("to structure {name}"))?;
    }
    s.validate().map_err(|e| invalid(strip_domain(e)))?;
    Ok(s)
}

fn strip_domain(e: crate::Error) -> String {
    match e {
        crate::Error::Domain(m) | crate::Error::DegenerateData(m) | crate::Error::UnsupportedTarget(m) => m,
    }
}

/// Builds the family; `swept` names the key the grid replaces in global mode.
fn parse_family(doc: &Doc, global: bool) -> Result<(Family, Option<f64>), ScenarioError> {
    let target = doc.require("target", doc.text("target"), "")?;
    let ctx = format!("to target {target}");
    let theta0 = doc.real("theta0")?;
    let family = match target {
        "normal" => {
            doc.forbid(&["p", "mean", "weights", "mus", "sigmas"], &ctx)?;
            let sigma = doc.require("sigma", doc.real("sigma")?, "for a normal target")?;
            let mu = if global {
                doc.forbid(&["mu"], "in global mode (the grid sets mu)")?;
                0.0
            } else {
                doc.require("mu", doc.real("mu")?, "for a normal target")?
            };
            Family::Normal { mu, sigma }
        }
        "bernoulli" => {
            doc.forbid(&["mu", "sigma", "mean", "weights", "mus", "sigmas"], &ctx)?;
            let p = if global {
                doc.forbid(&["p", "theta0"], "in global mode (the grid sets the rate)")?;
                0.5
            } else {
                match (doc.real("p")?, theta0) {
                    (Some(p), Some(t)) if p != t => {
                        return Err(invalid("`p` and `theta0` disagree for a bernoulli target"))
                    }
                    (Some(p), _) | (None, Some(p)) => p,
                    (None, None) => return Err(invalid("`theta0` is required for a bernoulli target")),
                }
            };
            Family::Bernoulli { p }
        }
        "scaled_bernoulli" => {
            doc.forbid(&["mu", "sigma", "weights", "mus", "sigmas"], &ctx)?;
            let mean = doc.require("mean", doc.real("mean")?, "for a scaled_bernoulli target")?;
            let p = if global {
                doc.forbid(&["p"], "in global mode (the grid sets p)")?;
                1.0
            } else {
                doc.require("p", doc.real("p")?, "for a scaled_bernoulli target")?
            };
            Family::ScaledBernoulli { p, mean }
        }
        "gaussian_mixture" => {
            doc.forbid(&["p", "mu", "sigma", "mean"], &ctx)?;
            if global {
                return Err(invalid("gaussian_mixture targets cannot be swept in global mode"));
            }
            Family::GaussianMixture {
                weights: doc.require("weights", doc.list("weights")?, "for a gaussian_mixture target")?,
                mus: doc.require("mus", doc.list("mus")?, "for a gaussian_mixture target")?,
                sigmas: doc.require("sigmas", doc.list("sigmas")?, "for a gaussian_mixture target")?,
            }
        }
        other => {
            let line = doc.raw("target").map_or(0, |e| e.line);
            return Err(parse_err(line, format!("unknown target `{other}`")));
        }
    };
    if global && theta0.is_some() {
        return Err(invalid("`theta0` does not apply in global mode"));
    }
    if !global {
        family.validate().map_err(|e| invalid(strip_domain(e)))?;
    }
    Ok((family, theta0))
}

fn parse_outputs(doc: &Doc) -> Result<Outputs, ScenarioError> {
    let Some(e) = doc.raw("outputs") else { return Ok(Outputs::all()) };
    let mut out = Outputs { csv: false, svg: false, report: false };
    for item in e.value.split(',').map(str::trim) {
        match item {
            "csv" => out.csv = true,
            "svg" => out.svg = true,
            "report" => out.report = true,
            other => return Err(parse_err(e.line, format!("unknown output `{other}`"))),
        }
    }
    Ok(out)
}

/// Parses and validates a scenario document.
pub fn parse_scenario(text: &str) -> Result<Scenario, ScenarioError> {
    let doc = Doc::read(text)?;
    let structure = parse_structure(&doc)?;

    let grid_keys = ["grid_lo", "grid_hi", "grid_k"];
    let present = grid_keys.iter().filter(|k| doc.has(k)).count();
    if present != 0 && present != grid_keys.len() {
        return Err(invalid("global mode needs all of grid_lo, grid_hi and grid_k"));
    }
    let global = present == grid_keys.len();

    let predict: bool = doc.get("predict", "true or false")?.unwrap_or(false);
    let (family, theta0) = parse_family(&doc, global)?;

    let mode = if global {
        if predict {
            return Err(invalid("predictive targets are not supported in global mode"));
        }
        let lo = doc.real("grid_lo")?.expect("checked");
        let hi = doc.real("grid_hi")?.expect("checked");
        let k: usize = doc.get("grid_k", "a positive integer")?.expect("checked");
        let grid = ParameterGrid::uniform(lo, hi, k, true).map_err(|e| invalid(strip_domain(e)))?;
        for t in grid.thetas() {
            family.with_parameter(*t).map_err(|e| invalid(format!("grid value {t}: {}", strip_domain(e))))?;
        }
        Mode::Global { family, grid }
    } else {
        let truth = if predict {
            if theta0.is_some() {
                return Err(invalid("`theta0` does not apply to predictive scenarios"));
            }
            Truth::Predictive
        } else {
            match (&family, theta0) {
                (Family::Bernoulli { p }, _) => Truth::Parameter(*p),
                (_, Some(t)) => Truth::Parameter(t),
                (f, None) => Truth::Parameter(f.natural_truth()),
            }
        };
        Mode::Local(TargetSpec::new(family, truth).map_err(|e| invalid(strip_domain(e)))?)
    };

    let n: usize = doc.require("n", doc.get("n", "a positive integer")?, "")?;
    let m: usize = doc.get("m", "a positive integer")?.unwrap_or(DEFAULT_REPLICATES);
    let seed: u64 = doc.get("seed", "an unsigned 64-bit integer")?.unwrap_or(0);
    let delta = doc.real("delta")?.unwrap_or(DEFAULT_DELTA);
    let name = doc.text("name").unwrap_or(structure.name()).to_string();
    let outputs = parse_outputs(&doc)?;

    let scenario = Scenario { name, structure, mode, n, m, seed, delta, outputs };
    scenario.validate()?;
    Ok(scenario)
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str =
        "structure = clopper_pearson\ntarget = bernoulli\ntheta0 = 0.4\nn = 10\nm = 10000\nseed = 1\n";

    #[test]
    fn minimal_document_defaults() {
        let s = parse_scenario(MINIMAL).unwrap();
        assert_eq!(s.delta, 0.01);
        assert_eq!(s.structure, StructureSpec::ClopperPearson);
        assert_eq!((s.n, s.m, s.seed), (10, 10_000, 1));
        assert_eq!(s.outputs, Outputs::all());
        match &s.mode {
            Mode::Local(t) => assert_eq!(t.truth(), Truth::Parameter(0.4)),
            Mode::Global { .. } => panic!("local expected"),
        }
    }

    #[test]
    fn negative_c_is_a_validation_error() {
        let doc = "structure = scaled_cbox\nc = -1\ntarget = bernoulli\ntheta0 = 0.4\nn = 10\n";
        match parse_scenario(doc) {
            Err(ScenarioError::Validation(m)) => assert!(m.contains("c must be positive"), "{m}"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn unknown_key_reports_line() {
        let doc = format!("{MINIMAL}# comment\nreplicates = 5\n");
        match parse_scenario(&doc) {
            Err(ScenarioError::Parse { line, message }) => {
                assert_eq!(line, 8);
                assert!(message.contains("replicates"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn malformed_lines() {
        assert!(matches!(
            parse_scenario("structure clopper_pearson\n"),
            Err(ScenarioError::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_scenario(&format!("{MINIMAL}n = 12\n")),
            Err(ScenarioError::Parse { line: 7, .. })
        ));
        assert!(matches!(
            parse_scenario(&MINIMAL.replace("n = 10", "n = ten")),
            Err(ScenarioError::Parse { line: 4, .. })
        ));
    }

    #[test]
    fn validation_failures() {
        let bad = [
            MINIMAL.replace("target = bernoulli", "target = normal\nmu = 0\nsigma = 1"),
            MINIMAL.replace("n = 10", "n = 0"),
            MINIMAL.replace("m = 10000", "m = 0"),
            format!("{MINIMAL}delta = 1.5\n"),
            format!("{MINIMAL}mu = 3\n"),
            format!("{MINIMAL}grid_lo = 0\n"),
            format!("{MINIMAL}c = 2\n"),
            MINIMAL.replace("theta0 = 0.4", "theta0 = 1.4"),
        ];
        for doc in &bad {
            assert!(matches!(parse_scenario(doc), Err(ScenarioError::Validation(_))), "{doc}");
        }
    }

    #[test]
    fn global_mode() {
        let doc = "structure = clopper_pearson\ntarget = bernoulli\ngrid_lo = 0\ngrid_hi = 1\ngrid_k = 100\nn = 10\nm = 1000\n";
        let s = parse_scenario(doc).unwrap();
        match &s.mode {
            Mode::Global { grid, .. } => {
                assert_eq!(grid.len(), 100);
                assert_eq!(grid.thetas()[0], 0.0);
                assert_eq!(grid.thetas()[99], 1.0);
            }
            Mode::Local(_) => panic!("global expected"),
        }
    }

    #[test]
    fn mixture_and_predict() {
        let doc = "structure = empirical_predictive\ntarget = gaussian_mixture\nweights = 0.5, 0.5\nmus = 4, 5\nsigmas = 3, 1.5\npredict = true\nn = 10\noutputs = csv\n";
        let s = parse_scenario(doc).unwrap();
        assert_eq!(s.outputs, Outputs { csv: true, svg: false, report: false });
        match &s.mode {
            Mode::Local(t) => assert!(t.is_predictive()),
            Mode::Global { .. } => panic!("local expected"),
        }
    }
}
