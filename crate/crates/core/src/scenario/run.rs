use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::engine::{classify, singh_curve, CoverageReport, SinghCurve, SinghResult};
use crate::global::global_singh;
use crate::special::SeededStream;
use crate::structures::StructureSpec;

use super::{emit_csv, emit_svg, Mode, Outputs, Scenario, ScenarioError};

/// Command-line values that take precedence over the scenario file.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Overrides {
    pub replicates: Option<usize>,
    pub seed: Option<u64>,
    pub csv: Option<bool>,
    pub svg: Option<bool>,
}

impl Overrides {
    pub fn apply(&self, s: &Scenario) -> Result<Scenario, ScenarioError> {
        let mut s = s.clone();
        if let Some(m) = self.replicates {
            s.m = m;
        }
        if let Some(seed) = self.seed {
            s.seed = seed;
        }
        if let Some(csv) = self.csv {
            s.outputs.csv = csv;
        }
        if let Some(svg) = self.svg {
            s.outputs.svg = svg;
        }
        s.validate()?;
        Ok(s)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOutcome {
    pub result: SinghResult<SinghCurve>,
    pub report: CoverageReport,
}

/// Files written by a run.
#[derive(Debug, Clone, PartialEq)]
pub struct Artifacts {
    pub outcome: RunOutcome,
    pub files: Vec<PathBuf>,
}

#[derive(Serialize)]
struct ReportFile<'a> {
    name: &'a str,
    structure: &'a StructureSpec,
    mode: &'static str,
    target: &'static str,
    n: usize,
    m: usize,
    seed: u64,
    grid_points: Option<usize>,
    never_count: usize,
    report: &'a CoverageReport,
}

/// Runs the analysis without touching the filesystem.
pub fn execute(s: &Scenario) -> Result<RunOutcome, ScenarioError> {
    s.validate()?;
    let stream = SeededStream::new(s.seed, 0);
    let result = match &s.mode {
        Mode::Local(target) => singh_curve(&s.structure, target, s.n, s.m, &stream)?,
        Mode::Global { family, grid } => global_singh(&s.structure, family, grid, s.n, s.m, &stream)?,
    };
    let report = classify(&result, s.delta)?;
    Ok(RunOutcome { result, report })
}

pub(crate) fn report_json(s: &Scenario, o: &RunOutcome) -> String {
    let (mode, target, grid_points) = match &s.mode {
        Mode::Local(t) => ("local", t.family().name(), None),
        Mode::Global { family, grid } => ("global", family.name(), Some(grid.len())),
    };
    let file = ReportFile {
        name: &s.name,
        structure: &s.structure,
        mode,
        target,
        n: s.n,
        m: s.m,
        seed: s.seed,
        grid_points,
        never_count: o.result.coverage_curve().never_count(),
        report: &o.report,
    };
    let mut text = serde_json::to_string_pretty(&file).expect("report serialises");
    text.push('\n');
    text
}

fn write(path: PathBuf, text: &str) -> Result<PathBuf, ScenarioError> {
    fs::write(&path, text).map_err(|source| ScenarioError::Io { path: path.clone(), source })?;
    Ok(path)
}

pub(crate) fn ensure_dir(dir: &Path) -> Result<(), ScenarioError> {
    fs::create_dir_all(dir).map_err(|source| ScenarioError::Io { path: dir.to_path_buf(), source })
}

/// Runs the scenario and writes `<name>.csv`, `<name>.svg` and
/// `<name>.json` into `out_dir`, as selected by its outputs.
pub fn run_scenario(s: &Scenario, out_dir: &Path) -> Result<Artifacts, ScenarioError> {
    let outcome = execute(s)?;
    ensure_dir(out_dir)?;
    let Outputs { csv, svg, report } = s.outputs;
    let mut files = Vec::new();
    if csv {
        let path = out_dir.join(format!("{}.csv", s.name));
        emit_csv(&outcome.result, &path)?;
        files.push(path);
    }
    if svg {
        let path = out_dir.join(format!("{}.svg", s.name));
        emit_svg(&outcome.result, &outcome.report, &s.name, &path)?;
        files.push(path);
    }
    if report {
        files.push(write(out_dir.join(format!("{}.json", s.name)), &report_json(s, &outcome))?);
    }
    Ok(Artifacts { outcome, files })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::parse_scenario;

    #[test]
    fn overrides_take_precedence() {
        let s = parse_scenario("structure = jeffreys\ntarget = bernoulli\ntheta0 = 0.3\nn = 5\nm = 50\n")
            .unwrap();
        let o = Overrides { replicates: Some(20), seed: Some(9), csv: Some(false), svg: None };
        let t = o.apply(&s).unwrap();
        assert_eq!((t.m, t.seed, t.outputs.csv, t.outputs.svg), (20, 9, false, true));
        let zero = Overrides { replicates: Some(0), ..Overrides::default() };
        assert!(matches!(zero.apply(&s), Err(ScenarioError::Validation(_))));
    }

    #[test]
    fn report_is_json() {
        let s = parse_scenario("structure = jeffreys\ntarget = bernoulli\ntheta0 = 0.3\nn = 5\nm = 50\n")
            .unwrap();
        let o = execute(&s).unwrap();
        let v: serde_json::Value = serde_json::from_str(&report_json(&s, &o)).unwrap();
        assert_eq!(v["structure"]["kind"], "jeffreys");
        assert_eq!(v["m"], 50);
        assert_eq!(v["report"]["delta"], 0.01);
    }
}
