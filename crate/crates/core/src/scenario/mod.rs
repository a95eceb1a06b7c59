//! Declarative scenarios: parsing, execution, CSV/SVG/JSON artifacts and the
//! bundled figure presets.

mod csv;
mod parse;
mod presets;
mod run;
mod svg;

use std::path::PathBuf;

use thiserror::Error;

use crate::engine::{Family, TargetSpec};
use crate::global::ParameterGrid;
use crate::structures::StructureSpec;

pub use csv::{emit_csv, format_sig9, read_csv, render_csv, CsvTable};
pub use parse::parse_scenario;
pub use presets::{preset, preset_names, run_preset, Overlay, Preset};
pub use run::{execute, run_scenario, Artifacts, Overrides, RunOutcome};
pub use svg::{emit_svg, render_overlay, render_svg, OverlaySeries};

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid scenario: {0}")]
    Validation(String),

    #[error("run failed: {0}")]
    Runtime(#[from] crate::Error),

    #[error("cannot write {}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
}

impl ScenarioError {
    /// Process exit status for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            ScenarioError::Parse { .. } => 2,
            ScenarioError::Validation(_) => 3,
            ScenarioError::Runtime(_) | ScenarioError::Io { .. } => 4,
        }
    }
}

/// Which artifacts a run writes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Outputs {
    pub csv: bool,
    pub svg: bool,
    pub report: bool,
}

impl Outputs {
    pub fn all() -> Self {
        Self { csv: true, svg: true, report: true }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Mode {
    /// One target with a fixed truth.
    Local(TargetSpec),
    /// The family's free parameter swept over a grid.
    Global { family: Family, grid: ParameterGrid },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub name: String,
    pub structure: StructureSpec,
    pub mode: Mode,
    pub n: usize,
    pub m: usize,
    pub seed: u64,
    pub delta: f64,
    pub outputs: Outputs,
}

impl Scenario {
    pub fn is_global(&self) -> bool {
        matches!(self.mode, Mode::Global { .. })
    }

    fn family(&self) -> &Family {
        match &self.mode {
            Mode::Local(t) => t.family(),
            Mode::Global { family, .. } => family,
        }
    }

    /// Checks the cross-field invariants.
    pub fn validate(&self) -> Result<(), ScenarioError> {
        let bad = |m: String| Err(ScenarioError::Validation(m));
        if self.name.is_empty()
            || !self.name.chars().all(|c| c.is_ascii_alphanumeric() || "-_.".contains(c))
            || self.name.starts_with('.')
        {
            return bad(format!(
                "name `{}` must be non-empty and use only letters, digits, '-', '_' and '.'",
                self.name
            ));
        }
        if self.m == 0 {
            return bad("m must be at least 1".into());
        }
        let min_n = self.structure.min_sample_size();
        if self.n < min_n {
            return bad(format!("n must be at least {min_n} for {}", self.structure.name()));
        }
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return bad(format!("delta must lie in (0, 1), got {}", self.delta));
        }
        if self.structure.requires_binary() && !self.family().is_binary() {
            return bad(format!(
                "{} needs a bernoulli target, got {}",
                self.structure.name(),
                self.family().name()
            ));
        }
        Ok(())
    }
}
