//! Bundled scenarios `fig1` … `fig9`.

use std::fs;
use std::path::Path;

use super::run::ensure_dir;
use super::{
    parse_scenario, render_overlay, run_scenario, Artifacts, OverlaySeries, Overrides, ScenarioError,
};

macro_rules! scn {
    ($name:literal) => {
        include_str!(concat!("../../presets/", $name, ".scn"))
    };
}

/// A combined plot of several of a preset's scenarios.
#[derive(Debug, Clone, Copy)]
pub struct Overlay {
    /// File stem of the plot.
    pub name: &'static str,
    pub title: &'static str,
    /// `(scenario name, legend label)` pairs.
    pub members: &'static [(&'static str, &'static str)],
}

#[derive(Debug, Clone, Copy)]
pub struct Preset {
    pub name: &'static str,
    pub description: &'static str,
    /// Scenario documents, in run order.
    pub scenarios: &'static [&'static str],
    pub overlays: &'static [Overlay],
}

const PRESETS: &[Preset] = &[
    Preset {
        name: "fig1",
        description: "Student-t pivot, N(4, 3), n = 10",
        scenarios: &[scn!("fig1")],
        overlays: &[],
    },
    Preset {
        name: "fig2",
        description: "Jeffreys posterior, Bernoulli theta0 = 0.2, n = 10",
        scenarios: &[scn!("fig2")],
        overlays: &[],
    },
    Preset {
        name: "fig3",
        description: "Clopper-Pearson c-box, Bernoulli theta0 = 0.4, n = 10",
        scenarios: &[scn!("fig3")],
        overlays: &[],
    },
    Preset {
        name: "fig4",
        description: "empirical predictive c-box, Gaussian mixture, n = 10",
        scenarios: &[scn!("fig4")],
        overlays: &[],
    },
    Preset {
        name: "fig5",
        description: "Clopper-Pearson at theta0 = 0.4 for n = 10, 50, 250",
        scenarios: &[scn!("fig5_n10"), scn!("fig5_n50"), scn!("fig5_n250")],
        overlays: &[Overlay {
            name: "fig5",
            title: "Clopper-Pearson, theta0 = 0.4",
            members: &[("fig5_n10", "n = 10"), ("fig5_n50", "n = 50"), ("fig5_n250", "n = 250")],
        }],
    },
    Preset {
        name: "fig6",
        description: "Clopper-Pearson at n = 20 for theta0 = 0.01, 0.1, 0.3, 0.5",
        scenarios: &[scn!("fig6_t001"), scn!("fig6_t010"), scn!("fig6_t030"), scn!("fig6_t050")],
        overlays: &[Overlay {
            name: "fig6",
            title: "Clopper-Pearson, n = 20",
            members: &[
                ("fig6_t001", "theta0 = 0.01"),
                ("fig6_t010", "theta0 = 0.1"),
                ("fig6_t030", "theta0 = 0.3"),
                ("fig6_t050", "theta0 = 0.5"),
            ],
        }],
    },
    Preset {
        name: "fig7",
        description: "scaled c-box at theta0 = 0.4, n = 20 for c = 0.5, 1, 3",
        scenarios: &[scn!("fig7_c05"), scn!("fig7_c1"), scn!("fig7_c3")],
        overlays: &[Overlay {
            name: "fig7",
            title: "scaled c-box, theta0 = 0.4, n = 20",
            members: &[("fig7_c05", "c = 0.5"), ("fig7_c1", "c = 1"), ("fig7_c3", "c = 3")],
        }],
    },
    Preset {
        name: "fig8",
        description: "global Clopper-Pearson over 100 rates in [0, 1], n = 10",
        scenarios: &[scn!("fig8")],
        overlays: &[],
    },
    Preset {
        name: "fig9",
        description: "Chebyshev UCL on scaled Bernoulli (mean 2), p = 0.05, 0.2, 0.5, n = 5 and 30",
        scenarios: &[
            scn!("fig9_n5_p005"),
            scn!("fig9_n5_p020"),
            scn!("fig9_n5_p050"),
            scn!("fig9_n30_p005"),
            scn!("fig9_n30_p020"),
            scn!("fig9_n30_p050"),
        ],
        overlays: &[
            Overlay {
                name: "fig9_n5",
                title: "Chebyshev UCL, n = 5",
                members: &[
                    ("fig9_n5_p005", "p = 0.05"),
                    ("fig9_n5_p020", "p = 0.2"),
                    ("fig9_n5_p050", "p = 0.5"),
                ],
            },
            Overlay {
                name: "fig9_n30",
                title: "Chebyshev UCL, n = 30",
                members: &[
                    ("fig9_n30_p005", "p = 0.05"),
                    ("fig9_n30_p020", "p = 0.2"),
                    ("fig9_n30_p050", "p = 0.5"),
                ],
            },
        ],
    },
];

pub fn preset(name: &str) -> Option<&'static Preset> {
    PRESETS.iter().find(|p| p.name == name)
}

pub fn preset_names() -> impl Iterator<Item = &'static str> {
    PRESETS.iter().map(|p| p.name)
}

/// Runs every scenario of `preset` into `out_dir`, then writes its overlay
/// plots when SVG output is enabled.
pub fn run_preset(
    preset: &Preset,
    out_dir: &Path,
    overrides: &Overrides,
) -> Result<Vec<(String, Artifacts)>, ScenarioError> {
    let mut runs = Vec::with_capacity(preset.scenarios.len());
    for doc in preset.scenarios {
        let s = overrides.apply(&parse_scenario(doc)?)?;
        let artifacts = run_scenario(&s, out_dir)?;
        runs.push((s.name.clone(), s.outputs.svg, artifacts));
    }
    for overlay in preset.overlays {
        let mut series = Vec::with_capacity(overlay.members.len());
        let mut svg = false;
        for (member, label) in overlay.members {
            let (_, wants_svg, a) = runs
                .iter()
                .find(|(n, _, _)| n == member)
                .expect("overlay members name scenarios of the same preset");
            svg |= *wants_svg;
            series.push(OverlaySeries { label: (*label).to_string(), result: &a.outcome.result });
        }
        if svg {
            ensure_dir(out_dir)?;
            let path = out_dir.join(format!("{}.svg", overlay.name));
            fs::write(&path, render_overlay(overlay.title, &series))
                .map_err(|source| ScenarioError::Io { path: path.clone(), source })?;
            runs.iter_mut()
                .find(|(n, _, _)| n == overlay.members[0].0)
                .expect("member exists")
                .2
                .files
                .push(path);
        }
    }
    Ok(runs.into_iter().map(|(n, _, a)| (n, a)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_preset_parses_with_unique_names() {
        let mut names = Vec::new();
        for p in PRESETS {
            for doc in p.scenarios {
                let s = parse_scenario(doc).unwrap_or_else(|e| panic!("{}: {e}", p.name));
                assert!(s.name.starts_with(p.name));
                names.push(s.name);
            }
            for o in p.overlays {
                assert!(o.members.iter().all(|(m, _)| names.iter().any(|n| n == m)));
            }
        }
        let count = names.len();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), count);
        assert_eq!(preset_names().count(), 9);
    }

    #[test]
    fn fig8_is_global() {
        let s = parse_scenario(preset("fig8").unwrap().scenarios[0]).unwrap();
        assert!(s.is_global());
        assert_eq!(s.m, 1000);
    }
}
