use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use singh_audit::scenario::{
    parse_scenario, preset, preset_names, run_preset, run_scenario, Artifacts, Overrides, ScenarioError,
};

/// Coverage audits for confidence distributions and c-boxes via Singh plots.
#[derive(Parser)]
#[command(name = "singh", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario file.
    Run {
        #[arg(long)]
        scenario: PathBuf,
        #[command(flatten)]
        common: Common,
        /// Override the seed from the file.
        #[arg(long)]
        seed: Option<u64>,
        /// Which curve artifacts to write; the JSON report follows the file.
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Run one of the bundled figure presets.
    Preset {
        /// fig1 … fig9
        name: String,
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(clap::Args)]
struct Common {
    /// Output directory.
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Override the Monte Carlo replicate count.
    #[arg(long)]
    replicates: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Svg,
    Both,
}

fn summarise(name: &str, a: &Artifacts) {
    let r = &a.outcome.report;
    println!(
        "{name}: {} (max deficit {:.4}, area {:.4}, eps {:.4})",
        r.classification, r.max_deficit, r.conservatism_area, r.dkw_epsilon
    );
    for f in &a.files {
        println!("  wrote {}", f.display());
    }
}

fn run(cli: Cli) -> Result<(), ScenarioError> {
    match cli.command {
        Command::Run { scenario, common, seed, format } => {
            let text = fs::read_to_string(&scenario)
                .map_err(|source| ScenarioError::Io { path: scenario.clone(), source })?;
            let (csv, svg) = match format {
                None => (None, None),
                Some(Format::Csv) => (Some(true), Some(false)),
                Some(Format::Svg) => (Some(false), Some(true)),
                Some(Format::Both) => (Some(true), Some(true)),
            };
            let overrides = Overrides { replicates: common.replicates, seed, csv, svg };
            let s = overrides.apply(&parse_scenario(&text)?)?;
            let a = run_scenario(&s, &common.out)?;
            summarise(&s.name, &a);
        }
        Command::Preset { name, common, seed } => {
            let p = preset(&name).ok_or_else(|| {
                ScenarioError::Validation(format!(
                    "unknown preset `{name}` (available: {})",
                    preset_names().collect::<Vec<_>>().join(", ")
                ))
            })?;
            let overrides = Overrides { replicates: common.replicates, seed, ..Overrides::default() };
            for (scenario, a) in run_preset(p, &common.out, &overrides)? {
                summarise(&scenario, &a);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("singh: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
