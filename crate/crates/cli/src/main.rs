use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;
use sis_core::eigen::eigen_report;
use sis_core::scenario::{
    analyze, builtin, run_scenario, sweep, sweep_csv, Scenario, SweepParam, BUILTINS,
};
use sis_core::{Error, Result};

#[derive(Parser)]
#[command(
    name = "sis",
    version,
    about = "Degenerate SIS reaction-diffusion simulator"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Integrate a scenario and write profiles, diagnostics, predictions and a summary
    Simulate {
        scenario: PathBuf,
        /// Output directory (defaults to the scenario's output_dir, then out/<name>)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print closed-form predictions without integrating
    Analyze { scenario: PathBuf },
    /// Principal eigenvalue and critical diffusion on the saturation-free high-risk run
    Eigen {
        scenario: PathBuf,
        /// Infected diffusion rate (defaults to the model's d_I)
        #[arg(long)]
        d_i: Option<f64>,
    },
    /// Built-in experiments
    Scenario {
        #[command(subcommand)]
        action: ScenarioAction,
    },
    /// Run a scenario once per value of one parameter
    Sweep {
        scenario: PathBuf,
        /// init_scale, d_S, d_I or k (offset of the transmission rate)
        #[arg(long)]
        param: String,
        /// Comma-separated values; an empty list yields a header-only CSV
        #[arg(long, default_value = "")]
        values: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum ScenarioAction {
    List,
    Run {
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the scenario JSON instead of running it
        #[arg(long)]
        dump: bool,
    },
}

fn print_json<T: serde::Serialize>(value: &T) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn parse_values(list: &str) -> Result<Vec<f64>> {
    list.split(',')
        .map(str::trim)
        .filter(|v| !v.is_empty())
        .map(|v| {
            v.parse()
                .map_err(|_| Error::Config(format!("invalid sweep value `{v}`")))
        })
        .collect()
}

fn simulate(sc: &Scenario, out: Option<PathBuf>) -> Result<()> {
    let dir = out.unwrap_or_else(|| sc.output_dir());
    let summary = run_scenario(sc, &dir)?;
    print_json(&summary)?;
    eprintln!("outputs written to {}", dir.display());
    Ok(())
}

fn eigen(path: &Path, d_i: Option<f64>) -> Result<()> {
    let sc = Scenario::load(path)?;
    let prep = sc.prepare()?;
    let d_i = d_i.unwrap_or(sc.model.d_i());
    if d_i.is_nan() || d_i <= 0.0 {
        return Err(Error::Config(format!(
            "{} model has no infected diffusion; pass --d-i",
            sc.model.name()
        )));
    }
    let report = eigen_report(&prep.grid, &prep.masks, &prep.coef.excess(), d_i)?;
    print_json(&json!({ "d_I": d_i, "eigen": report }))
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Simulate { scenario, out } => simulate(&Scenario::load(&scenario)?, out),
        Command::Analyze { scenario } => {
            let sc = Scenario::load(&scenario)?;
            let prep = sc.prepare()?;
            print_json(&analyze(&sc, &prep)?)
        }
        Command::Eigen { scenario, d_i } => eigen(&scenario, d_i),
        Command::Scenario { action } => match action {
            ScenarioAction::List => {
                for b in BUILTINS {
                    println!("{:<6} {}", b.name, b.description);
                }
                Ok(())
            }
            ScenarioAction::Run { name, out, dump } => {
                let sc = builtin(&name)
                    .ok_or_else(|| Error::Config(format!("unknown built-in scenario `{name}`")))?;
                if dump {
                    print_json(&sc)
                } else {
                    simulate(&sc, out)
                }
            }
        },
        Command::Sweep {
            scenario,
            param,
            values,
            out,
        } => {
            let sc = Scenario::load(&scenario)?;
            let param: SweepParam = param.parse()?;
            let values = parse_values(&values)?;
            let dir = out.unwrap_or_else(|| sc.output_dir().join("sweep"));
            std::fs::create_dir_all(&dir)?;
            let rows = sweep(&sc, param, &values, Some(&dir));
            let csv = sweep_csv(&rows);
            std::fs::write(dir.join("sweep.csv"), &csv)?;
            print!("{csv}");
            for r in rows.iter().filter(|r| r.error.is_some()) {
                eprintln!(
                    "value {}: {}",
                    r.value,
                    r.error.as_deref().unwrap_or_default()
                );
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
