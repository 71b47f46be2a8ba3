//! `collet`: deflection curves, design sweeps, grip-range reports, and
//! finite-element cross-checks for the elliptical-jaw gripper model.
//!
//! Exit codes: 0 on success, 2 for configuration or validation problems,
//! 3 for numerical failures (no contact solution, singular system), with
//! the failing step named on standard error.

mod config;
mod emit;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use collet_core::{
    grip_range, march, solve_contact_step, sweep, validate_step, DeflectionCurve64, EllipseState64,
    Preset, Scenario, StopReason,
};

use config::{GeometryConfig, RunConfig};

#[derive(Parser)]
#[command(
    name = "collet",
    version,
    about = "Design-space tools for an elliptical-jaw collet gripper",
    after_help = "Without --config or --preset, commands use the S3 sample geometry. \
                  Set COLLET_OUT_DIR to redirect relative output paths."
)]
struct Cli {
    /// Print the effective configuration as JSON and exit.
    #[arg(long, global = true)]
    dump_config: bool,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand)]
enum Command {
    /// March the adaptor and write the tip-deflection curve as CSV.
    Curve {
        /// Configuration file (JSON).
        #[arg(long)]
        config: Option<PathBuf>,
        /// Built-in sample geometry (S1..S5); overrides the config's.
        #[arg(long)]
        preset: Option<String>,
        /// Output CSV path.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sweep one design parameter and write the whole curve family.
    DesignSpace {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        preset: Option<String>,
        /// Parameter to vary: `chuck` (slot width) or `adaptor` (bore).
        #[arg(long)]
        scenario: Option<String>,
        /// Comma-separated parameter values in mm.
        #[arg(long, value_delimiter = ',')]
        values: Option<Vec<f64>>,
        /// Output CSV path (long format, one row per curve point).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Optional JSON output with curves resampled to a common grid.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// March to the stop and report the grippable diameter window.
    GripRange {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        preset: Option<String>,
        /// Output JSON path.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Replay each march step against the finite-element oracle.
    Verify {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        preset: Option<String>,
        /// Frame elements in the oracle mesh; defaults to the config's.
        #[arg(long)]
        elems: Option<usize>,
        /// Output CSV path.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print cross-section properties at a polar angle.
    Section {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        preset: Option<String>,
        /// Polar angle in degrees, between the root angle and 90.
        #[arg(long)]
        theta: f64,
    },
}

enum CliError {
    /// Bad configuration, arguments, or environment. Exit 2.
    Config(String),
    /// The model could not produce a result. Exit 3.
    Numerical(String),
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Config(format!("i/o error: {e}"))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Config(msg)) => {
            eprintln!("collet: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Numerical(msg)) => {
            eprintln!("collet: {msg}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let Some(command) = cli.command else {
        if cli.dump_config {
            return dump(&RunConfig::from_preset(Preset::S3));
        }
        return Err(CliError::Config(
            "missing subcommand; see `collet --help`".into(),
        ));
    };
    match command {
        Command::Curve {
            config,
            preset,
            out,
        } => {
            let cfg = load(&config, &preset)?;
            if cli.dump_config {
                return dump(&cfg);
            }
            let out = require_out(out)?;
            let curve = march_config(&cfg)?;
            emit::write_atomic(&out, &emit::curve_csv(&curve))?;
            fail_on_no_solution(&curve)
        }
        Command::DesignSpace {
            config,
            preset,
            scenario,
            values,
            out,
            json,
        } => {
            let mut cfg = load(&config, &preset)?;
            if let Some(name) = scenario {
                let block = cfg.sweep.get_or_insert(config::SweepBlock {
                    scenario: String::new(),
                    values_mm: Vec::new(),
                });
                block.scenario = name;
            }
            if let Some(values) = values {
                let block = cfg.sweep.get_or_insert(config::SweepBlock {
                    scenario: String::new(),
                    values_mm: Vec::new(),
                });
                block.values_mm = values;
            }
            if cli.dump_config {
                return dump(&cfg);
            }
            let out = require_out(out)?;
            let block = cfg.sweep.clone().ok_or_else(|| {
                CliError::Config(
                    "design-space needs --scenario and --values, or a sweep block in the config"
                        .into(),
                )
            })?;
            let scenario = parse_scenario(&block.scenario)?;
            if block.values_mm.is_empty() {
                return Err(CliError::Config("sweep values are empty".into()));
            }
            let geom = cfg.geometry().map_err(CliError::Config)?;
            let delta_total = cfg.delta_total().map_err(CliError::Config)?;
            let grid = sweep(
                &geom,
                scenario,
                &block.values_mm,
                delta_total,
                cfg.run.n_steps,
                cfg.run.clearance_mm,
            )
            .map_err(|e| CliError::Config(e.to_string()))?;
            emit::write_atomic(&out, &emit::grid_csv(&grid))?;
            if let Some(json_path) = json {
                let value = emit::grid_json(&grid, &block.scenario);
                let mut text = serde_json::to_string_pretty(&value).expect("grid serializes");
                text.push('\n');
                emit::write_atomic(&json_path, &text)?;
            }
            Ok(())
        }
        Command::GripRange {
            config,
            preset,
            out,
        } => {
            let cfg = load(&config, &preset)?;
            if cli.dump_config {
                return dump(&cfg);
            }
            let out = require_out(out)?;
            let geom = cfg.geometry().map_err(CliError::Config)?;
            let curve = march_config(&cfg)?;
            let (min_d, max_d) = grip_range(&geom, &curve);
            let report = serde_json::json!({
                "min_diameter_mm": emit::sig9(min_d),
                "max_diameter_mm": emit::sig9(max_d),
                "max_tip_mm": emit::sig9(curve.max_tip()),
                "final_delta_mm": emit::sig9(curve.final_delta()),
                "stop_reason": curve.stop_reason.as_str(),
                "n_steps_taken": curve.rows.len() - 1,
            });
            let mut text = serde_json::to_string_pretty(&report).expect("report serializes");
            text.push('\n');
            emit::write_atomic(&out, &text)?;
            fail_on_no_solution(&curve)
        }
        Command::Verify {
            config,
            preset,
            elems,
            out,
        } => {
            let mut cfg = load(&config, &preset)?;
            if let Some(n) = elems {
                cfg.oracle.n_elems = n;
            }
            if cli.dump_config {
                return dump(&cfg);
            }
            let out = require_out(out)?;
            let geom = cfg.geometry().map_err(CliError::Config)?;
            let curve = march_config(&cfg)?;
            let mut checks = Vec::new();
            for k in 1..curve.rows.len() {
                let state = EllipseState64 {
                    a: geom.a,
                    b: curve.rows[k - 1].b,
                    step_index: k - 1,
                };
                let step = curve.rows[k].delta - curve.rows[k - 1].delta;
                let check = solve_contact_step(&geom, &state, step)
                    .and_then(|sol| {
                        validate_step(&geom, &state, &sol, cfg.oracle.n_elems).map(|errors| {
                            collet_core::oracle::StepCheck {
                                step: k,
                                delta: curve.rows[k].delta,
                                gap: sol.gap,
                                tip_step: sol.delta_tip_step,
                                errors,
                            }
                        })
                    })
                    .map_err(|e| CliError::Numerical(format!("oracle replay at step {k}: {e}")))?;
                checks.push(check);
            }
            emit::write_atomic(&out, &emit::verify_csv(&checks, cfg.oracle.tolerance))?;
            fail_on_no_solution(&curve)
        }
        Command::Section {
            config,
            preset,
            theta,
        } => {
            let cfg = load(&config, &preset)?;
            if cli.dump_config {
                return dump(&cfg);
            }
            let geom = cfg.geometry().map_err(CliError::Config)?;
            let state = EllipseState64::initial(&geom);
            let props = collet_core::section::section_at(&geom, &state, theta.to_radians())
                .map_err(|e| CliError::Config(e.to_string()))?;
            let report = serde_json::json!({
                "theta_deg": emit::sig9(theta),
                "r_bar_mm": emit::sig9(props.r_bar),
                "alpha_rad": emit::sig9(props.alpha),
                "y_bar_mm": emit::sig9(props.y_bar),
                "i_zz_mm4": emit::sig9(props.i_zz),
                "i_c_mm4": emit::sig9(props.i_c),
            });
            print_stdout(&serde_json::to_string_pretty(&report).expect("report serializes"))
        }
    }
}

/// Loads the config file if given, falls back to the S3 sample, and lets
/// `--preset` replace the geometry block.
fn load(config: &Option<PathBuf>, preset: &Option<String>) -> Result<RunConfig, CliError> {
    let mut cfg = match config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| {
                CliError::Config(format!("cannot read {}: {e}", path.display()))
            })?;
            serde_json::from_str(&text)
                .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?
        }
        None => RunConfig::from_preset(Preset::S3),
    };
    if let Some(name) = preset {
        let preset: Preset = name
            .parse()
            .map_err(|e: collet_core::ModelError| CliError::Config(e.to_string()))?;
        cfg.geometry = GeometryConfig::from_preset(preset);
    }
    Ok(cfg)
}

fn dump(cfg: &RunConfig) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(cfg).expect("config serializes");
    print_stdout(&text)
}

/// Prints a line to stdout, treating a closed pipe as a normal exit.
fn print_stdout(text: &str) -> Result<(), CliError> {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    match writeln!(out, "{text}") {
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        other => Ok(other?),
    }
}

fn require_out(out: Option<PathBuf>) -> Result<PathBuf, CliError> {
    out.ok_or_else(|| CliError::Config("--out is required".into()))
}

fn march_config(cfg: &RunConfig) -> Result<DeflectionCurve64, CliError> {
    let geom = cfg.geometry().map_err(CliError::Config)?;
    let delta_total = cfg.delta_total().map_err(CliError::Config)?;
    march(&geom, delta_total, cfg.run.n_steps, cfg.run.clearance_mm)
        .map_err(|e| CliError::Config(e.to_string()))
}

/// A march that died mid-curve still wrote its rows; surface the failure
/// after the file is on disk.
fn fail_on_no_solution(curve: &DeflectionCurve64) -> Result<(), CliError> {
    if curve.stop_reason == StopReason::NoSolution {
        let last = curve.rows.last().expect("curve has a rest row");
        return Err(CliError::Numerical(format!(
            "no contact solution advancing to step {} (last good advance {} mm)",
            curve.rows.len(),
            emit::num(last.delta),
        )));
    }
    Ok(())
}

fn parse_scenario(name: &str) -> Result<Scenario, CliError> {
    match name {
        "chuck" => Ok(Scenario::ChuckSize),
        "adaptor" => Ok(Scenario::AdaptorDiameter),
        other => other
            .parse()
            .map_err(|e: collet_core::ModelError| CliError::Config(e.to_string())),
    }
}
