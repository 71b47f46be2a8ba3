//! Deterministic file output: fixed CSV schemas, nine-significant-digit
//! numbers, atomic writes.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use collet_core::oracle::StepCheck;
use collet_core::{DeflectionCurve64, DesignSpaceGrid64};

pub const CURVE_HEADER: &str = "delta_mm,delta_tip_mm,b_mm,beta_rad,phi_rad,fx_n,fy_n";
pub const GRID_HEADER: &str = "value_mm,delta_mm,delta_tip_mm,b_mm,beta_rad,phi_rad,fx_n,fy_n";
pub const VERIFY_HEADER: &str =
    "step,delta_mm,gap_mm,tip_step_mm,contact_err_rel,tip_err_rel,within_tol";

/// Nine significant digits, scientific notation, locale-independent.
pub fn num(x: f64) -> String {
    format!("{x:.8e}")
}

/// Rounds to nine significant digits so JSON diffs stay meaningful.
pub fn sig9(x: f64) -> f64 {
    num(x).parse().expect("formatted float reparses")
}

/// Applies the optional `COLLET_OUT_DIR` override to relative paths.
pub fn resolve_out(path: &Path) -> PathBuf {
    match std::env::var_os("COLLET_OUT_DIR") {
        Some(dir) if path.is_relative() => PathBuf::from(dir).join(path),
        _ => path.to_path_buf(),
    }
}

/// Writes the file atomically: temp file beside the target, then rename,
/// so a crashed run never leaves a truncated result.
pub fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let path = resolve_out(path);
    let dir = match path.parent() {
        Some(parent) if !parent.as_os_str().is_empty() => parent,
        _ => Path::new("."),
    };
    fs::create_dir_all(dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.persist(&path).map_err(|e| e.error)?;
    Ok(())
}

fn curve_row(out: &mut String, prefix: Option<f64>, row: &collet_core::CurveRow<f64>) {
    if let Some(value) = prefix {
        out.push_str(&num(value));
        out.push(',');
    }
    let fields = [
        row.delta, row.delta_tip, row.b, row.beta, row.phi, row.f_x, row.f_y,
    ];
    let line: Vec<String> = fields.iter().map(|&x| num(x)).collect();
    out.push_str(&line.join(","));
    out.push('\n');
}

pub fn curve_csv(curve: &DeflectionCurve64) -> String {
    let mut out = String::from(CURVE_HEADER);
    out.push('\n');
    for row in &curve.rows {
        curve_row(&mut out, None, row);
    }
    out
}

pub fn grid_csv(grid: &DesignSpaceGrid64) -> String {
    let mut out = String::from(GRID_HEADER);
    out.push('\n');
    for (value, curve) in grid.swept_values.iter().zip(&grid.curves) {
        for row in &curve.rows {
            curve_row(&mut out, Some(*value), row);
        }
    }
    out
}

pub fn verify_csv(checks: &[StepCheck<f64>], tolerance: f64) -> String {
    let mut out = String::from(VERIFY_HEADER);
    out.push('\n');
    for check in checks {
        let within = check.errors.contact < tolerance && check.errors.tip < tolerance;
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            check.step,
            num(check.delta),
            num(check.gap),
            num(check.tip_step),
            num(check.errors.contact),
            num(check.errors.tip),
            within,
        ));
    }
    out
}

pub fn grid_json(grid: &DesignSpaceGrid64, scenario_name: &str) -> serde_json::Value {
    let curves: Vec<serde_json::Value> = grid
        .swept_values
        .iter()
        .zip(&grid.curves)
        .enumerate()
        .map(|(idx, (value, curve))| {
            serde_json::json!({
                "value_mm": sig9(*value),
                "stop_reason": curve.stop_reason.as_str(),
                "final_delta_mm": sig9(curve.final_delta()),
                "max_tip_mm": sig9(curve.max_tip()),
                "tip_on_common_grid_mm": grid
                    .tip_on_common_grid(idx)
                    .into_iter()
                    .map(sig9)
                    .collect::<Vec<f64>>(),
            })
        })
        .collect();
    serde_json::json!({
        "scenario": scenario_name,
        "swept_values_mm": grid.swept_values.iter().map(|&v| sig9(v)).collect::<Vec<f64>>(),
        "common_delta_grid_mm": grid
            .common_delta_grid
            .iter()
            .map(|&v| sig9(v))
            .collect::<Vec<f64>>(),
        "curves": curves,
    })
}
