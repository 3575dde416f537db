//! Deterministic report rendering.
//!
//! Two row shapes exist: sweep rows (`delta_tau,method,re,im,abs,arg`) for
//! the correlator and overlap subcommands, and kernel rows
//! (`q_a,q_b,kernel_diag,density`) for the position-grid tabulation. Floats
//! are printed with 17 significant digits in lowercase scientific notation,
//! which round-trips every f64 exactly; identical invocations therefore
//! produce byte-identical output. Nothing non-finite is ever emitted — a
//! non-finite number aborts the run instead.

use crate::errors::CliError;
use num_complex::Complex64;
use serde_json::json;
use std::io::Write;
use std::str::FromStr;

/// Output container selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(token: &str) -> Result<Self, String> {
        match token {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(format!("expected 'csv' or 'json', got '{other}'")),
        }
    }
}

/// Phase of `z` folded into (−π, π]: the branch cut itself reports +π.
pub fn principal_arg(z: Complex64) -> f64 {
    let arg = z.arg();
    if arg <= -std::f64::consts::PI {
        std::f64::consts::PI
    } else {
        arg
    }
}

/// 17 significant digits, lowercase scientific — round-trip exact for f64.
pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

/// One sweep sample: the complex `value` computed by `method` at the
/// first-column `coordinate` (the phase separation Δτ, or 2j for
/// suppression rows).
pub struct SweepRow {
    pub coordinate: f64,
    pub method: &'static str,
    pub value: Complex64,
}

pub const SWEEP_HEADER: &str = "delta_tau,method,re,im,abs,arg";
pub const KERNEL_HEADER: &str = "q_a,q_b,kernel_diag,density";

fn ensure_finite(values: &[f64], context: &str) -> Result<(), CliError> {
    if values.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(CliError::runtime(format!(
            "non-finite number produced in {context}; refusing to emit it"
        )))
    }
}

fn to_json_text(doc: &serde_json::Value) -> Result<String, CliError> {
    serde_json::to_string_pretty(doc)
        .map(|mut text| {
            text.push('\n');
            text
        })
        .map_err(|error| CliError::runtime(format!("cannot serialize report: {error}")))
}

/// Render sweep rows in the chosen container. CSV carries the pinned header
/// and rows only; JSON wraps the same rows with the metadata object.
pub fn render_sweep(
    format: OutputFormat,
    metadata: serde_json::Value,
    rows: &[SweepRow],
) -> Result<String, CliError> {
    match format {
        OutputFormat::Csv => {
            let mut out = String::with_capacity(64 * (rows.len() + 1));
            out.push_str(SWEEP_HEADER);
            out.push('\n');
            for row in rows {
                let abs = row.value.norm();
                let arg = principal_arg(row.value);
                ensure_finite(
                    &[row.coordinate, row.value.re, row.value.im, abs, arg],
                    "a sweep row",
                )?;
                out.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    format_float(row.coordinate),
                    row.method,
                    format_float(row.value.re),
                    format_float(row.value.im),
                    format_float(abs),
                    format_float(arg),
                ));
            }
            Ok(out)
        }
        OutputFormat::Json => {
            let mut json_rows = Vec::with_capacity(rows.len());
            for row in rows {
                let abs = row.value.norm();
                let arg = principal_arg(row.value);
                ensure_finite(
                    &[row.coordinate, row.value.re, row.value.im, abs, arg],
                    "a sweep row",
                )?;
                json_rows.push(json!({
                    "delta_tau": row.coordinate,
                    "method": row.method,
                    "re": row.value.re,
                    "im": row.value.im,
                    "abs": abs,
                    "arg": arg,
                }));
            }
            to_json_text(&json!({ "metadata": metadata, "rows": json_rows }))
        }
    }
}

/// One position-grid sample: the kernel diagonal and the boundary density.
pub struct KernelRow {
    pub q_a: f64,
    pub q_b: f64,
    pub kernel_diag: f64,
    pub density: f64,
}

pub fn render_kernel(
    format: OutputFormat,
    metadata: serde_json::Value,
    rows: &[KernelRow],
) -> Result<String, CliError> {
    match format {
        OutputFormat::Csv => {
            let mut out = String::with_capacity(48 * (rows.len() + 1));
            out.push_str(KERNEL_HEADER);
            out.push('\n');
            for row in rows {
                ensure_finite(
                    &[row.q_a, row.q_b, row.kernel_diag, row.density],
                    "a kernel row",
                )?;
                out.push_str(&format!(
                    "{},{},{},{}\n",
                    format_float(row.q_a),
                    format_float(row.q_b),
                    format_float(row.kernel_diag),
                    format_float(row.density),
                ));
            }
            Ok(out)
        }
        OutputFormat::Json => {
            let mut json_rows = Vec::with_capacity(rows.len());
            for row in rows {
                ensure_finite(
                    &[row.q_a, row.q_b, row.kernel_diag, row.density],
                    "a kernel row",
                )?;
                json_rows.push(json!({
                    "q_a": row.q_a,
                    "q_b": row.q_b,
                    "kernel_diag": row.kernel_diag,
                    "density": row.density,
                }));
            }
            to_json_text(&json!({ "metadata": metadata, "rows": json_rows }))
        }
    }
}

/// Write `text` to the destination path, or to stdout for None/"-"/"stdout".
pub fn write_output(destination: &Option<String>, text: &str) -> Result<(), CliError> {
    match destination.as_deref() {
        None | Some("-") | Some("stdout") => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|error| CliError::runtime(format!("cannot write to stdout: {error}"))),
        Some(path) => std::fs::write(path, text)
            .map_err(|error| CliError::runtime(format!("cannot write {path}: {error}"))),
    }
}
