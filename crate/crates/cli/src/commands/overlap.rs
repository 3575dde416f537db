//! The `overlap` subcommand.
//!
//! Default mode sweeps the boundary overlap along the phase separation on a
//! common trajectory, whose phase is the exact linear law −2j·Δτ. With
//! `--suppression` it instead sweeps 2j from 10 to 60 at a fixed symmetric
//! label offset; the first CSV column then holds 2j and −2·ln(abs) is the
//! suppression exponent −log|overlap|².

use super::{resolve_trajectory, Range1D};
use crate::config::ConfigTable;
use crate::errors::CliError;
use crate::report::{render_sweep, write_output, OutputFormat, SweepRow};
use duosc_core::{overlap, CoherentLabel, PhasePoint, SectorLabel};
use num_complex::Complex64;
use rayon::prelude::*;
use serde_json::json;

const TWO_J_MIN: u32 = 10;
const TWO_J_MAX: u32 = 60;
const DEFAULT_OFFSET: f64 = 0.5;

#[derive(clap::Args)]
pub struct Args {
    /// Sector mass M (positive integer). Required unless --suppression.
    #[arg(long)]
    mass: Option<u32>,

    /// Squared first-mode radius A², in [0, 2M]; B² = 2M − A². [default: M]
    #[arg(long = "a-squared", value_name = "A2")]
    a_squared: Option<f64>,

    /// Phase offset Δφ between the modes, in radians. [default: 0]
    #[arg(long = "delta-phi", value_name = "RAD", allow_hyphen_values = true)]
    delta_phi: Option<f64>,

    /// Separation grid start:stop:steps for the phase-law sweep.
    /// [default: 0:6.283185307179586:25]
    #[arg(long, value_name = "RANGE", allow_hyphen_values = true)]
    tau: Option<String>,

    /// Sweep the suppression exponent over 2j = 10..=60 at a fixed label
    /// offset instead of the separation law. The first output column holds
    /// 2j in this mode.
    #[arg(long)]
    suppression: bool,

    /// Symmetric label offset δ for the suppression sweep: the two boundary
    /// labels are (1∓δ/2, 1). Must lie strictly inside (0, 2). [default: 0.5]
    #[arg(long, value_name = "DELTA")]
    offset: Option<f64>,

    /// Output container: csv or json. [default: csv]
    #[arg(long, value_name = "FMT")]
    format: Option<String>,

    /// Destination path, or '-' for stdout. [default: -]
    #[arg(long, value_name = "PATH")]
    output: Option<String>,

    /// Recorded in the metadata for provenance. [default: 0]
    #[arg(long)]
    seed: Option<u64>,
}

fn suppression_rows(offset: f64) -> Result<Vec<SweepRow>, CliError> {
    (TWO_J_MIN..=TWO_J_MAX)
        .map(|two_j| {
            let sector = SectorLabel::from_mass(two_j as i64 + 1)?;
            let bra = CoherentLabel::new(
                Complex64::new(1.0 + offset / 2.0, 0.0),
                Complex64::new(1.0, 0.0),
            );
            let ket = CoherentLabel::new(
                Complex64::new(1.0 - offset / 2.0, 0.0),
                Complex64::new(1.0, 0.0),
            );
            let value = overlap(bra, ket, sector)?;
            Ok(SweepRow {
                coordinate: two_j as f64,
                method: "suppression",
                value,
            })
        })
        .collect()
}

pub fn run(args: Args, table: &ConfigTable) -> Result<(), CliError> {
    let format: OutputFormat = match table.merge(args.format, "format")? {
        None => OutputFormat::Csv,
        Some(text) => text
            .parse()
            .map_err(|error| CliError::usage(format!("--format: {error}")))?,
    };
    let output = table.merge(args.output, "output")?;
    let seed = table.merge(args.seed, "seed")?.unwrap_or(0);

    if table.merge_switch(args.suppression, "suppression")? {
        let offset = table
            .merge(args.offset, "offset")?
            .unwrap_or(DEFAULT_OFFSET);
        if !offset.is_finite() || offset <= 0.0 || offset >= 2.0 {
            return Err(CliError::usage(format!(
                "--offset must lie strictly inside (0, 2), got {offset}"
            )));
        }
        let rows = suppression_rows(offset)?;
        let metadata = json!({
            "command": "overlap",
            "mode": "suppression",
            "tool_version": env!("CARGO_PKG_VERSION"),
            "offset": offset,
            "two_j": { "min": TWO_J_MIN, "max": TWO_J_MAX },
            "seed": seed,
        });
        let text = render_sweep(format, metadata, &rows)?;
        return write_output(&output, &text);
    }

    let mass = table
        .merge(args.mass, "mass")?
        .ok_or_else(|| CliError::usage("--mass is required (flag or config)"))?;
    let a_squared = table
        .merge(args.a_squared, "a-squared")?
        .unwrap_or(mass as f64);
    let delta_phi = table.merge(args.delta_phi, "delta-phi")?.unwrap_or(0.0);
    let (sector, traj) = resolve_trajectory(mass, Some(a_squared), delta_phi)?;
    let tau_text = table
        .merge(args.tau, "tau")?
        .unwrap_or_else(|| super::correlator::DEFAULT_TAU.to_string());
    let tau: Range1D = tau_text
        .parse()
        .map_err(|error| CliError::usage(format!("--tau: {error}")))?;

    let bra = traj.label(PhasePoint::new(0.0));
    let mut rows: Vec<SweepRow> = tau
        .points()
        .par_iter()
        .map(|&delta_tau| {
            let ket = traj.label(PhasePoint::new(delta_tau));
            let value = overlap(bra, ket, sector)?;
            Ok(SweepRow {
                coordinate: delta_tau,
                method: "overlap",
                value,
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    rows.sort_by(|a, b| a.coordinate.total_cmp(&b.coordinate));

    let metadata = json!({
        "command": "overlap",
        "mode": "phase-law",
        "tool_version": env!("CARGO_PKG_VERSION"),
        "mass": mass,
        "two_j": sector.two_j(),
        "a_squared": a_squared,
        "b_squared": 2.0 * mass as f64 - a_squared,
        "delta_phi": delta_phi,
        "tau": { "start": tau.start, "stop": tau.stop, "steps": tau.steps },
        "seed": seed,
    });
    let text = render_sweep(format, metadata, &rows)?;
    write_output(&output, &text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suppression_exponent_is_linear_in_two_j() {
        let rows = suppression_rows(0.5).unwrap();
        assert_eq!(rows.len(), (TWO_J_MAX - TWO_J_MIN + 1) as usize);
        let exponents: Vec<f64> = rows.iter().map(|r| -2.0 * r.value.norm().ln()).collect();
        let per_unit = exponents[0] / rows[0].coordinate;
        for (row, exponent) in rows.iter().zip(&exponents) {
            assert!((exponent - per_unit * row.coordinate).abs() <= 1e-9);
        }
    }

    #[test]
    fn near_boundary_offsets_still_produce_finite_decaying_rows() {
        let rows = suppression_rows(1.9).unwrap();
        for pair in rows.windows(2) {
            assert!(pair[0].value.norm() > pair[1].value.norm());
            assert!(pair[1].value.norm().is_finite());
            assert!(pair[1].value.norm() > 0.0);
        }
    }
}
