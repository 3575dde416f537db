//! The `kernel` subcommand: tabulate the sector-kernel diagonal
//! K(q_a, q_b; q_a, q_b) and the density of the τ = 0 boundary state on a
//! square position grid. The kernel column is symmetric under swapping the
//! two coordinates, bit-for-bit, because the underlying sum pairs mirror
//! terms; the density column is not symmetric unless A = B and the phases
//! match.

use super::{resolve_trajectory, Range1D};
use crate::config::ConfigTable;
use crate::errors::CliError;
use crate::report::{render_kernel, write_output, KernelRow, OutputFormat};
use duosc_core::{evaluate_physical_state, kernel, physical_coherent, PhasePoint};
use serde_json::json;

const DEFAULT_GRID: &str = "-6:6:61";

#[derive(clap::Args)]
pub struct Args {
    /// Sector mass M (positive integer).
    #[arg(long)]
    mass: Option<u32>,

    /// Squared first-mode radius A² of the boundary state, in [0, 2M];
    /// B² = 2M − A². [default: M]
    #[arg(long = "a-squared", value_name = "A2")]
    a_squared: Option<f64>,

    /// Phase offset Δφ of the boundary state, in radians. [default: 0]
    #[arg(long = "delta-phi", value_name = "RAD", allow_hyphen_values = true)]
    delta_phi: Option<f64>,

    /// Square grid min:max:points applied to both position axes.
    /// [default: -6:6:61]
    #[arg(long, value_name = "RANGE", allow_hyphen_values = true)]
    grid: Option<String>,

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

pub fn run(args: Args, table: &ConfigTable) -> Result<(), CliError> {
    let mass = table
        .merge(args.mass, "mass")?
        .ok_or_else(|| CliError::usage("--mass is required (flag or config)"))?;
    let a_squared = table
        .merge(args.a_squared, "a-squared")?
        .unwrap_or(mass as f64);
    let delta_phi = table.merge(args.delta_phi, "delta-phi")?.unwrap_or(0.0);
    let (sector, traj) = resolve_trajectory(mass, Some(a_squared), delta_phi)?;

    let grid_text = table
        .merge(args.grid, "grid")?
        .unwrap_or_else(|| DEFAULT_GRID.to_string());
    let grid: Range1D = grid_text
        .parse()
        .map_err(|error| CliError::usage(format!("--grid: {error}")))?;

    let format: OutputFormat = match table.merge(args.format, "format")? {
        None => OutputFormat::Csv,
        Some(text) => text
            .parse()
            .map_err(|error| CliError::usage(format!("--format: {error}")))?,
    };
    let output = table.merge(args.output, "output")?;
    let seed = table.merge(args.seed, "seed")?.unwrap_or(0);

    let state = physical_coherent(traj.label(PhasePoint::new(0.0)), sector).normalized()?;
    let points = grid.points();
    let mut rows = Vec::with_capacity(points.len() * points.len());
    for &q_a in &points {
        for &q_b in &points {
            rows.push(KernelRow {
                q_a,
                q_b,
                kernel_diag: kernel(sector, q_a, q_b, q_a, q_b),
                density: evaluate_physical_state(&state, q_a, q_b).norm_sqr(),
            });
        }
    }

    let metadata = json!({
        "command": "kernel",
        "tool_version": env!("CARGO_PKG_VERSION"),
        "mass": mass,
        "two_j": sector.two_j(),
        "a_squared": a_squared,
        "b_squared": 2.0 * mass as f64 - a_squared,
        "delta_phi": delta_phi,
        "grid": { "min": grid.start, "max": grid.stop, "points": grid.steps },
        "state_tau": 0.0,
        "seed": seed,
    });
    let text = render_kernel(format, metadata, &rows)?;
    write_output(&output, &text)
}
