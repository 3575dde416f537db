//! The `correlator` subcommand: evaluate the two-point value by the selected
//! methods along a grid of phase separations.

use super::{resolve_trajectory, Range1D};
use crate::config::ConfigTable;
use crate::errors::CliError;
use crate::report::{render_sweep, write_output, OutputFormat, SweepRow};
use duosc_core::{
    gauss_hermite_rule, two_point_bruteforce, two_point_closed_form, two_point_quadrature,
    two_point_semiclassical, two_point_trajectory, Method, PhasePoint, QuadratureRule, SectorLabel,
    TrajectoryPair, TrajectoryParams,
};
use rayon::prelude::*;
use serde_json::json;
use std::collections::BTreeSet;

pub const DEFAULT_TAU: &str = "0:6.283185307179586:25";

#[derive(clap::Args)]
pub struct Args {
    /// Sector mass M (positive integer; the sector has dimension M).
    #[arg(long)]
    mass: Option<u32>,

    /// Squared first-mode radius A², in [0, 2M]; B² is always 2M − A².
    /// [default: M]
    #[arg(long = "a-squared", value_name = "A2")]
    a_squared: Option<f64>,

    /// Phase offset Δφ between the modes, in radians. [default: 0]
    #[arg(long = "delta-phi", value_name = "RAD", allow_hyphen_values = true)]
    delta_phi: Option<f64>,

    /// Separation grid start:stop:steps, endpoints inclusive.
    /// [default: 0:6.283185307179586:25]
    #[arg(long, value_name = "RANGE", allow_hyphen_values = true)]
    tau: Option<String>,

    /// Comma list drawn from bruteforce, closed, trajectory, semiclassical,
    /// quadrature. [default: all five]
    #[arg(long, value_name = "LIST")]
    methods: Option<String>,

    /// Output container: csv or json. [default: csv]
    #[arg(long, value_name = "FMT")]
    format: Option<String>,

    /// Destination path, or '-' for stdout. [default: -]
    #[arg(long, value_name = "PATH")]
    output: Option<String>,

    /// Recorded in the metadata for provenance; sweeps themselves are
    /// deterministic and only the validate suites draw random numbers.
    /// [default: 0]
    #[arg(long)]
    seed: Option<u64>,

    /// Gauss–Hermite order for the quadrature method; must be at least
    /// 2j + 3. [default: 2j + 5]
    #[arg(long)]
    order: Option<usize>,
}

/// Parse and deduplicate the method list, keeping the emission order
/// stable.
pub fn parse_methods(text: &str) -> Result<Vec<Method>, CliError> {
    let mut set = BTreeSet::new();
    for token in text.split(',') {
        let token = token.trim();
        if token.is_empty() {
            continue;
        }
        let method: Method = token
            .parse()
            .map_err(|error| CliError::usage(format!("--methods: {error}")))?;
        set.insert(method);
    }
    if set.is_empty() {
        return Err(CliError::usage(
            "--methods must select at least one method".to_string(),
        ));
    }
    Ok(set.into_iter().collect())
}

fn evaluate(
    method: Method,
    pair: TrajectoryPair,
    sector: SectorLabel,
    rule: Option<&QuadratureRule>,
) -> Result<SweepRow, CliError> {
    let value = match method {
        Method::BruteForce => {
            two_point_bruteforce(pair.ket_label(), pair.bra_label(), sector, 1.0)?.value
        }
        Method::ClosedForm => {
            two_point_closed_form(pair.ket_label(), pair.bra_label(), sector)?.value
        }
        Method::Trajectory => two_point_trajectory(pair, sector)?.value,
        Method::Semiclassical => two_point_semiclassical(pair, sector.mass()).value,
        Method::Quadrature => {
            let rule = rule.expect("quadrature rule prepared when the method is selected");
            two_point_quadrature(pair.ket_label(), pair.bra_label(), sector, rule)?.value
        }
    };
    Ok(SweepRow {
        coordinate: pair.delta_tau(),
        method: method.as_str(),
        value,
    })
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

    let tau_text = table
        .merge(args.tau, "tau")?
        .unwrap_or_else(|| DEFAULT_TAU.to_string());
    let tau: Range1D = tau_text
        .parse()
        .map_err(|error| CliError::usage(format!("--tau: {error}")))?;

    let methods_text = table
        .merge(args.methods, "methods")?
        .unwrap_or_else(|| "bruteforce,closed,trajectory,semiclassical,quadrature".to_string());
    let methods = parse_methods(&methods_text)?;

    let format: OutputFormat = match table.merge(args.format, "format")? {
        None => OutputFormat::Csv,
        Some(text) => text
            .parse()
            .map_err(|error| CliError::usage(format!("--format: {error}")))?,
    };
    let output = table.merge(args.output, "output")?;
    let seed = table.merge(args.seed, "seed")?.unwrap_or(0);

    let threshold = sector.two_j() as usize + 3;
    let order = table.merge(args.order, "order")?.unwrap_or(threshold + 2);
    let rule = if methods.contains(&Method::Quadrature) {
        if order < threshold {
            return Err(CliError::usage(format!(
                "--order {order} is below the exactness threshold {threshold} for mass {mass}"
            )));
        }
        Some(gauss_hermite_rule(order)?)
    } else {
        None
    };

    let rows = compute_rows(sector, traj, &tau.points(), &methods, rule.as_ref())?;
    let metadata = json!({
        "command": "correlator",
        "tool_version": env!("CARGO_PKG_VERSION"),
        "mass": mass,
        "two_j": sector.two_j(),
        "a_squared": a_squared,
        "b_squared": 2.0 * mass as f64 - a_squared,
        "delta_phi": delta_phi,
        "tau": { "start": tau.start, "stop": tau.stop, "steps": tau.steps },
        "methods": methods.iter().map(|m| m.as_str()).collect::<Vec<_>>(),
        "order": if rule.is_some() { json!(order) } else { serde_json::Value::Null },
        "seed": seed,
    });
    let text = render_sweep(format, metadata, &rows)?;
    write_output(&output, &text)
}

/// Evaluate every (separation, method) cell; points run in parallel and the
/// rows are sorted afterwards, so the schedule cannot affect the output.
fn compute_rows(
    sector: SectorLabel,
    traj: TrajectoryParams,
    separations: &[f64],
    methods: &[Method],
    rule: Option<&QuadratureRule>,
) -> Result<Vec<SweepRow>, CliError> {
    let nested: Vec<Vec<SweepRow>> = separations
        .par_iter()
        .map(|&delta_tau| {
            let pair = TrajectoryPair::new(traj, PhasePoint::new(delta_tau), PhasePoint::new(0.0));
            methods
                .iter()
                .map(|&method| evaluate(method, pair, sector, rule))
                .collect::<Result<Vec<_>, CliError>>()
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let mut rows: Vec<SweepRow> = nested.into_iter().flatten().collect();
    rows.sort_by(|a, b| {
        a.coordinate
            .total_cmp(&b.coordinate)
            .then_with(|| a.method.cmp(b.method))
    });
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn method_lists_parse_dedupe_and_reject_garbage() {
        let methods = parse_methods("closed, closed,bruteforce").unwrap();
        assert_eq!(methods, vec![Method::BruteForce, Method::ClosedForm]);
        assert!(parse_methods("closed,warp").is_err());
        assert!(parse_methods(" , ").is_err());
    }

    #[test]
    fn rows_are_sorted_by_separation_then_method_name() {
        let (sector, traj) = resolve_trajectory(3, Some(4.0), 0.3).unwrap();
        let methods = parse_methods("trajectory,closed,semiclassical").unwrap();
        let rows = compute_rows(sector, traj, &[1.0, 0.0], &methods, None).unwrap();
        let keys: Vec<(f64, &str)> = rows.iter().map(|r| (r.coordinate, r.method)).collect();
        assert_eq!(
            keys,
            vec![
                (0.0, "closed"),
                (0.0, "semiclassical"),
                (0.0, "trajectory"),
                (1.0, "closed"),
                (1.0, "semiclassical"),
                (1.0, "trajectory"),
            ]
        );
    }

    #[test]
    fn mass_two_trajectory_rows_have_unit_modulus() {
        let (sector, traj) = resolve_trajectory(2, Some(1.3), 0.9).unwrap();
        let methods = parse_methods("trajectory").unwrap();
        let rows = compute_rows(sector, traj, &[0.0, 0.7, 2.9], &methods, None).unwrap();
        for row in rows {
            assert!((row.value.norm() - 1.0).abs() <= 1e-12);
        }
    }
}
