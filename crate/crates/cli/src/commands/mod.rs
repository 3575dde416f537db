//! The four subcommands, plus the small parsers they share.

pub mod correlator;
pub mod kernel;
pub mod overlap;
pub mod validate;

use crate::errors::CliError;
use duosc_core::{SectorLabel, TrajectoryParams};
use std::str::FromStr;

/// An inclusive 1-D grid written as `start:stop:steps`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Range1D {
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
}

impl Range1D {
    /// The grid points, endpoint-inclusive; a single-step range is just its
    /// start.
    pub fn points(self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.start];
        }
        let width = (self.stop - self.start) / (self.steps - 1) as f64;
        (0..self.steps)
            .map(|i| self.start + width * i as f64)
            .collect()
    }
}

impl FromStr for Range1D {
    type Err = String;

    fn from_str(text: &str) -> Result<Self, String> {
        let parts: Vec<&str> = text.split(':').collect();
        let [start, stop, steps] = parts.as_slice() else {
            return Err(format!("expected start:stop:steps, got '{text}'"));
        };
        let start: f64 = start
            .parse()
            .map_err(|_| format!("range start '{start}' is not a number"))?;
        let stop: f64 = stop
            .parse()
            .map_err(|_| format!("range stop '{stop}' is not a number"))?;
        let steps: usize = steps
            .parse()
            .map_err(|_| format!("range steps '{steps}' is not a positive integer"))?;
        if !start.is_finite() || !stop.is_finite() {
            return Err(format!("range endpoints must be finite, got '{text}'"));
        }
        if steps == 0 {
            return Err("range steps must be at least 1".to_string());
        }
        if steps > 1 && stop <= start {
            return Err(format!(
                "a multi-step range needs stop > start, got '{text}'"
            ));
        }
        Ok(Range1D { start, stop, steps })
    }
}

/// Resolve the sector and the on-shell trajectory from the shared flags.
/// The second radius is always derived as B² = 2M − A²; an A² outside
/// [0, 2M] is an argument error.
pub fn resolve_trajectory(
    mass: u32,
    a_squared: Option<f64>,
    delta_phi: f64,
) -> Result<(SectorLabel, TrajectoryParams), CliError> {
    let sector = SectorLabel::from_mass(mass as i64)
        .map_err(|error| CliError::usage(format!("--mass: {error}")))?;
    let a_squared = a_squared.unwrap_or(mass as f64);
    if !a_squared.is_finite() || !(0.0..=2.0 * mass as f64).contains(&a_squared) {
        return Err(CliError::usage(format!(
            "--a-squared must lie in [0, 2M] = [0, {}], got {a_squared}",
            2 * mass
        )));
    }
    if !delta_phi.is_finite() {
        return Err(CliError::usage("--delta-phi must be finite".to_string()));
    }
    let traj = TrajectoryParams::on_shell(mass, a_squared, delta_phi)
        .map_err(|error| CliError::usage(format!("trajectory parameters rejected: {error}")))?;
    Ok((sector, traj))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges_parse_and_enumerate() {
        let r: Range1D = "0:1:5".parse().unwrap();
        assert_eq!(r.points(), vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        let single: Range1D = "2.5:9:1".parse().unwrap();
        assert_eq!(single.points(), vec![2.5]);
        let negative: Range1D = "-3:3:7".parse().unwrap();
        assert_eq!(negative.points()[0], -3.0);
        assert_eq!(*negative.points().last().unwrap(), 3.0);
    }

    #[test]
    fn bad_ranges_are_rejected() {
        assert!("0:1".parse::<Range1D>().is_err());
        assert!("0:1:0".parse::<Range1D>().is_err());
        assert!("1:0:5".parse::<Range1D>().is_err());
        assert!("a:1:5".parse::<Range1D>().is_err());
        assert!("0:inf:5".parse::<Range1D>().is_err());
    }

    #[test]
    fn trajectory_resolution_enforces_the_shell() {
        assert!(resolve_trajectory(4, Some(9.0), 0.0).is_err());
        assert!(resolve_trajectory(0, None, 0.0).is_err());
        let (sector, traj) = resolve_trajectory(4, Some(6.0), 0.25).unwrap();
        assert_eq!(sector.mass(), 4);
        assert!((traj.radius_b().powi(2) - 2.0).abs() <= 1e-12);
        let (_, default_radii) = resolve_trajectory(4, None, 0.0).unwrap();
        assert!((default_radii.radius_a().powi(2) - 4.0).abs() <= 1e-12);
    }
}
