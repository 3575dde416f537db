//! The two-point function computed along independent routes: an operator
//! sandwich on the truncated space, a closed form in the labels, the
//! trajectory parameterization, its large-mass simplification, and a
//! single-oscillator reference value — plus gauge-invariance reporting.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::coherent::{overlap, physical_coherent, CoherentLabel, PhasePoint, TrajectoryParams};
use crate::error::{Error, Result};
use crate::fock::{OperatorMatrix, Truncation};
use crate::numeric::ln_polar;
use crate::sector::{projector_spectral, SectorLabel};

/// Evaluation route of a two-point value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    BruteForce,
    ClosedForm,
    Trajectory,
    Semiclassical,
    Quadrature,
}

impl Method {
    pub const ALL: [Method; 5] = [
        Method::BruteForce,
        Method::ClosedForm,
        Method::Trajectory,
        Method::Semiclassical,
        Method::Quadrature,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Method::BruteForce => "bruteforce",
            Method::ClosedForm => "closed",
            Method::Trajectory => "trajectory",
            Method::Semiclassical => "semiclassical",
            Method::Quadrature => "quadrature",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(token: &str) -> std::result::Result<Self, Self::Err> {
        match token {
            "bruteforce" => Ok(Method::BruteForce),
            "closed" => Ok(Method::ClosedForm),
            "trajectory" => Ok(Method::Trajectory),
            "semiclassical" => Ok(Method::Semiclassical),
            "quadrature" => Ok(Method::Quadrature),
            other => Err(format!(
                "unknown method '{other}' (expected bruteforce, closed, trajectory, \
                 semiclassical, or quadrature)"
            )),
        }
    }
}

/// A two-point value together with its provenance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelatorResult {
    pub value: Complex64,
    pub method: Method,
    pub sector: SectorLabel,
}

/// Two phase points on one classical trajectory; the ket rides τ₁ and the
/// bra rides τ₂, so the correlation depends on Δτ = τ₁ − τ₂.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryPair {
    traj: TrajectoryParams,
    tau1: PhasePoint,
    tau2: PhasePoint,
}

impl TrajectoryPair {
    pub fn new(traj: TrajectoryParams, tau1: PhasePoint, tau2: PhasePoint) -> Self {
        Self { traj, tau1, tau2 }
    }

    pub fn traj(self) -> TrajectoryParams {
        self.traj
    }

    pub fn tau1(self) -> PhasePoint {
        self.tau1
    }

    pub fn tau2(self) -> PhasePoint {
        self.tau2
    }

    pub fn delta_tau(self) -> f64 {
        self.tau1.tau - self.tau2.tau
    }

    pub fn ket_label(self) -> CoherentLabel {
        self.traj.label(self.tau1)
    }

    pub fn bra_label(self) -> CoherentLabel {
        self.traj.label(self.tau2)
    }
}

/// Mass, frequency, and the two times of the reference single-oscillator
/// correlator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShoParams {
    pub mass: f64,
    pub omega: f64,
    pub t1: f64,
    pub t2: f64,
}

impl ShoParams {
    pub fn new(mass: f64, omega: f64, t1: f64, t2: f64) -> Self {
        assert!(
            mass > 0.0 && omega > 0.0,
            "mass and frequency must be positive"
        );
        Self {
            mass,
            omega,
            t1,
            t2,
        }
    }
}

/// λ²(a_A a_B† + a_A† a_B): the part of the insertion that commutes with the
/// constraint (it conserves n_a + n_b).
pub fn gauge_invariant_part(scale: f64, trunc: Truncation) -> OperatorMatrix {
    let per_mode = trunc.per_mode();
    let s2 = scale * scale;
    let mut mat = ndarray::Array2::zeros((trunc.dim(), trunc.dim()));
    for n_a in 0..per_mode {
        for n_b in 0..per_mode {
            let col = trunc.index(n_a, n_b);
            if n_a >= 1 && n_b + 1 < per_mode {
                let row = trunc.index(n_a - 1, n_b + 1);
                mat[[row, col]] += Complex64::new(s2 * ((n_a * (n_b + 1)) as f64).sqrt(), 0.0);
            }
            if n_b >= 1 && n_a + 1 < per_mode {
                let row = trunc.index(n_a + 1, n_b - 1);
                mat[[row, col]] += Complex64::new(s2 * ((n_b * (n_a + 1)) as f64).sqrt(), 0.0);
            }
        }
    }
    OperatorMatrix::from_parts(trunc, mat, true)
}

/// The operator sandwich ⟨bra| Q P Q |ket⟩ between normalized sector
/// projections, evaluated on a truncation with n_max = M + 2 so no
/// intermediate state touches the cutoff.
pub fn two_point_bruteforce(
    ket: CoherentLabel,
    bra: CoherentLabel,
    sector: SectorLabel,
    scale: f64,
) -> Result<CorrelatorResult> {
    if ket.is_zero() || bra.is_zero() {
        return Err(Error::ZeroLabel);
    }
    let trunc = Truncation::new(sector.mass() as usize + 2)?;
    let ket_state = physical_coherent(ket, sector).normalized()?.embed(trunc)?;
    let bra_state = physical_coherent(bra, sector).normalized()?.embed(trunc)?;
    let insertion = OperatorMatrix::insertion(scale, trunc);
    let projector = projector_spectral(sector, trunc)?;
    let inserted = insertion.apply(&ket_state)?;
    let projected = projector.apply(&inserted)?;
    let value = bra_state.inner(&insertion.apply(&projected)?)?;
    Ok(CorrelatorResult {
        value,
        method: Method::BruteForce,
        sector,
    })
}

/// The closed form in the labels, with S = conj(α₂)α₁ + conj(β₂)β₁ and
/// X = conj(β₂)α₁ + conj(α₂)β₁:
///
///   G = [2j(2j−1)·S^{2j−2}·X² + 2j·S^{2j}] / ((|α₂|²+|β₂|²)(|α₁|²+|β₁|²))^j
///
/// The (2j−1) factor is kept multiplied through, so j = 1/2 is regular and
/// reduces to the overlap. Powers are taken in the log domain.
pub fn two_point_closed_form(
    ket: CoherentLabel,
    bra: CoherentLabel,
    sector: SectorLabel,
) -> Result<CorrelatorResult> {
    if ket.is_zero() || bra.is_zero() {
        return Err(Error::ZeroLabel);
    }
    let two_j = sector.two_j();
    let t = two_j as f64;
    let mut value = overlap(bra, ket, sector)? * t;
    let cross = bra.beta().conj() * ket.alpha() + bra.alpha().conj() * ket.beta();
    if two_j >= 2 && cross != Complex64::ZERO {
        let s = bra.alpha().conj() * ket.alpha() + bra.beta().conj() * ket.beta();
        if two_j == 2 || s != Complex64::ZERO {
            let ln_norms = (bra.norm_sqr().ln() + ket.norm_sqr().ln()) / 2.0;
            let (ln_cross, arg_cross) = ln_polar(cross);
            let mut ln_mag = (t * (t - 1.0)).ln() + 2.0 * ln_cross - t * ln_norms;
            let mut arg = 2.0 * arg_cross;
            if two_j > 2 {
                let (ln_s, arg_s) = ln_polar(s);
                ln_mag += (t - 2.0) * ln_s;
                arg += (t - 2.0) * arg_s;
            }
            value += Complex64::from_polar(ln_mag.exp(), arg);
        }
    }
    Ok(CorrelatorResult {
        value,
        method: Method::ClosedForm,
        sector,
    })
}

/// The trajectory form: [2j(2j−1)·A²B²cos²Δφ/M² + 2j]·e^{−i·2j·Δτ}. The
/// bracket keeps the (2j−1) factor multiplied through, so j = 1/2 gives
/// exactly e^{−iΔτ} for any on-shell radii.
pub fn two_point_trajectory(pair: TrajectoryPair, sector: SectorLabel) -> Result<CorrelatorResult> {
    if pair.traj().mass() != sector.mass() {
        return Err(Error::SectorMismatch {
            traj: pair.traj().mass(),
            sector: sector.mass(),
        });
    }
    let t = sector.two_j() as f64;
    let mass = sector.mass() as f64;
    let a2 = pair.traj().radius_a() * pair.traj().radius_a();
    let b2 = pair.traj().radius_b() * pair.traj().radius_b();
    let cos = pair.traj().delta_phi().cos();
    let modulus = t * (t - 1.0) * a2 * b2 * cos * cos / (mass * mass) + t;
    Ok(CorrelatorResult {
        value: Complex64::from_polar(modulus, -t * pair.delta_tau()),
        method: Method::Trajectory,
        sector,
    })
}

/// The large-mass simplification (A²B²cos²Δφ + M)·e^{−iMΔτ}. Note its phase
/// frequency is M while the exact form rotates at 2j = M − 1, so moduli are
/// the meaningful comparison away from Δτ = 0.
pub fn two_point_semiclassical(pair: TrajectoryPair, mass: u32) -> CorrelatorResult {
    let sector = SectorLabel::from_mass(mass as i64).expect("mass must be at least 1");
    let a2 = pair.traj().radius_a() * pair.traj().radius_a();
    let b2 = pair.traj().radius_b() * pair.traj().radius_b();
    let cos = pair.traj().delta_phi().cos();
    let m = mass as f64;
    let modulus = a2 * b2 * cos * cos + m;
    CorrelatorResult {
        value: Complex64::from_polar(modulus, -m * pair.delta_tau()),
        method: Method::Semiclassical,
        sector,
    }
}

/// Ground-state two-point value of a single oscillator:
/// (1/(2mω))·e^{−i(3/2)ω(t₁−t₂)}, the 3/2 being the first-excited energy
/// with the vacuum offset included.
pub fn sho_two_point(params: ShoParams) -> Complex64 {
    assert!(
        params.mass > 0.0 && params.omega > 0.0,
        "mass and frequency must be positive"
    );
    let amplitude = 1.0 / (2.0 * params.mass * params.omega);
    Complex64::from_polar(amplitude, -1.5 * params.omega * (params.t1 - params.t2))
}

/// One gauge angle with its two-point value and distance from the reference.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaugeSample {
    pub theta: f64,
    pub value: Complex64,
    pub deviation: f64,
}

/// The θ = 0 value and the sweep of simultaneously rotated labels.
#[derive(Debug, Clone, PartialEq)]
pub struct GaugeReport {
    pub reference: Complex64,
    pub samples: Vec<GaugeSample>,
    pub max_deviation: f64,
}

/// Rotate both boundary labels by each θ and measure how far the operator
/// sandwich moves from its unrotated value.
pub fn gauge_invariance_report(
    pair: TrajectoryPair,
    sector: SectorLabel,
    thetas: &[f64],
) -> Result<GaugeReport> {
    let ket = pair.ket_label();
    let bra = pair.bra_label();
    let reference = two_point_bruteforce(ket, bra, sector, 1.0)?.value;
    let mut samples = Vec::with_capacity(thetas.len());
    let mut max_deviation = 0.0f64;
    for &theta in thetas {
        let value = two_point_bruteforce(ket.gauge(theta), bra.gauge(theta), sector, 1.0)?.value;
        let deviation = (value - reference).norm();
        max_deviation = max_deviation.max(deviation);
        samples.push(GaugeSample {
            theta,
            value,
            deviation,
        });
    }
    Ok(GaugeReport {
        reference,
        samples,
        max_deviation,
    })
}
