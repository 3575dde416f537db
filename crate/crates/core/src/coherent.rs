//! Coherent states, their projections into a sector, overlaps, and the
//! classical-ellipse parameterization of their labels.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::{Truncation, TwoModeState};
use crate::numeric::{kahan_sum, ln_factorial, ln_polar};
use crate::sector::{PhysicalState, SectorLabel};

/// A pair of complex mode labels (α, β). Each component reads q + ip in the
/// phase-plane coordinates of its mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoherentLabel {
    alpha: Complex64,
    beta: Complex64,
}

impl CoherentLabel {
    pub fn new(alpha: Complex64, beta: Complex64) -> Self {
        assert!(
            alpha.is_finite() && beta.is_finite(),
            "coherent labels must be finite"
        );
        Self { alpha, beta }
    }

    pub fn alpha(self) -> Complex64 {
        self.alpha
    }

    pub fn beta(self) -> Complex64 {
        self.beta
    }

    /// |α|² + |β|², the total mean occupation of the kinematical state.
    pub fn norm_sqr(self) -> f64 {
        self.alpha.norm_sqr() + self.beta.norm_sqr()
    }

    pub fn is_zero(self) -> bool {
        self.alpha == Complex64::ZERO && self.beta == Complex64::ZERO
    }

    /// Rotate both components by the common phase e^{iθ}.
    pub fn gauge(self, theta: f64) -> Self {
        let rot = Complex64::from_polar(1.0, theta);
        Self {
            alpha: self.alpha * rot,
            beta: self.beta * rot,
        }
    }
}

/// One value of the unphysical evolution parameter τ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhasePoint {
    pub tau: f64,
}

impl PhasePoint {
    pub fn new(tau: f64) -> Self {
        Self { tau }
    }
}

/// Classical ellipse data (A, B, φ_a, φ_b) satisfying A² + B² = 2M.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryParams {
    radius_a: f64,
    radius_b: f64,
    phase_a: f64,
    phase_b: f64,
    mass: u32,
}

impl TrajectoryParams {
    /// Build from explicit radii and phases, enforcing the shell condition
    /// A² + B² = 2M to 1e-12.
    pub fn new(
        radius_a: f64,
        radius_b: f64,
        phase_a: f64,
        phase_b: f64,
        mass: u32,
    ) -> Result<Self> {
        if mass < 1 {
            return Err(Error::InvalidMass(mass as i64));
        }
        assert!(
            radius_a >= 0.0 && radius_b >= 0.0,
            "ellipse radii must be non-negative"
        );
        let sum = radius_a * radius_a + radius_b * radius_b;
        let expected = 2.0 * mass as f64;
        if (sum - expected).abs() > 1e-12 {
            return Err(Error::OffShell { sum, expected });
        }
        Ok(Self {
            radius_a,
            radius_b,
            phase_a,
            phase_b,
            mass,
        })
    }

    /// Build from A² and the phase difference, deriving B² = 2M − A² so the
    /// result is on shell by construction; φ_a = Δφ, φ_b = 0.
    pub fn on_shell(mass: u32, a_squared: f64, delta_phi: f64) -> Result<Self> {
        if mass < 1 {
            return Err(Error::InvalidMass(mass as i64));
        }
        let expected = 2.0 * mass as f64;
        if !(0.0..=expected).contains(&a_squared) {
            return Err(Error::OffShell {
                sum: a_squared,
                expected,
            });
        }
        Ok(Self {
            radius_a: a_squared.sqrt(),
            radius_b: (expected - a_squared).sqrt(),
            phase_a: delta_phi,
            phase_b: 0.0,
            mass,
        })
    }

    pub fn radius_a(self) -> f64 {
        self.radius_a
    }

    pub fn radius_b(self) -> f64 {
        self.radius_b
    }

    pub fn phase_a(self) -> f64 {
        self.phase_a
    }

    pub fn phase_b(self) -> f64 {
        self.phase_b
    }

    pub fn mass(self) -> u32 {
        self.mass
    }

    pub fn delta_phi(self) -> f64 {
        self.phase_a - self.phase_b
    }

    /// The classical solution (A sin(τ+φ_a), B sin(τ+φ_b)) in the phase-plane
    /// coordinates of the labels (where each label component reads q + ip).
    pub fn position(self, tau: PhasePoint) -> (f64, f64) {
        (
            self.radius_a * (tau.tau + self.phase_a).sin(),
            self.radius_b * (tau.tau + self.phase_b).sin(),
        )
    }

    /// Where the *unprojected* coherent packet labelled by `label(tau)` is
    /// centered in the coordinates of the position-representation
    /// wavefunctions. Those wavefunctions diagonalize (x² − d²/dx²)/2 per
    /// axis, whose position operator is (a + a†)/√2, so the packet center is
    /// √2·Re of each label component — a √2 rescaling of the phase-plane
    /// ellipse of `position`.
    ///
    /// Note that projecting the packet onto a fixed-energy sector removes the
    /// radial freedom: the *projected* state's density concentrates around
    /// the classical ellipse of `position` itself (whose radii square-sum to
    /// the sector energy), not around this rescaled curve.
    pub fn packet_center(self, tau: PhasePoint) -> (f64, f64) {
        let label = self.label(tau);
        (
            std::f64::consts::SQRT_2 * label.alpha().re,
            std::f64::consts::SQRT_2 * label.beta().re,
        )
    }

    /// The coherent label riding the trajectory: α = A e^{−i(τ+φ_a)},
    /// β = B e^{−i(τ+φ_b)}.
    pub fn label(self, tau: PhasePoint) -> CoherentLabel {
        CoherentLabel::new(
            Complex64::from_polar(self.radius_a, -(tau.tau + self.phase_a)),
            Complex64::from_polar(self.radius_b, -(tau.tau + self.phase_b)),
        )
    }
}

/// Per-mode cutoff large enough that the discarded coherent tail mass is far
/// below 1e-12: mean + 10·√mean + 20, maximized over the two modes.
pub fn coherent_truncation(label: CoherentLabel) -> Truncation {
    let per_mode = |z: Complex64| {
        let mean = z.norm_sqr();
        (mean + 10.0 * mean.sqrt() + 20.0).ceil() as usize
    };
    let n_max = per_mode(label.alpha()).max(per_mode(label.beta()));
    Truncation::new(n_max).expect("tail rule yields n_max >= 20")
}

/// The truncated two-mode coherent state with amplitudes
/// e^{−(|α|²+|β|²)/2} α^{n_a} β^{n_b} / √(n_a! n_b!).
pub fn kinematical_coherent(label: CoherentLabel, trunc: Truncation) -> Result<TwoModeState> {
    let per_mode = trunc.per_mode();
    let mode_coeffs = |z: Complex64| {
        let mut coeffs = Vec::with_capacity(per_mode);
        let mut c = Complex64::new(1.0, 0.0);
        coeffs.push(c);
        for n in 1..per_mode {
            c = c * z / (n as f64).sqrt();
            coeffs.push(c);
        }
        coeffs
    };
    let coeff_a = mode_coeffs(label.alpha());
    let coeff_b = mode_coeffs(label.beta());
    let scale = (-label.norm_sqr() / 2.0).exp();
    let mut amp = vec![Complex64::ZERO; trunc.dim()];
    for (n_a, ca) in coeff_a.iter().enumerate() {
        for (n_b, cb) in coeff_b.iter().enumerate() {
            amp[trunc.index(n_a, n_b)] = scale * ca * cb;
        }
    }
    let state = TwoModeState::from_amplitudes(trunc, amp);
    // The untruncated norm is exactly 1, so the kept norm measures the tail.
    let kept = kahan_sum(state.amplitudes().iter().map(|c| c.norm_sqr()));
    let tail = 1.0 - kept;
    if tail > 1e-12 {
        return Err(Error::TruncationTail { tail });
    }
    Ok(state)
}

/// The unnormalized projection of the coherent state into the sector:
/// c_m = e^{−(|α|²+|β|²)/2} α^{j−m} β^{j+m} / √((j−m)!(j+m)!), evaluated in
/// the log domain so large sectors neither overflow nor lose precision.
pub fn physical_coherent(label: CoherentLabel, sector: SectorLabel) -> PhysicalState {
    let (ln_a, arg_a) = ln_polar(label.alpha());
    let (ln_b, arg_b) = ln_polar(label.beta());
    let offset = -label.norm_sqr() / 2.0;
    let amp = sector
        .m_values()
        .map(|m| {
            let (n_a, n_b) = (m.n_a(), m.n_b());
            if (n_a > 0 && ln_a == f64::NEG_INFINITY) || (n_b > 0 && ln_b == f64::NEG_INFINITY) {
                return Complex64::ZERO;
            }
            let mut ln_mag = offset - 0.5 * (ln_factorial(n_a) + ln_factorial(n_b));
            let mut phase = 0.0;
            if n_a > 0 {
                ln_mag += n_a as f64 * ln_a;
                phase += n_a as f64 * arg_a;
            }
            if n_b > 0 {
                ln_mag += n_b as f64 * ln_b;
                phase += n_b as f64 * arg_b;
            }
            Complex64::from_polar(ln_mag.exp(), phase)
        })
        .collect();
    PhysicalState::from_amplitudes(sector, amp)
}

/// Inner product of the two *normalized* sector projections, in closed form:
/// (conj(α₂)α₁ + conj(β₂)β₁)^{2j} / ((|α₂|²+|β₂|²)(|α₁|²+|β₁|²))^j.
/// The first argument is the bra and is conjugated.
pub fn overlap(bra: CoherentLabel, ket: CoherentLabel, sector: SectorLabel) -> Result<Complex64> {
    if bra.is_zero() || ket.is_zero() {
        return Err(Error::ZeroLabel);
    }
    let two_j = sector.two_j();
    if two_j == 0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let s = bra.alpha().conj() * ket.alpha() + bra.beta().conj() * ket.beta();
    if s == Complex64::ZERO {
        return Ok(Complex64::ZERO);
    }
    let t = two_j as f64;
    // For identical labels ln|S| and the mean log-norm cancel bit-exactly,
    // so the overlap comes out as exactly 1.
    let ln_mag = t * s.norm().ln() - t * ((bra.norm_sqr().ln() + ket.norm_sqr().ln()) / 2.0);
    Ok(Complex64::from_polar(ln_mag.exp(), t * s.arg()))
}

/// −log |overlap|² between the sector projections of two labels whose
/// component ratios α/β straddle the reference ratio 1 symmetrically,
/// differing by `delta`: (1 − δ/2, 1) against (1 + δ/2, 1). The symmetric
/// placement makes the exponent exactly even in δ, and the log-domain form
/// makes it exactly linear in 2j.
pub fn suppression_exponent(delta: f64, sector: SectorLabel) -> f64 {
    let lo = CoherentLabel::new(
        Complex64::new(1.0 - delta / 2.0, 0.0),
        Complex64::new(1.0, 0.0),
    );
    let hi = CoherentLabel::new(
        Complex64::new(1.0 + delta / 2.0, 0.0),
        Complex64::new(1.0, 0.0),
    );
    let s = hi.alpha().conj() * lo.alpha() + hi.beta().conj() * lo.beta();
    let per_spin = s.norm().ln() - (hi.norm_sqr().ln() + lo.norm_sqr().ln()) / 2.0;
    -2.0 * sector.two_j() as f64 * per_spin
}

/// Test oracle used across the suite: the normalized sector projection in its
/// closed form √((2j)!/((j−m)!(j+m)!)) α^{j−m} β^{j+m} / (|α|²+|β|²)^j,
/// evaluated by a path independent of `physical_coherent` + normalization.
#[cfg(test)]
pub(crate) fn normalized_closed_form(label: CoherentLabel, sector: SectorLabel) -> PhysicalState {
    use crate::numeric::complex_powi;

    let two_j = sector.two_j() as usize;
    let n = label.norm_sqr();
    let amp = sector
        .m_values()
        .map(|m| {
            let (n_a, n_b) = (m.n_a(), m.n_b());
            let ln_binom = 0.5 * (ln_factorial(two_j) - ln_factorial(n_a) - ln_factorial(n_b));
            let power =
                complex_powi(label.alpha(), n_a as u32) * complex_powi(label.beta(), n_b as u32);
            let ln_norm = -0.5 * two_j as f64 * n.ln();
            power * (ln_binom + ln_norm).exp()
        })
        .collect();
    PhysicalState::from_amplitudes(sector, amp)
}
