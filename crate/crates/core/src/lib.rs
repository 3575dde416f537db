//! Numerical core for a pair of harmonic oscillators tied together by a
//! number-sum constraint.
//!
//! The library builds the constrained model from several independent
//! directions — explicit operator algebra on the truncated Fock space,
//! closed-form expressions in coherent labels, a trajectory parameterization,
//! a semiclassical limit, and position-space quadrature — so that each route
//! can serve as a cross-check on the others.

pub mod coherent;
pub mod correlator;
pub mod error;
pub mod fock;
pub mod hermite;
pub mod position;
pub mod sector;

pub(crate) mod numeric;

pub use coherent::{
    coherent_truncation, kinematical_coherent, overlap, physical_coherent, suppression_exponent,
    CoherentLabel, PhasePoint, TrajectoryParams,
};
pub use correlator::{
    gauge_invariance_report, gauge_invariant_part, sho_two_point, two_point_bruteforce,
    two_point_closed_form, two_point_semiclassical, two_point_trajectory, CorrelatorResult,
    GaugeReport, GaugeSample, Method, ShoParams, TrajectoryPair,
};
pub use error::{Error, Result};
pub use fock::{Mode, OperatorMatrix, Truncation, TwoModeState};
pub use hermite::{
    gauss_hermite_rule, hermite_function, hermite_functions, hermite_polynomial,
    hermite_polynomials, QuadratureRule,
};
pub use position::{evaluate_physical_state, kernel, two_point_quadrature, wavefunction_m};
pub use sector::{
    basis_embedding, project, projector_group_average, projector_spectral, MQuantumNumber,
    PhysicalState, SectorLabel,
};
