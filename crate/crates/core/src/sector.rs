//! The physical sector selected by the constraint.
//!
//! Fixing the mass constant M picks out the eigenspace n_a + n_b = M - 1.
//! With j = (M - 1)/2 its basis is labelled by a half-integer m running from
//! -j to j, mapped to occupations (n_a, n_b) = (j - m, j + m). Half-integers
//! are stored doubled (2m, 2j) so the arithmetic stays exact in integers.

use ndarray::Array2;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::{OperatorMatrix, Truncation, TwoModeState};

/// A physical sector: the mass constant M together with 2j = M - 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SectorLabel {
    mass: u32,
    two_j: u32,
}

impl SectorLabel {
    pub fn from_mass(mass: i64) -> Result<Self> {
        if mass < 1 {
            return Err(Error::InvalidMass(mass));
        }
        Ok(Self {
            mass: mass as u32,
            two_j: (mass - 1) as u32,
        })
    }

    pub fn mass(self) -> u32 {
        self.mass
    }

    pub fn two_j(self) -> u32 {
        self.two_j
    }

    pub fn j(self) -> f64 {
        self.two_j as f64 / 2.0
    }

    /// Dimension of the sector, 2j + 1 = M.
    pub fn dim(self) -> usize {
        self.mass as usize
    }

    /// Smallest per-mode cutoff that contains the whole sector.
    pub fn min_n_max(self) -> usize {
        self.two_j as usize
    }

    /// The m labels in ascending order.
    pub fn m_values(self) -> impl Iterator<Item = MQuantumNumber> {
        let two_j = self.two_j;
        (0..self.dim()).map(move |i| MQuantumNumber {
            two_m: 2 * i as i32 - two_j as i32,
            two_j,
        })
    }

    pub fn m_value(self, index: usize) -> MQuantumNumber {
        assert!(index < self.dim(), "m index {index} out of sector");
        MQuantumNumber {
            two_m: 2 * index as i32 - self.two_j as i32,
            two_j: self.two_j,
        }
    }
}

/// One basis label m of a sector, stored as (2m, 2j).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MQuantumNumber {
    two_m: i32,
    two_j: u32,
}

impl MQuantumNumber {
    pub fn two_m(self) -> i32 {
        self.two_m
    }

    pub fn m(self) -> f64 {
        self.two_m as f64 / 2.0
    }

    /// Occupation of mode A, j - m.
    pub fn n_a(self) -> usize {
        ((self.two_j as i32 - self.two_m) / 2) as usize
    }

    /// Occupation of mode B, j + m.
    pub fn n_b(self) -> usize {
        ((self.two_j as i32 + self.two_m) / 2) as usize
    }

    /// Position in ascending-m order; coincides with n_b.
    pub fn index(self) -> usize {
        self.n_b()
    }
}

/// Amplitudes over one sector's m basis, ascending in m.
#[derive(Debug, Clone, PartialEq)]
pub struct PhysicalState {
    sector: SectorLabel,
    amp: Vec<Complex64>,
}

impl PhysicalState {
    pub fn zero(sector: SectorLabel) -> Self {
        Self {
            sector,
            amp: vec![Complex64::ZERO; sector.dim()],
        }
    }

    pub fn from_amplitudes(sector: SectorLabel, amp: Vec<Complex64>) -> Self {
        assert_eq!(amp.len(), sector.dim(), "amplitude vector has wrong length");
        Self { sector, amp }
    }

    pub fn sector(&self) -> SectorLabel {
        self.sector
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amp
    }

    pub fn amplitude(&self, m: MQuantumNumber) -> Complex64 {
        self.amp[m.index()]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amp.iter().map(|c| c.norm_sqr()).sum()
    }

    /// <self|other>; the amplitudes of `self` are conjugated.
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        check_sector(self.sector, other.sector)?;
        Ok(self
            .amp
            .iter()
            .zip(&other.amp)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    pub fn normalized(&self) -> Result<Self> {
        let norm = self.norm_sqr().sqrt();
        if norm == 0.0 {
            return Err(Error::ZeroNorm);
        }
        Ok(Self {
            sector: self.sector,
            amp: self.amp.iter().map(|c| c / norm).collect(),
        })
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        Self {
            sector: self.sector,
            amp: self.amp.iter().map(|c| c * factor).collect(),
        }
    }

    /// Write the sector amplitudes into the two-mode basis. The result is
    /// annihilated by the constraint of the same sector by construction.
    pub fn embed(&self, trunc: Truncation) -> Result<TwoModeState> {
        if trunc.n_max() < self.sector.min_n_max() {
            return Err(Error::TruncationTooSmall {
                n_max: trunc.n_max(),
                required: self.sector.min_n_max(),
            });
        }
        let mut amp = vec![Complex64::ZERO; trunc.dim()];
        for m in self.sector.m_values() {
            amp[trunc.index(m.n_a(), m.n_b())] = self.amp[m.index()];
        }
        Ok(TwoModeState::from_amplitudes(trunc, amp))
    }
}

fn check_sector(left: SectorLabel, right: SectorLabel) -> Result<()> {
    if left != right {
        return Err(Error::SectorMismatch {
            traj: left.mass(),
            sector: right.mass(),
        });
    }
    Ok(())
}

/// The two-mode basis vector carrying the label m.
pub fn basis_embedding(m: MQuantumNumber, trunc: Truncation) -> Result<TwoModeState> {
    TwoModeState::basis(trunc, m.n_a(), m.n_b())
}

/// Projector onto the sector, assembled state by state from the basis map.
pub fn projector_spectral(sector: SectorLabel, trunc: Truncation) -> Result<OperatorMatrix> {
    if trunc.n_max() < sector.min_n_max() {
        return Err(Error::TruncationTooSmall {
            n_max: trunc.n_max(),
            required: sector.min_n_max(),
        });
    }
    let mut mat = Array2::zeros((trunc.dim(), trunc.dim()));
    for m in sector.m_values() {
        let idx = trunc.index(m.n_a(), m.n_b());
        mat[[idx, idx]] = Complex64::new(1.0, 0.0);
    }
    Ok(OperatorMatrix::from_parts(trunc, mat, true))
}

/// Projector onto the sector as the uniform average of exp(-i tau H) over a
/// full period of the constraint flow.
///
/// The constraint spectrum is integer, so the equally spaced average is a
/// discrete Fourier sum: it is exact (not merely convergent) once `steps`
/// outruns every eigenvalue. Fewer steps alias some excited level onto the
/// sector, which is rejected up front.
pub fn projector_group_average(
    sector: SectorLabel,
    trunc: Truncation,
    steps: usize,
) -> Result<OperatorMatrix> {
    if trunc.n_max() < sector.min_n_max() {
        return Err(Error::TruncationTooSmall {
            n_max: trunc.n_max(),
            required: sector.min_n_max(),
        });
    }
    let mass = sector.mass() as i64;
    let top = 2 * trunc.n_max() as i64 + 1 - mass;
    let spread = top.abs().max((1 - mass).abs()) as usize;
    let required = 2 * spread + 1;
    if steps < required {
        return Err(Error::StepsTooSmall { steps, required });
    }

    let mut mat = Array2::zeros((trunc.dim(), trunc.dim()));
    let step = std::f64::consts::TAU / steps as f64;
    for n_a in 0..trunc.per_mode() {
        for n_b in 0..trunc.per_mode() {
            let idx = trunc.index(n_a, n_b);
            let e = (n_a + n_b + 1) as f64 - mass as f64;
            let mut acc = Complex64::ZERO;
            for k in 0..steps {
                acc += Complex64::from_polar(1.0, -(k as f64) * step * e);
            }
            mat[[idx, idx]] = acc / steps as f64;
        }
    }
    let hermitian = {
        // The quadrature leaves rounding-level imaginary parts on the
        // diagonal, so the flag is measured rather than asserted.
        let defect = (0..trunc.dim())
            .map(|i| mat[[i, i]].im.abs())
            .fold(0.0, f64::max);
        defect <= 1e-14
    };
    Ok(OperatorMatrix::from_parts(trunc, mat, hermitian))
}

/// Read the sector amplitudes out of a two-mode state.
pub fn project(state: &TwoModeState, sector: SectorLabel) -> Result<PhysicalState> {
    if state.trunc().n_max() < sector.min_n_max() {
        return Err(Error::TruncationTooSmall {
            n_max: state.trunc().n_max(),
            required: sector.min_n_max(),
        });
    }
    let amp = sector
        .m_values()
        .map(|m| state.amplitude(m.n_a(), m.n_b()))
        .collect();
    Ok(PhysicalState::from_amplitudes(sector, amp))
}
