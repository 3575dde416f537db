//! Truncated two-mode Fock space: states, ladder operators, the constraint.
//!
//! Both modes share one per-mode occupation cutoff. Raising past the cutoff
//! maps to the zero vector (hard spectral truncation), so every operator here
//! is an honest finite matrix and no amplitude ever leaks out of the basis.

use ndarray::{Array1, Array2};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::sector::SectorLabel;

/// Per-mode occupation cutoff. The basis is every |n_a, n_b| with both
/// occupations <= n_max, ordered row-major with n_a outermost.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Truncation {
    n_max: usize,
}

impl Truncation {
    pub fn new(n_max: usize) -> Result<Self> {
        if n_max < 1 {
            return Err(Error::TruncationTooSmall { n_max, required: 1 });
        }
        Ok(Self { n_max })
    }

    pub fn n_max(self) -> usize {
        self.n_max
    }

    /// Number of occupation values per mode, n_max + 1.
    pub fn per_mode(self) -> usize {
        self.n_max + 1
    }

    pub fn dim(self) -> usize {
        self.per_mode() * self.per_mode()
    }

    pub fn index(self, n_a: usize, n_b: usize) -> usize {
        debug_assert!(n_a <= self.n_max && n_b <= self.n_max);
        n_a * self.per_mode() + n_b
    }

    pub fn occupations(self, index: usize) -> (usize, usize) {
        debug_assert!(index < self.dim());
        (index / self.per_mode(), index % self.per_mode())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    A,
    B,
}

/// A vector over the truncated |n_a, n_b| basis.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoModeState {
    trunc: Truncation,
    amp: Array1<Complex64>,
}

impl TwoModeState {
    pub fn zero(trunc: Truncation) -> Self {
        Self {
            trunc,
            amp: Array1::zeros(trunc.dim()),
        }
    }

    pub fn basis(trunc: Truncation, n_a: usize, n_b: usize) -> Result<Self> {
        let required = n_a.max(n_b);
        if required > trunc.n_max() {
            return Err(Error::TruncationTooSmall {
                n_max: trunc.n_max(),
                required,
            });
        }
        let mut state = Self::zero(trunc);
        state.amp[trunc.index(n_a, n_b)] = Complex64::new(1.0, 0.0);
        Ok(state)
    }

    pub fn from_amplitudes(trunc: Truncation, amp: Vec<Complex64>) -> Self {
        assert_eq!(amp.len(), trunc.dim(), "amplitude vector has wrong length");
        Self {
            trunc,
            amp: Array1::from_vec(amp),
        }
    }

    pub fn trunc(&self) -> Truncation {
        self.trunc
    }

    pub fn amplitudes(&self) -> &Array1<Complex64> {
        &self.amp
    }

    pub fn amplitude(&self, n_a: usize, n_b: usize) -> Complex64 {
        self.amp[self.trunc.index(n_a, n_b)]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amp.iter().map(|c| c.norm_sqr()).sum()
    }

    /// <self|other>; the amplitudes of `self` are conjugated.
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        check_trunc(self.trunc, other.trunc)?;
        Ok(self
            .amp
            .iter()
            .zip(other.amp.iter())
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        Self {
            trunc: self.trunc,
            amp: self.amp.mapv(|c| c * factor),
        }
    }

    pub fn plus(&self, other: &Self) -> Result<Self> {
        check_trunc(self.trunc, other.trunc)?;
        Ok(Self {
            trunc: self.trunc,
            amp: &self.amp + &other.amp,
        })
    }
}

fn check_trunc(left: Truncation, right: Truncation) -> Result<()> {
    if left != right {
        return Err(Error::TruncationMismatch {
            left: left.n_max(),
            right: right.n_max(),
        });
    }
    Ok(())
}

/// Dense operator over the truncated basis.
///
/// `hermitian` records that the constructor checked M = M^dagger entrywise;
/// generic products leave it unset rather than re-checking.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    trunc: Truncation,
    mat: Array2<Complex64>,
    hermitian: bool,
}

impl OperatorMatrix {
    fn new(trunc: Truncation, mat: Array2<Complex64>, hermitian: bool) -> Self {
        if hermitian {
            debug_assert!(hermitian_defect(&mat) <= 1e-14);
        }
        Self {
            trunc,
            mat,
            hermitian,
        }
    }

    pub fn identity(trunc: Truncation) -> Self {
        Self::new(trunc, Array2::eye(trunc.dim()), true)
    }

    /// Annihilation operator of one mode: a|n> = sqrt(n) |n-1>.
    pub fn lowering(mode: Mode, trunc: Truncation) -> Self {
        let mut mat = Array2::zeros((trunc.dim(), trunc.dim()));
        for n_a in 0..trunc.per_mode() {
            for n_b in 0..trunc.per_mode() {
                let col = trunc.index(n_a, n_b);
                let (n, row) = match mode {
                    Mode::A if n_a > 0 => (n_a, trunc.index(n_a - 1, n_b)),
                    Mode::B if n_b > 0 => (n_b, trunc.index(n_a, n_b - 1)),
                    _ => continue,
                };
                mat[[row, col]] = Complex64::new((n as f64).sqrt(), 0.0);
            }
        }
        Self::new(trunc, mat, false)
    }

    /// Creation operator. The top rung |n_max> is mapped to zero, which keeps
    /// the matrix inside the truncation instead of aliasing it back.
    pub fn raising(mode: Mode, trunc: Truncation) -> Self {
        let mut mat = Array2::zeros((trunc.dim(), trunc.dim()));
        for n_a in 0..trunc.per_mode() {
            for n_b in 0..trunc.per_mode() {
                let col = trunc.index(n_a, n_b);
                let (n, row) = match mode {
                    Mode::A if n_a < trunc.n_max() => (n_a + 1, trunc.index(n_a + 1, n_b)),
                    Mode::B if n_b < trunc.n_max() => (n_b + 1, trunc.index(n_a, n_b + 1)),
                    _ => continue,
                };
                mat[[row, col]] = Complex64::new((n as f64).sqrt(), 0.0);
            }
        }
        Self::new(trunc, mat, false)
    }

    pub fn number(mode: Mode, trunc: Truncation) -> Self {
        let mut mat = Array2::zeros((trunc.dim(), trunc.dim()));
        for n_a in 0..trunc.per_mode() {
            for n_b in 0..trunc.per_mode() {
                let idx = trunc.index(n_a, n_b);
                let n = match mode {
                    Mode::A => n_a,
                    Mode::B => n_b,
                };
                mat[[idx, idx]] = Complex64::new(n as f64, 0.0);
            }
        }
        Self::new(trunc, mat, true)
    }

    /// The constraint N_a + N_b + 1 - M, diagonal in the occupation basis.
    /// Its kernel inside the truncation is the physical sector.
    pub fn hamiltonian_constraint(sector: SectorLabel, trunc: Truncation) -> Result<Self> {
        let mass = sector.mass() as usize;
        if trunc.n_max() < mass {
            return Err(Error::TruncationTooSmall {
                n_max: trunc.n_max(),
                required: mass,
            });
        }
        let mut mat = Array2::zeros((trunc.dim(), trunc.dim()));
        for n_a in 0..trunc.per_mode() {
            for n_b in 0..trunc.per_mode() {
                let idx = trunc.index(n_a, n_b);
                let e = (n_a + n_b + 1) as f64 - mass as f64;
                mat[[idx, idx]] = Complex64::new(e, 0.0);
            }
        }
        Ok(Self::new(trunc, mat, true))
    }

    /// Correlator insertion scale^2 (a_A + a_A^dag)(a_B + a_B^dag).
    ///
    /// Built entry by entry from the Kronecker structure: the two factors act
    /// on different modes, so every matrix element is one product of two
    /// square roots and hermiticity holds bit for bit.
    pub fn insertion(scale: f64, trunc: Truncation) -> Self {
        let s2 = scale * scale;
        let x = |row: usize, col: usize| -> f64 {
            if row + 1 == col {
                (col as f64).sqrt()
            } else if row == col + 1 {
                (row as f64).sqrt()
            } else {
                0.0
            }
        };
        let mut mat = Array2::zeros((trunc.dim(), trunc.dim()));
        for na_r in 0..trunc.per_mode() {
            for na_c in 0..trunc.per_mode() {
                let xa = x(na_r, na_c);
                if xa == 0.0 {
                    continue;
                }
                for nb_r in 0..trunc.per_mode() {
                    for nb_c in 0..trunc.per_mode() {
                        let xb = x(nb_r, nb_c);
                        if xb == 0.0 {
                            continue;
                        }
                        mat[[trunc.index(na_r, nb_r), trunc.index(na_c, nb_c)]] =
                            Complex64::new(s2 * (xa * xb), 0.0);
                    }
                }
            }
        }
        Self::new(trunc, mat, true)
    }

    pub fn trunc(&self) -> Truncation {
        self.trunc
    }

    pub fn matrix(&self) -> &Array2<Complex64> {
        &self.mat
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.mat[[row, col]]
    }

    pub fn hermitian(&self) -> bool {
        self.hermitian
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        hermitian_defect(&self.mat) <= tol
    }

    pub fn apply(&self, state: &TwoModeState) -> Result<TwoModeState> {
        check_trunc(self.trunc, state.trunc)?;
        Ok(TwoModeState {
            trunc: self.trunc,
            amp: self.mat.dot(&state.amp),
        })
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        check_trunc(self.trunc, other.trunc)?;
        Ok(Self::new(self.trunc, self.mat.dot(&other.mat), false))
    }

    pub fn adjoint(&self) -> Self {
        Self::new(self.trunc, self.mat.t().mapv(|c| c.conj()), self.hermitian)
    }

    pub fn trace(&self) -> Complex64 {
        self.mat.diag().sum()
    }

    /// Largest entrywise difference, the norm used by the equivalence tests.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        check_trunc(self.trunc, other.trunc)?;
        Ok(self
            .mat
            .iter()
            .zip(other.mat.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    pub(crate) fn from_parts(trunc: Truncation, mat: Array2<Complex64>, hermitian: bool) -> Self {
        Self::new(trunc, mat, hermitian)
    }
}

fn hermitian_defect(mat: &Array2<Complex64>) -> f64 {
    let n = mat.nrows();
    let mut worst = 0.0_f64;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((mat[[i, j]] - mat[[j, i]].conj()).norm());
        }
    }
    worst
}
