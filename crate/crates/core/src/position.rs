//! Position representation: sector wavefunctions on the plane, the
//! reproducing kernel of the sector projector, and the quadrature route to
//! the two-point function.

use num_complex::Complex64;

use crate::coherent::{physical_coherent, CoherentLabel};
use crate::correlator::{CorrelatorResult, Method};
use crate::error::{Error, Result};
use crate::hermite::{hermite_functions, hermite_polynomials, QuadratureRule};
use crate::sector::{MQuantumNumber, PhysicalState, SectorLabel};

/// The sector wavefunction ψ_m(q_a, q_b) = h_{j−m}(q_a) · h_{j+m}(q_b),
/// following the occupation map (n_a, n_b) = (j−m, j+m).
pub fn wavefunction_m(m: MQuantumNumber, q_a: f64, q_b: f64) -> f64 {
    crate::hermite::hermite_function(m.n_a(), q_a) * crate::hermite::hermite_function(m.n_b(), q_b)
}

/// The integral kernel of the sector projector,
/// K(x, x′) = Σ_m ψ_m(q_a, q_b) ψ_m(q_a′, q_b′).
///
/// Terms are grouped in (m, −m) pairs so the value is bit-identical under the
/// axis swap (q_a, q_b, q_a′, q_b′) → (q_b, q_a, q_b′, q_a′), which relabels
/// m → −m, as well as under the primed/unprimed exchange.
pub fn kernel(sector: SectorLabel, q_a: f64, q_b: f64, q_a_prime: f64, q_b_prime: f64) -> f64 {
    let two_j = sector.two_j() as usize;
    let ha = hermite_functions(two_j, q_a);
    let hb = hermite_functions(two_j, q_b);
    let hap = hermite_functions(two_j, q_a_prime);
    let hbp = hermite_functions(two_j, q_b_prime);
    // index i = n_b, so n_a = 2j − i
    let term = |i: usize| (ha[two_j - i] * hb[i]) * (hap[two_j - i] * hbp[i]);
    let dim = sector.dim();
    let mut acc = 0.0;
    for i in 0..dim / 2 {
        acc += term(i) + term(two_j - i);
    }
    if dim % 2 == 1 {
        acc += term(dim / 2);
    }
    acc
}

/// Σ_m c_m ψ_m(q_a, q_b): the state's position-space value.
pub fn evaluate_physical_state(state: &PhysicalState, q_a: f64, q_b: f64) -> Complex64 {
    let sector = state.sector();
    let two_j = sector.two_j() as usize;
    let ha = hermite_functions(two_j, q_a);
    let hb = hermite_functions(two_j, q_b);
    sector
        .m_values()
        .map(|m| state.amplitude(m) * (ha[m.n_a()] * hb[m.n_b()]))
        .sum()
}

/// The two-point value as a 4-dimensional position integral, factorized
/// through the kernel's separable sum so it reduces to 1-D Gauss–Hermite
/// sums. The per-axis insertion is √2·x, matching the operator calibration,
/// and each pair of wavefunction Gaussians is absorbed into the quadrature
/// weight, so the rule is exact once its order reaches 2j + 3.
pub fn two_point_quadrature(
    ket: CoherentLabel,
    bra: CoherentLabel,
    sector: SectorLabel,
    rule: &QuadratureRule,
) -> Result<CorrelatorResult> {
    if ket.is_zero() || bra.is_zero() {
        return Err(Error::ZeroLabel);
    }
    let two_j = sector.two_j() as usize;
    let required = two_j + 3;
    if rule.order() < required {
        return Err(Error::OrderTooSmall {
            order: rule.order(),
            required,
        });
    }

    // t[k][l] = √2 Σ_i w_i p_k(x_i) x_i p_l(x_i), the per-axis insertion
    // matrix between Hermite functions; compensated summation keeps the
    // entries stable at the last bit across admissible rule orders.
    let dim = two_j + 1;
    let mut sums = vec![(0.0f64, 0.0f64); dim * dim];
    for (idx, &x) in rule.nodes().iter().enumerate() {
        let w = rule.weights()[idx];
        let p = hermite_polynomials(two_j, x);
        for k in 0..dim {
            let wk = w * x * p[k];
            for (l, pl) in p.iter().enumerate() {
                let term = wk * pl;
                let (sum, comp) = &mut sums[k * dim + l];
                let adjusted = term - *comp;
                let next = *sum + adjusted;
                *comp = (next - *sum) - adjusted;
                *sum = next;
            }
        }
    }
    let table: Vec<f64> = sums
        .iter()
        .map(|(sum, _)| std::f64::consts::SQRT_2 * sum)
        .collect();
    let t = |row: usize, col: usize| table[row * dim + col];

    let ket_amp = physical_coherent(ket, sector).normalized()?;
    let bra_amp = physical_coherent(bra, sector).normalized()?;

    let mut value = Complex64::ZERO;
    for m in sector.m_values() {
        let mut from_bra = Complex64::ZERO;
        let mut from_ket = Complex64::ZERO;
        for mp in sector.m_values() {
            from_bra +=
                bra_amp.amplitude(mp).conj() * (t(mp.n_a(), m.n_a()) * t(mp.n_b(), m.n_b()));
            from_ket += (t(m.n_a(), mp.n_a()) * t(m.n_b(), mp.n_b())) * ket_amp.amplitude(mp);
        }
        value += from_bra * from_ket;
    }
    Ok(CorrelatorResult {
        value,
        method: Method::Quadrature,
        sector,
    })
}
