//! Small numeric helpers shared across modules.

use std::sync::OnceLock;

use num_complex::Complex64;

const TABLE_LEN: usize = 1025;

/// ln(n!) from a cumulative table built with compensated summation, so the
/// values stay accurate to the last bit across the whole supported range.
pub(crate) fn ln_factorial(n: usize) -> f64 {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    let table = TABLE.get_or_init(|| {
        let mut out = Vec::with_capacity(TABLE_LEN);
        out.push(0.0);
        let mut sum = 0.0f64;
        let mut comp = 0.0f64;
        for k in 1..TABLE_LEN {
            let term = (k as f64).ln() - comp;
            let next = sum + term;
            comp = (next - sum) - term;
            sum = next;
            out.push(sum);
        }
        out
    });
    assert!(
        n < TABLE_LEN,
        "ln_factorial supports n < {TABLE_LEN}, got {n}"
    );
    table[n]
}

/// (ln |z|, arg z); the zero point maps to (-inf, 0).
pub(crate) fn ln_polar(z: Complex64) -> (f64, f64) {
    if z.re == 0.0 && z.im == 0.0 {
        (f64::NEG_INFINITY, 0.0)
    } else {
        (z.norm().ln(), z.arg())
    }
}

/// z^k computed in the log domain, with the conventions 0^0 = 1 and 0^k = 0.
/// Test-oracle helper: production code tracks log magnitudes directly.
#[cfg(test)]
pub(crate) fn complex_powi(z: Complex64, k: u32) -> Complex64 {
    if k == 0 {
        return Complex64::new(1.0, 0.0);
    }
    let (ln_r, theta) = ln_polar(z);
    if ln_r == f64::NEG_INFINITY {
        return Complex64::ZERO;
    }
    Complex64::from_polar((k as f64 * ln_r).exp(), k as f64 * theta)
}

/// Sum of an iterator of real terms with Kahan compensation.
pub(crate) fn kahan_sum<I: IntoIterator<Item = f64>>(terms: I) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for term in terms {
        let adj = term - comp;
        let next = sum + adj;
        comp = (next - sum) - adj;
        sum = next;
    }
    sum
}
