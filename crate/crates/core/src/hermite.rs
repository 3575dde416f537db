//! Hermite functions and Gauss-Hermite quadrature.
//!
//! Everything downstream (wavefunctions, kernels, position-space correlators)
//! is built from the orthonormal Hermite functions h_n(x). They are evaluated
//! through the normalized three-term recurrence, which stays O(1)-conditioned
//! where the functions are not vanishingly small; the naive H_n recurrence
//! plus explicit normalization overflows long before n = 60.

use crate::error::{Error, Result};

const PI_QUARTER_ROOT_INV: f64 = 0.7511255444649425; // pi^(-1/4)

/// Orthonormal Hermite function h_n(x) = H_n(x) e^{-x^2/2} / sqrt(2^n n! sqrt(pi)).
pub fn hermite_function(n: usize, x: f64) -> f64 {
    let seed = PI_QUARTER_ROOT_INV * (-0.5 * x * x).exp();
    recurrence_last(seed, n, x)
}

/// All of h_0(x) .. h_n(x) in one recurrence pass.
pub fn hermite_functions(n: usize, x: f64) -> Vec<f64> {
    let seed = PI_QUARTER_ROOT_INV * (-0.5 * x * x).exp();
    recurrence_all(seed, n, x)
}

/// Polynomial part of h_n: the same recurrence seeded without the Gaussian.
///
/// Pairs with a Gauss-Hermite rule, whose weight already carries e^{-x^2}:
/// sum_i w_i p_m(x_i) p_n(x_i) then equals the L^2 inner product <h_m, h_n>.
pub fn hermite_polynomial(n: usize, x: f64) -> f64 {
    recurrence_last(PI_QUARTER_ROOT_INV, n, x)
}

/// All of p_0(x) .. p_n(x) (see [`hermite_polynomial`]).
pub fn hermite_polynomials(n: usize, x: f64) -> Vec<f64> {
    recurrence_all(PI_QUARTER_ROOT_INV, n, x)
}

fn step(k: usize, x: f64, hk: f64, hk_prev: f64) -> f64 {
    let kf = k as f64;
    (2.0 / (kf + 1.0)).sqrt() * x * hk - (kf / (kf + 1.0)).sqrt() * hk_prev
}

fn recurrence_last(seed: f64, n: usize, x: f64) -> f64 {
    let (mut prev, mut cur) = (0.0, seed);
    for k in 0..n {
        (prev, cur) = (cur, step(k, x, cur, prev));
    }
    cur
}

fn recurrence_all(seed: f64, n: usize, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(seed);
    let (mut prev, mut cur) = (0.0, seed);
    for k in 0..n {
        (prev, cur) = (cur, step(k, x, cur, prev));
        out.push(cur);
    }
    out
}

/// Nodes and weights of a Gauss-Hermite rule for the weight e^{-x^2}.
///
/// Integrates polynomials of degree <= 2 * order - 1 exactly. Nodes are
/// strictly increasing and the rule is symmetric about 0 bit for bit: the
/// negative half is mirrored from the positive half.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// sum_i w_i f(x_i), approximating the integral of f(x) e^{-x^2}.
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}

/// Build a Gauss-Hermite rule by Newton refinement on the normalized
/// recurrence, sweeping the roots from the outermost one inward.
pub fn gauss_hermite_rule(order: usize) -> Result<QuadratureRule> {
    if order == 0 {
        return Err(Error::OrderTooSmall { order, required: 1 });
    }
    // The polynomial part grows like e^{x^2/2} near the largest node, which
    // stays inside f64 range only for moderate orders.
    assert!(
        order <= 512,
        "quadrature order {order} out of supported range"
    );

    let n = order;
    let half = n.div_ceil(2);
    let mut roots = vec![0.0; half]; // descending positive roots
    let mut pp_at_root = vec![0.0; half];

    for i in 0..half {
        let mut z = match i {
            0 => {
                let c = (2.0 * n as f64 + 1.0).sqrt();
                c - 1.85575 * c.powf(-1.0 / 3.0)
            }
            1 => roots[0] - 1.14 * (n as f64).powf(0.426) / roots[0],
            2 => 1.86 * roots[1] - 0.86 * roots[0],
            3 => 1.91 * roots[2] - 0.91 * roots[1],
            _ => 2.0 * roots[i - 1] - roots[i - 2],
        };
        let odd_center = n % 2 == 1 && i == half - 1;
        if !odd_center {
            for _ in 0..200 {
                let series = hermite_polynomials(n, z);
                let pp = (2.0 * n as f64).sqrt() * series[n - 1];
                let shift = series[n] / pp;
                z -= shift;
                if shift.abs() <= 1e-15 * (1.0 + z.abs()) {
                    break;
                }
            }
        } else {
            // By symmetry the innermost root of an odd-order rule is exactly 0.
            z = 0.0;
        }
        let series = hermite_polynomials(n, z);
        let pp = (2.0 * n as f64).sqrt() * series[n - 1];
        roots[i] = z;
        pp_at_root[i] = pp;
    }

    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..half {
        let w = 2.0 / (pp_at_root[i] * pp_at_root[i]);
        nodes[n - 1 - i] = roots[i];
        weights[n - 1 - i] = w;
        nodes[i] = -roots[i];
        weights[i] = w;
    }

    for k in 1..n {
        assert!(
            nodes[k - 1] < nodes[k],
            "Gauss-Hermite nodes failed to separate at order {n}"
        );
    }
    Ok(QuadratureRule { nodes, weights })
}
