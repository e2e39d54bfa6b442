//! Kernels of the two limit determinants on the truncated node set.

use super::nodes::NodeSet;
use crate::linalg::CMatrix;
use num_complex::Complex64;

fn cubic_part(xi: Complex64, x: f64, tau: f64) -> Complex64 {
    -tau * xi * xi * xi / 3.0 + x * xi
}

/// `Psi(xi) = -tau xi^3/3 + x xi + psi_int(xi)` at every node.
pub fn psi_flat(ns: &NodeSet, x: f64, tau: f64) -> Vec<Complex64> {
    ns.nodes
        .iter()
        .zip(&ns.psi)
        .map(|(&xi, &p)| cubic_part(xi, x, tau) + p)
        .collect()
}

/// `Phi(xi) = -tau xi^3/3 + x xi + 2 psi_int(xi)` at every node.
pub fn phi_step(ns: &NodeSet, x: f64, tau: f64) -> Vec<Complex64> {
    ns.nodes
        .iter()
        .zip(&ns.psi)
        .map(|(&xi, &p)| cubic_part(xi, x, tau) + 2.0 * p)
        .collect()
}

/// `K(xi1, xi2) = exp(Psi(xi1) + Psi(xi2)) / (xi1 (xi1 + xi2))`.
pub fn kernel_flat(ns: &NodeSet, x: f64, tau: f64) -> CMatrix {
    let e: Vec<Complex64> = psi_flat(ns, x, tau)
        .into_iter()
        .map(Complex64::exp)
        .collect();
    let xi = &ns.nodes;
    CMatrix::from_fn(xi.len(), |i, j| e[i] * e[j] / (xi[i] * (xi[i] + xi[j])))
}

/// `K(xi1, xi2) = sum_eta exp(Phi(xi1) + Phi(eta) + gamma (xi1^2 - eta^2)/2)
/// / (xi1 eta (xi1 + eta) (eta + xi2))`, with `eta` over the same nodes.
pub fn kernel_step(ns: &NodeSet, x: f64, tau: f64, gamma: f64) -> CMatrix {
    let phi = phi_step(ns, x, tau);
    let xi = &ns.nodes;
    let n = xi.len();
    let left: Vec<Complex64> = (0..n)
        .map(|i| (phi[i] + gamma * xi[i] * xi[i] / 2.0).exp() / xi[i])
        .collect();
    let right: Vec<Complex64> = (0..n)
        .map(|e| (phi[e] - gamma * xi[e] * xi[e] / 2.0).exp() / xi[e])
        .collect();
    let mut k = CMatrix::zeros(n);
    for i in 0..n {
        for e in 0..n {
            let a = left[i] * right[e] / (xi[i] + xi[e]);
            if a.norm() == 0.0 {
                continue;
            }
            for j in 0..n {
                k[(i, j)] += a / (xi[e] + xi[j]);
            }
        }
    }
    k
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nodes() -> NodeSet {
        NodeSet::new(Complex64::from_polar(0.5, 0.7), 6).unwrap()
    }

    #[test]
    fn flat_exponent_symmetric() {
        let ns = nodes();
        let k = kernel_flat(&ns, 0.3, 1.0);
        for i in 0..ns.len() {
            for j in 0..ns.len() {
                let a = k[(i, j)] * ns.nodes[i];
                let b = k[(j, i)] * ns.nodes[j];
                assert!((a - b).norm() <= 1e-13 * a.norm().max(1e-300));
            }
        }
    }

    #[test]
    fn flat_entries_decay_outwards() {
        let ns = NodeSet::new(Complex64::new(0.5, 0.0), 12).unwrap();
        let k = kernel_flat(&ns, 0.0, 1.0);
        let mid = ns.m;
        assert!(k[(0, 0)].norm() < 1e-100 * k[(mid, mid)].norm());
    }

    #[test]
    fn step_at_zero_gamma_uses_phi_only() {
        let ns = nodes();
        let k = kernel_step(&ns, 0.2, 0.8, 0.0);
        let phi = phi_step(&ns, 0.2, 0.8);
        let xi = &ns.nodes;
        let (i, j) = (3, 5);
        let direct: Complex64 = (0..ns.len())
            .map(|e| (phi[i] + phi[e]).exp() / (xi[i] * xi[e] * (xi[i] + xi[e]) * (xi[e] + xi[j])))
            .sum();
        assert!((k[(i, j)] - direct).norm() < 1e-13 * direct.norm());
    }
}
