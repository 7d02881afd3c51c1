//! Airy kernel `K(ξ, η) = ∫_0^∞ Ai(ξ+t) Ai(η+t) dt` and the integrals built from it.

use crate::special::{airy_all, composite_grid, QuadratureGrid};
use nalgebra::DMatrix;

/// Beyond `ξ + t = AIRY_HORIZON` every integrand is below `1e-70`.
const AIRY_HORIZON: f64 = 25.0;
const PANEL_NODES: usize = 16;

/// Quadrature in `t` adequate for every `ξ >= lo`.
pub(crate) fn t_grid(lo: f64) -> QuadratureGrid {
    let hi = (AIRY_HORIZON - lo).max(4.0);
    composite_grid(0.0, hi, hi.ceil() as usize, PANEL_NODES).expect("fixed panel size is valid")
}

fn integrate(xi: f64, eta: f64, f: impl Fn((f64, f64, f64), (f64, f64, f64)) -> f64) -> f64 {
    t_grid(xi.min(eta))
        .iter()
        .map(|(t, w)| w * f(airy_all(xi + t), airy_all(eta + t)))
        .sum()
}

pub fn airy_kernel(xi: f64, eta: f64) -> f64 {
    integrate(xi, eta, |a, b| a.0 * b.0)
}

/// `∂K/∂η = ∫_0^∞ Ai(ξ+t) Ai'(η+t) dt`.
pub fn airy_kernel_deta(xi: f64, eta: f64) -> f64 {
    integrate(xi, eta, |a, b| a.0 * b.1)
}

/// `∫_ξ^∞ K(s, η) ds = ∫_0^∞ B(ξ+t) Ai(η+t) dt` with `B(x) = ∫_x^∞ Ai`.
pub fn airy_kernel_tail(xi: f64, eta: f64) -> f64 {
    integrate(xi, eta, |a, b| a.2 * b.0)
}

/// Kernel matrices on a node set, all sharing one `t` quadrature.
pub(crate) struct AiryTables {
    /// `K(x_i, x_j)`
    pub k: DMatrix<f64>,
    /// `∂_η K(x_i, x_j)`
    pub dk: DMatrix<f64>,
    /// `∫_{x_i}^∞ K(s, x_j) ds`
    pub ik: DMatrix<f64>,
    pub ai: Vec<f64>,
    pub tail: Vec<f64>,
}

impl AiryTables {
    pub fn new(nodes: &[f64], with_block: bool) -> Self {
        let lo = nodes.iter().copied().fold(f64::INFINITY, f64::min);
        let tg = t_grid(lo);
        let (m, nt) = (nodes.len(), tg.len());
        let mut a = DMatrix::<f64>::zeros(m, nt);
        let mut ap = DMatrix::<f64>::zeros(m, nt);
        let mut b = DMatrix::<f64>::zeros(m, nt);
        for (i, &x) in nodes.iter().enumerate() {
            for (k, (&t, &w)) in tg.nodes.iter().zip(&tg.weights).enumerate() {
                let (ai, aip, bt) = airy_all(x + t);
                let sw = w.sqrt();
                a[(i, k)] = sw * ai;
                ap[(i, k)] = sw * aip;
                b[(i, k)] = sw * bt;
            }
        }
        let at = a.transpose();
        let k = &a * &at;
        let (dk, ik) = if with_block {
            (&a * ap.transpose(), &b * &at)
        } else {
            (DMatrix::zeros(0, 0), DMatrix::zeros(0, 0))
        };
        let (ai, tail) = nodes
            .iter()
            .map(|&x| airy_all(x))
            .map(|(a, _, b)| (a, b))
            .unzip();
        AiryTables {
            k,
            dk,
            ik,
            ai,
            tail,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::{airy_ai, airy_ai_prime};

    fn christoffel(x: f64, y: f64) -> f64 {
        if x == y {
            airy_ai_prime(x).powi(2) - x * airy_ai(x).powi(2)
        } else {
            (airy_ai(x) * airy_ai_prime(y) - airy_ai_prime(x) * airy_ai(y)) / (x - y)
        }
    }

    #[test]
    fn diagonal_identity() {
        for x in [-6.0, -2.5, 0.0, 1.0, 3.0] {
            assert!((airy_kernel(x, x) - christoffel(x, x)).abs() < 1e-9, "{x}");
        }
        assert!((airy_kernel(0.0, 0.0) - crate::special::airy::AIP0.powi(2)).abs() < 1e-9);
    }

    #[test]
    fn off_diagonal_and_symmetry() {
        for (x, y) in [(-4.0, 1.5), (0.3, 2.2), (-1.1, -5.0)] {
            assert!((airy_kernel(x, y) - christoffel(x, y)).abs() < 1e-9);
            assert!((airy_kernel(x, y) - airy_kernel(y, x)).abs() < 1e-11);
        }
        assert!(airy_kernel(10.0, 10.0) < 1e-18);
    }

    #[test]
    fn derivative_and_tail() {
        let h = 1e-4;
        for (x, y) in [(-2.0, 0.5), (1.0, -3.0)] {
            let fd = (airy_kernel(x, y + h) - airy_kernel(x, y - h)) / (2.0 * h);
            assert!((airy_kernel_deta(x, y) - fd).abs() < 1e-6);
            let g = crate::special::composite_grid(x, 25.0, 60, 16).unwrap();
            let direct: f64 = g.iter().map(|(s, w)| w * christoffel(s, y)).sum();
            assert!((airy_kernel_tail(x, y) - direct).abs() < 1e-8, "{x} {y}");
        }
    }

    #[test]
    fn tables_match_pointwise() {
        let nodes = [-3.0, -0.5, 0.7, 2.0];
        let t = AiryTables::new(&nodes, true);
        for i in 0..4 {
            for j in 0..4 {
                assert!((t.k[(i, j)] - airy_kernel(nodes[i], nodes[j])).abs() < 1e-14);
                assert!((t.dk[(i, j)] - airy_kernel_deta(nodes[i], nodes[j])).abs() < 1e-13);
                assert!((t.ik[(i, j)] - airy_kernel_tail(nodes[i], nodes[j])).abs() < 1e-13);
            }
        }
    }
}
