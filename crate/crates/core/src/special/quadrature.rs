//! Gauss–Legendre rules and the grids used to discretize integral operators.

use crate::error::{Error, Result};
use std::f64::consts::PI;

/// Where a [`QuadratureGrid`] lives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GridDomain {
    /// Finite interval `[lo, hi]`.
    Interval { lo: f64, hi: f64 },
    /// `[left, inf)` through `x = left + scale * u / (1 - u)`, `u` in `(0, 1)`.
    HalfLine { left: f64, scale: f64 },
}

/// Nodes and positive weights of a quadrature rule.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureGrid {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub domain: GridDomain,
}

impl QuadratureGrid {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }

    /// Pairs of `(node, weight)`.
    pub fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.nodes.iter().copied().zip(self.weights.iter().copied())
    }
}

pub const MIN_NODES: usize = 2;
pub const MAX_NODES: usize = 512;

/// The `m`-point Gauss–Legendre rule on `[-1, 1]`, nodes ascending.
pub fn gauss_legendre(m: usize) -> Result<QuadratureGrid> {
    if !(MIN_NODES..=MAX_NODES).contains(&m) {
        return Err(Error::Size(format!(
            "Gauss-Legendre order {m} outside [{MIN_NODES}, {MAX_NODES}]"
        )));
    }
    let mut nodes = vec![0.0; m];
    let mut weights = vec![0.0; m];
    let mf = m as f64;
    for i in 0..m.div_ceil(2) {
        // Tricomi's initial guess for the i-th largest root.
        let theta = PI * (i as f64 + 0.75) / (mf + 0.5);
        let mut x = (1.0 - (mf - 1.0) / (8.0 * mf.powi(3))) * theta.cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(m, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(m, x);
        if d.is_finite() {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[m - 1 - i] = x;
        nodes[i] = -x;
        weights[m - 1 - i] = w;
        weights[i] = w;
    }
    if m % 2 == 1 {
        nodes[m / 2] = 0.0;
    }
    Ok(QuadratureGrid {
        nodes,
        weights,
        domain: GridDomain::Interval { lo: -1.0, hi: 1.0 },
    })
}

fn legendre_with_derivative(m: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=m {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = m as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Gauss–Legendre rule mapped affinely onto `[lo, hi]`.
pub fn interval_grid(lo: f64, hi: f64, m: usize) -> Result<QuadratureGrid> {
    if !(hi > lo) {
        return Err(Error::Domain(format!("empty interval [{lo}, {hi}]")));
    }
    let base = gauss_legendre(m)?;
    let half = 0.5 * (hi - lo);
    let mid = 0.5 * (hi + lo);
    Ok(QuadratureGrid {
        nodes: base.nodes.iter().map(|&t| mid + half * t).collect(),
        weights: base.weights.iter().map(|&w| half * w).collect(),
        domain: GridDomain::Interval { lo, hi },
    })
}

/// Composite rule: `panels` equal panels on `[lo, hi]`, `m` nodes each.
pub fn composite_grid(lo: f64, hi: f64, panels: usize, m: usize) -> Result<QuadratureGrid> {
    if panels == 0 {
        return Err(Error::Size(
            "composite rule needs at least one panel".into(),
        ));
    }
    let base = gauss_legendre(m)?;
    let width = (hi - lo) / panels as f64;
    if !(width > 0.0) {
        return Err(Error::Domain(format!("empty interval [{lo}, {hi}]")));
    }
    let mut nodes = Vec::with_capacity(panels * m);
    let mut weights = Vec::with_capacity(panels * m);
    for p in 0..panels {
        let a = lo + width * p as f64;
        for (t, w) in base.iter() {
            nodes.push(a + 0.5 * width * (t + 1.0));
            weights.push(0.5 * width * w);
        }
    }
    Ok(QuadratureGrid {
        nodes,
        weights,
        domain: GridDomain::Interval { lo, hi },
    })
}

/// Default map scale for [`half_line_grid`].
pub const DEFAULT_MAP_SCALE: f64 = 10.0;

/// Rule on `[left, inf)`: Gauss–Legendre on `(0, 1)` pushed through
/// `x = left + scale * u / (1 - u)` with the Jacobian folded into the weights.
pub fn half_line_grid(left: f64, m: usize, scale: f64) -> Result<QuadratureGrid> {
    if !(scale > 0.0) {
        return Err(Error::Domain(format!(
            "map scale must be positive, got {scale}"
        )));
    }
    let base = gauss_legendre(m)?;
    let mut nodes = Vec::with_capacity(m);
    let mut weights = Vec::with_capacity(m);
    for (t, w) in base.iter() {
        let u = 0.5 * (t + 1.0);
        let one_minus = 0.5 * (1.0 - t);
        nodes.push(left + scale * u / one_minus);
        weights.push(0.5 * w * scale / (one_minus * one_minus));
    }
    Ok(QuadratureGrid {
        nodes,
        weights,
        domain: GridDomain::HalfLine { left, scale },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_point_rule_is_exact_for_cubics() {
        let g = gauss_legendre(2).unwrap();
        assert!((g.integrate(|x| x * x) - 2.0 / 3.0).abs() < 1e-15);
        assert!(g.integrate(|x| x * x * x).abs() < 1e-15);
    }

    #[test]
    fn weights_sum_to_two() {
        for m in [2, 3, 7, 64, 255, 512] {
            let g = gauss_legendre(m).unwrap();
            let s: f64 = g.weights.iter().sum();
            assert!((s - 2.0).abs() < 1e-13, "m={m}: {s}");
            assert!(g.weights.iter().all(|&w| w > 0.0));
            assert!(g.nodes.windows(2).all(|p| p[0] < p[1]));
        }
    }

    #[test]
    fn polynomial_exactness() {
        for m in [5usize, 16, 40] {
            let g = gauss_legendre(m).unwrap();
            for deg in 0..(2 * m) {
                let want = if deg % 2 == 1 {
                    0.0
                } else {
                    2.0 / (deg as f64 + 1.0)
                };
                let got = g.integrate(|x| x.powi(deg as i32));
                assert!(
                    (got - want).abs() < 1e-13,
                    "m={m} deg={deg}: {got} vs {want}"
                );
            }
        }
    }

    #[test]
    fn cosine_closed_form() {
        let g = gauss_legendre(64).unwrap();
        assert!((g.integrate(f64::cos) - 2.0 * 1f64.sin()).abs() < 1e-13);
    }

    #[test]
    fn size_limits() {
        assert!(matches!(gauss_legendre(1), Err(Error::Size(_))));
        assert!(matches!(gauss_legendre(513), Err(Error::Size(_))));
        assert!(matches!(half_line_grid(0.0, 600, 1.0), Err(Error::Size(_))));
    }

    #[test]
    fn half_line_exponential() {
        let t = -1.3;
        let g = half_line_grid(t, 64, 1.0).unwrap();
        assert!(g.nodes.iter().all(|&x| x > t));
        assert!((g.integrate(|x| (-(x - t)).exp()) - 1.0).abs() < 1e-10);
    }

    #[test]
    fn half_line_gaussian_self_convergence() {
        let f = |x: f64| (-x * x).exp();
        let a = half_line_grid(0.0, 64, DEFAULT_MAP_SCALE)
            .unwrap()
            .integrate(f);
        let b = half_line_grid(0.0, 128, DEFAULT_MAP_SCALE)
            .unwrap()
            .integrate(f);
        assert!((a - b).abs() < 1e-12, "{a} vs {b}");
        assert!((b - 0.5 * PI.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn composite_matches_single_panel() {
        let f = |x: f64| (3.0 * x).sin() * x.exp();
        let a = composite_grid(-2.0, 3.0, 10, 12).unwrap().integrate(f);
        let b = interval_grid(-2.0, 3.0, 80).unwrap().integrate(f);
        assert!((a - b).abs() < 1e-12);
    }
}
