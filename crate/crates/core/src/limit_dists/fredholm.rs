//! Nyström approximation of Fredholm determinants on `[T, T + cutoff]`.

use crate::error::{Error, Result};
use crate::special::{interval_grid, QuadratureGrid};
use nalgebra::DMatrix;

pub const DEFAULT_LIMIT_NODES: usize = 96;
pub const DEFAULT_CUTOFF: f64 = 40.0;
pub const MIN_LIMIT_NODES: usize = 16;
/// Largest tolerated change when the node count doubles.
pub const LIMIT_DOUBLING_TOL: f64 = 1e-7;

pub(crate) fn check_nodes(m: usize) -> Result<()> {
    if m < MIN_LIMIT_NODES {
        return Err(Error::Size(format!(
            "need at least {MIN_LIMIT_NODES} nodes, got {m}"
        )));
    }
    Ok(())
}

pub(crate) fn limit_grid(t: f64, m: usize, cutoff: f64) -> Result<QuadratureGrid> {
    if !t.is_finite() {
        return Err(Error::Domain(format!("threshold must be finite, got {t}")));
    }
    interval_grid(t, t + cutoff, m)
}

/// `det(I - W^{1/2} K W^{1/2})` on a given grid.
pub fn nystrom_scalar(kernel: impl Fn(f64, f64) -> f64, grid: &QuadratureGrid) -> f64 {
    let m = grid.len();
    let sw: Vec<f64> = grid.weights.iter().map(|w| w.sqrt()).collect();
    let a = DMatrix::from_fn(m, m, |i, j| {
        let d = if i == j { 1.0 } else { 0.0 };
        d - sw[i] * kernel(grid.nodes[i], grid.nodes[j]) * sw[j]
    });
    a.determinant()
}

/// Block version: `kernel(x, y)` returns the 2×2 block at `(x, y)`.
pub fn nystrom_block(kernel: impl Fn(f64, f64) -> [[f64; 2]; 2], grid: &QuadratureGrid) -> f64 {
    let m = grid.len();
    let sw: Vec<f64> = grid.weights.iter().map(|w| w.sqrt()).collect();
    let mut a = DMatrix::<f64>::identity(2 * m, 2 * m);
    for i in 0..m {
        for j in 0..m {
            let b = kernel(grid.nodes[i], grid.nodes[j]);
            let f = sw[i] * sw[j];
            for (r, row) in b.iter().enumerate() {
                for (c, v) in row.iter().enumerate() {
                    a[(r * m + i, c * m + j)] -= f * v;
                }
            }
        }
    }
    a.determinant()
}

pub(crate) fn doubled(what: &str, m: usize, eval: impl Fn(usize) -> Result<f64>) -> Result<f64> {
    check_nodes(m)?;
    let coarse = eval(m)?;
    let fine = eval(2 * m)?;
    let drift = (fine - coarse).abs();
    if drift > LIMIT_DOUBLING_TOL || drift.is_nan() {
        return Err(Error::Convergence {
            what: what.into(),
            m,
            drift,
        });
    }
    Ok(fine)
}

/// Scalar Fredholm determinant on `(T, ∞)` with a node-doubling check.
pub fn fredholm_det_scalar(kernel: impl Fn(f64, f64) -> f64, t: f64, m: usize) -> Result<f64> {
    doubled("fredholm_det_scalar", m, |k| {
        Ok(nystrom_scalar(&kernel, &limit_grid(t, k, DEFAULT_CUTOFF)?))
    })
}

/// Block Fredholm determinant on `(T, ∞)` with a node-doubling check.
pub fn fredholm_det_block(
    kernel: impl Fn(f64, f64) -> [[f64; 2]; 2],
    t: f64,
    m: usize,
) -> Result<f64> {
    doubled("fredholm_det_block", m, |k| {
        Ok(nystrom_block(&kernel, &limit_grid(t, k, DEFAULT_CUTOFF)?))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_kernel() {
        assert_eq!(fredholm_det_scalar(|_, _| 0.0, 0.0, 16).unwrap(), 1.0);
        assert_eq!(
            fredholm_det_block(|_, _| [[0.0; 2]; 2], 0.0, 16).unwrap(),
            1.0
        );
    }

    #[test]
    fn rank_one() {
        let f = |x: f64| (-x).exp();
        let g = |y: f64| (-0.5 * y * y).exp();
        let t = 0.5;
        let det = fredholm_det_scalar(|x, y| f(x) * g(y), t, 32).unwrap();
        let grid = crate::special::composite_grid(t, t + 40.0, 40, 20).unwrap();
        let inner = grid.integrate(|x| f(x) * g(x));
        assert!((det - (1.0 - inner)).abs() < 1e-10);
    }

    #[test]
    fn block_diagonal_factorizes() {
        let k1 = |x: f64, y: f64| 0.3 * (-x - y).exp();
        let k2 = |x: f64, y: f64| 0.2 * (-(x * x) - y).exp();
        let t = 0.1;
        let block = fredholm_det_block(|x, y| [[k1(x, y), 0.0], [0.0, k2(x, y)]], t, 64).unwrap();
        let prod =
            fredholm_det_scalar(k1, t, 64).unwrap() * fredholm_det_scalar(k2, t, 64).unwrap();
        assert!((block - prod).abs() < 1e-12);
    }

    #[test]
    fn too_few_nodes() {
        assert!(matches!(
            fredholm_det_scalar(|_, _| 0.0, 0.0, 8),
            Err(Error::Size(_))
        ));
    }
}
