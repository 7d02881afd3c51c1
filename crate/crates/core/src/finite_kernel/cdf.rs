//! `P(max λ <= T) = sqrt(det(I - P_T))` by Nyström discretization.

use super::basis::{BasisPoint, SkewBasis};
use super::kernel::kernel_from_points;
use crate::error::{Error, Result};
use crate::quaternion::SpikedParams;
use crate::special::{interval_grid, LogScaled, QuadratureGrid};
use nalgebra::DMatrix;
use rayon::prelude::*;

pub const MIN_CDF_NODES: usize = 16;
pub const DEFAULT_CDF_NODES: usize = 64;
/// Largest tolerated change of the CDF when the node count doubles.
pub const DOUBLING_TOL: f64 = 1e-6;
/// Determinants below `-NEGATIVE_FLOOR` are reported as a discretization failure.
pub const NEGATIVE_FLOOR: f64 = 1e-8;

/// How `det(I - P_T)` is formed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DetMethod {
    /// `2m × 2m` Nyström matrix with square-root weight folding.
    Dense,
    /// The kernel has rank `2N`; `det(I - P_T) = det(I - Z^{-1} G)` with `G`
    /// the skew Gram matrix of the basis restricted to `(T, ∞)`. Stays accurate
    /// when `ψ_{2N-1}` grows (a > 1).
    Factored,
    /// `Dense` for `a <= 1`, `Factored` otherwise.
    Auto,
}

/// Right end of the quadrature interval: beyond it the eigenvalue density is
/// below `1e-20` relative to its peak.
pub fn upper_cutoff(params: &SpikedParams) -> f64 {
    let p = 2.0 * (params.m() + params.n()) as f64;
    let k = 2.0 * params.m() as f64 / (1.0 + params.a().max(0.0));
    let g = |x: f64| p * (k * x / p).ln() + p - k * x + 1e20f64.ln();
    let mut lo = p / k;
    let mut hi = 2.0 * lo;
    while g(hi) > 0.0 {
        hi *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if g(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    hi
}

fn points(basis: &SkewBasis, grid: &QuadratureGrid) -> Result<Vec<BasisPoint>> {
    grid.nodes.par_iter().map(|&x| basis.point(x)).collect()
}

fn dense_det(basis: &SkewBasis, grid: &QuadratureGrid, pts: &[BasisPoint]) -> f64 {
    let m = pts.len();
    let sw: Vec<f64> = grid.weights.iter().map(|w| w.sqrt()).collect();
    let rows: Vec<Vec<(f64, f64, f64)>> = (0..m)
        .into_par_iter()
        .map(|i| {
            (0..m)
                .map(|j| {
                    let k = kernel_from_points(basis, &pts[i], &pts[j]);
                    (k.s, k.sd, k.is)
                })
                .collect()
        })
        .collect();
    let mut a = DMatrix::<f64>::identity(2 * m, 2 * m);
    for i in 0..m {
        for j in 0..m {
            let f = sw[i] * sw[j];
            let (s, sd, is) = rows[i][j];
            a[(i, j)] -= f * s;
            a[(i, m + j)] -= f * sd;
            a[(m + i, j)] -= f * is;
            a[(m + i, m + j)] -= f * rows[j][i].0;
        }
    }
    a.determinant()
}

fn factored_det(basis: &SkewBasis, grid: &QuadratureGrid, pts: &[BasisPoint]) -> f64 {
    let n = basis.params().n();
    let d = 2 * n;
    // η_{2j} = -ψ_{2j+1}/r_j, η_{2j+1} = ψ_{2j}/r_j, so (Z^{-1}G)_{jk} = Σ w (η_j ψ'_k - η'_j ψ_k).
    let eta = |p: &BasisPoint, j: usize, deriv: bool| -> LogScaled {
        let r = basis.norms()[j / 2];
        let inv = LogScaled::new(r.sign(), -r.log_mag());
        let src = if deriv { &p.dpsi } else { &p.psi };
        if j.is_multiple_of(2) {
            -(inv * src[j + 1])
        } else {
            inv * src[j - 1]
        }
    };
    let mut q = DMatrix::<f64>::identity(d, d);
    for j in 0..d {
        for k in 0..d {
            let mut acc = 0.0;
            for (p, &w) in pts.iter().zip(&grid.weights) {
                acc += w
                    * ((eta(p, j, false) * p.dpsi[k]).value()
                        - (eta(p, j, true) * p.psi[k]).value());
            }
            q[(j, k)] -= acc;
        }
    }
    q.determinant()
}

/// `det(I - P_T)` on `m` Gauss–Legendre nodes over `[T, upper_cutoff]`.
pub fn nystrom_det(basis: &SkewBasis, t: f64, m: usize, method: DetMethod) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::Domain(format!(
            "threshold must be positive, got {t}"
        )));
    }
    let hi = upper_cutoff(basis.params());
    if t >= hi {
        return Ok(1.0);
    }
    let grid = interval_grid(t, hi, m)?;
    let pts = points(basis, &grid)?;
    let method = match method {
        DetMethod::Auto if basis.params().a() > 1.0 => DetMethod::Factored,
        DetMethod::Auto => DetMethod::Dense,
        other => other,
    };
    Ok(match method {
        DetMethod::Factored => factored_det(basis, &grid, &pts),
        _ => dense_det(basis, &grid, &pts),
    })
}

fn checked_sqrt(det: f64) -> Result<f64> {
    if det < -NEGATIVE_FLOOR || det.is_nan() {
        return Err(Error::NegativeDeterminant { value: det });
    }
    Ok(det.max(0.0).sqrt())
}

/// `P(max λ <= T)` with a node-doubling check.
pub fn finite_cdf_with_basis(basis: &SkewBasis, t: f64, m: usize) -> Result<f64> {
    if m < MIN_CDF_NODES {
        return Err(Error::Size(format!(
            "need at least {MIN_CDF_NODES} nodes, got {m}"
        )));
    }
    let coarse = checked_sqrt(nystrom_det(basis, t, m, DetMethod::Auto)?)?;
    let fine = checked_sqrt(nystrom_det(basis, t, 2 * m, DetMethod::Auto)?)?;
    let drift = (fine - coarse).abs();
    if drift > DOUBLING_TOL {
        return Err(Error::Convergence {
            what: "finite_cdf".into(),
            m,
            drift,
        });
    }
    Ok(fine.min(1.0))
}

pub fn finite_cdf(params: SpikedParams, t: f64, m: usize) -> Result<f64> {
    finite_cdf_with_basis(&SkewBasis::new(params)?, t, m)
}
