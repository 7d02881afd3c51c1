//! Brute-force `P(max λ <= T)` from the Pfaffian of the skew Gram matrix,
//! for `N <= 2`.

use super::cdf::upper_cutoff;
use super::WHITE_THRESHOLD;
use crate::error::{Error, Result};
use crate::linalg::pfaffian;
use crate::quaternion::SpikedParams;
use crate::special::composite_grid;
use nalgebra::DMatrix;

/// Raw basis `{1, x, …, x^{2N-2}, e^{cx}}` (`x^{2N-1}` last when `a = 0`),
/// returned with derivatives.
fn raw_basis(n: usize, c: Option<f64>, x: f64) -> Vec<(f64, f64)> {
    let mut out: Vec<(f64, f64)> = (0..2 * n - 1)
        .map(|k| {
            (
                x.powi(k as i32),
                if k == 0 {
                    0.0
                } else {
                    k as f64 * x.powi(k as i32 - 1)
                },
            )
        })
        .collect();
    out.push(match c {
        Some(c) => ((c * x).exp(), c * (c * x).exp()),
        None => {
            let k = 2 * n - 1;
            (x.powi(k as i32), k as f64 * x.powi(k as i32 - 1))
        }
    });
    out
}

fn gram(params: &SpikedParams, hi: f64) -> Result<DMatrix<f64>> {
    let (m, n, a) = (params.m() as f64, params.n(), params.a());
    let alpha = 2.0 * (m - n as f64);
    let c = (a.abs() >= WHITE_THRESHOLD).then(|| 2.0 * m * a / (1.0 + a));
    let grid = composite_grid(0.0, hi, 64, 24)?;
    let d = 2 * n;
    let mut g = DMatrix::<f64>::zeros(d, d);
    for (x, w) in grid.iter() {
        let wt = w * ((alpha + 1.0) * x.ln() - 2.0 * m * x).exp();
        let f = raw_basis(n, c, x);
        for j in 0..d {
            for k in j + 1..d {
                let v = wt * (f[j].0 * f[k].1 - f[j].1 * f[k].0);
                g[(j, k)] += v;
                g[(k, j)] -= v;
            }
        }
    }
    Ok(g)
}

/// `Pf(A(T)) / Pf(A(∞))` with `A_jk(T) = ∫_0^T (f_j f'_k - f'_j f_k) x^{α+1} e^{-2Mx} dx`.
pub fn debruijn_cdf_oracle(params: SpikedParams, t: f64) -> Result<f64> {
    if params.n() > 2 {
        return Err(Error::Size(format!(
            "de Bruijn oracle supports N <= 2, got {}",
            params.n()
        )));
    }
    if !(t > 0.0) {
        return Err(Error::Domain(format!(
            "threshold must be positive, got {t}"
        )));
    }
    let hi = upper_cutoff(&params);
    let full = pfaffian(&gram(&params, hi)?);
    if t >= hi {
        return Ok(1.0);
    }
    Ok(pfaffian(&gram(&params, t)?) / full)
}
