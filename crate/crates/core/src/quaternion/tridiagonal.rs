//! Bidiagonal model of the spiked Laguerre ensemble.
//!
//! Householder reflections on the columns of X and on rows 2..N leave the
//! spiked first row untouched, so `X X*` with row covariance
//! `diag(1+a, 1, …)` is unitarily similar to `D B Bᵀ D` where `B` is lower
//! bidiagonal with chi-distributed entries and `D = diag(sqrt(1+a), 1, …)`.

use super::params::SpikedParams;
use super::sampling::TrialStream;
use rand_distr::{ChiSquared, Distribution};

/// Dyson index of the ensemble.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Beta {
    Complex,
    Quaternionic,
}

impl Beta {
    pub fn value(self) -> f64 {
        match self {
            Beta::Complex => 2.0,
            Beta::Quaternionic => 4.0,
        }
    }
}

/// Symmetric tridiagonal `(diagonal, off-diagonal)` of `S = X X* / M`, up to similarity.
pub fn tridiagonal_sample(
    params: &SpikedParams,
    beta: Beta,
    stream: &TrialStream,
) -> (Vec<f64>, Vec<f64>) {
    let (n, m) = (params.n(), params.m());
    let b = beta.value();
    let mut rng = stream.rng();
    let chi = |dof: f64, rng: &mut rand_chacha::ChaCha8Rng| -> f64 {
        (ChiSquared::new(dof).expect("positive dof").sample(rng) / b).sqrt()
    };
    let d: Vec<f64> = (0..n).map(|i| chi(b * (m - i) as f64, &mut rng)).collect();
    let s: Vec<f64> = (0..n.saturating_sub(1))
        .map(|i| chi(b * (n - 1 - i) as f64, &mut rng))
        .collect();
    let scale = |i: usize| params.spike(i).sqrt();
    let inv_m = 1.0 / m as f64;
    let diag = (0..n)
        .map(|i| {
            let below = if i > 0 { s[i - 1] * s[i - 1] } else { 0.0 };
            scale(i) * scale(i) * (d[i] * d[i] + below) * inv_m
        })
        .collect();
    let off = (0..n.saturating_sub(1))
        .map(|i| scale(i) * scale(i + 1) * d[i] * s[i] * inv_m)
        .collect();
    (diag, off)
}

/// Number of eigenvalues strictly below `x` (Sturm sequence).
fn count_below(diag: &[f64], off: &[f64], x: f64) -> usize {
    let mut count = 0;
    let mut q = 1.0;
    for i in 0..diag.len() {
        let e2 = if i > 0 { off[i - 1] * off[i - 1] } else { 0.0 };
        q = diag[i] - x - if i > 0 { e2 / q } else { 0.0 };
        if q == 0.0 {
            q = -f64::EPSILON * (diag[i].abs() + x.abs()).max(f64::MIN_POSITIVE);
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// Largest eigenvalue of a symmetric tridiagonal matrix by bisection.
pub fn largest_tridiagonal_eigenvalue(diag: &[f64], off: &[f64]) -> f64 {
    let n = diag.len();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let r =
            if i > 0 { off[i - 1].abs() } else { 0.0 } + if i + 1 < n { off[i].abs() } else { 0.0 };
        lo = lo.min(diag[i] - r);
        hi = hi.max(diag[i] + r);
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if count_below(diag, off, mid) == n {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Largest sample eigenvalue drawn through the bidiagonal model.
pub fn tridiagonal_max_eigenvalue(params: &SpikedParams, beta: Beta, stream: &TrialStream) -> f64 {
    let (diag, off) = tridiagonal_sample(params, beta, stream);
    largest_tridiagonal_eigenvalue(&diag, &off)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quaternion::{hermitian_eigenvalues, sample_complex_matrix, sample_matrix};
    use nalgebra::{DMatrix, SymmetricEigen};

    fn two_sample_ks(mut a: Vec<f64>, mut b: Vec<f64>) -> f64 {
        a.sort_by(|x, y| x.total_cmp(y));
        b.sort_by(|x, y| x.total_cmp(y));
        let (mut i, mut j, mut d) = (0, 0, 0.0f64);
        while i < a.len() && j < b.len() {
            let x = a[i].min(b[j]);
            while i < a.len() && a[i] <= x {
                i += 1;
            }
            while j < b.len() && b[j] <= x {
                j += 1;
            }
            d = d.max((i as f64 / a.len() as f64 - j as f64 / b.len() as f64).abs());
        }
        d
    }

    #[test]
    fn bisection_matches_dense() {
        let p = SpikedParams::new(12, 7, 1.5).unwrap();
        for t in 0..10 {
            let (diag, off) = tridiagonal_sample(&p, Beta::Quaternionic, &TrialStream::new(2, t));
            let n = diag.len();
            let mut m = DMatrix::<f64>::zeros(n, n);
            for i in 0..n {
                m[(i, i)] = diag[i];
                if i + 1 < n {
                    m[(i, i + 1)] = off[i];
                    m[(i + 1, i)] = off[i];
                }
            }
            let top = SymmetricEigen::new(m)
                .eigenvalues
                .iter()
                .fold(f64::MIN, |a, &b| a.max(b));
            assert!(
                (largest_tridiagonal_eigenvalue(&diag, &off) - top).abs() < 1e-12 * top.max(1.0)
            );
        }
    }

    #[test]
    fn one_by_one_is_gamma_sample() {
        let p = SpikedParams::new(5, 1, 0.5).unwrap();
        let (diag, off) = tridiagonal_sample(&p, Beta::Quaternionic, &TrialStream::new(1, 1));
        assert!(off.is_empty());
        assert_eq!(largest_tridiagonal_eigenvalue(&diag, &off), diag[0]);
    }

    #[test]
    fn quaternionic_law_matches_dense_sampler() {
        // 1.63 * sqrt(2/n) is the 1% two-sample KS level.
        let p = SpikedParams::new(10, 10, 1.0).unwrap();
        let trials = 4000;
        let dense: Vec<f64> = (0..trials)
            .map(|t| {
                *hermitian_eigenvalues(&sample_matrix(&p, &TrialStream::new(5, t)), None)
                    .unwrap()
                    .last()
                    .unwrap()
            })
            .collect();
        let tri: Vec<f64> = (0..trials)
            .map(|t| tridiagonal_max_eigenvalue(&p, Beta::Quaternionic, &TrialStream::new(6, t)))
            .collect();
        let d = two_sample_ks(dense, tri);
        assert!(d < 1.63 * (2.0 / trials as f64).sqrt(), "KS {d}");
    }

    #[test]
    fn complex_law_matches_dense_sampler() {
        let p = SpikedParams::new(9, 6, 2.0).unwrap();
        let trials = 4000;
        let dense: Vec<f64> = (0..trials)
            .map(|t| {
                let s = sample_complex_matrix(&p, &TrialStream::new(7, t));
                SymmetricEigen::new(s)
                    .eigenvalues
                    .iter()
                    .fold(f64::MIN, |a, &b| a.max(b))
            })
            .collect();
        let tri: Vec<f64> = (0..trials)
            .map(|t| tridiagonal_max_eigenvalue(&p, Beta::Complex, &TrialStream::new(8, t)))
            .collect();
        let d = two_sample_ks(dense, tri);
        assert!(d < 1.63 * (2.0 / trials as f64).sqrt(), "KS {d}");
    }
}
