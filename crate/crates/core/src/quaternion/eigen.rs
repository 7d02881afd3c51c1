use super::algebra::QuaternionMatrix;
use crate::error::{Error, Result};
use nalgebra::SymmetricEigen;

/// Default pairing tolerance `1e-8 * max(1, spectral radius)`.
pub fn default_tol(spectral_radius: f64) -> f64 {
    1e-8 * spectral_radius.abs().max(1.0)
}

/// Eigenvalues of a quaternionic Hermitian matrix, one per Kramers pair, ascending.
///
/// `tol` bounds both the Hermitian defect of the embedding (relative to its
/// largest entry) and the gap inside each pair (relative to the spectral
/// radius). `None` selects [`default_tol`].
pub fn hermitian_eigenvalues(s: &QuaternionMatrix, tol: Option<f64>) -> Result<Vec<f64>> {
    let n = s.rows();
    if s.cols() != n {
        return Err(Error::Size(format!(
            "matrix is {}x{}, not square",
            n,
            s.cols()
        )));
    }
    let e = s.embedding();
    let scale = e.iter().fold(0.0f64, |m, v| m.max(v.norm())).max(1.0);
    let mut asym: f64 = 0.0;
    for i in 0..2 * n {
        for j in i..2 * n {
            asym = asym.max((e[(i, j)] - e[(j, i)].conj()).norm());
        }
    }
    let herm_tol = tol.unwrap_or(1e-8);
    if asym > herm_tol * scale {
        return Err(Error::NotHermitian {
            asymmetry: asym / scale,
            tol: herm_tol,
        });
    }
    let pattern = s.pattern_defect();
    if pattern > herm_tol * scale {
        return Err(Error::NotHermitian {
            asymmetry: pattern / scale,
            tol: herm_tol,
        });
    }

    match n {
        1 => return Ok(vec![e[(0, 0)].re]),
        2 => return Ok(two_by_two(s)),
        _ => {}
    }

    let mut vals: Vec<f64> = SymmetricEigen::new(e.clone())
        .eigenvalues
        .iter()
        .copied()
        .collect();
    vals.sort_by(|a, b| a.total_cmp(b));
    let radius = vals.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let pair_tol = tol.map_or_else(|| default_tol(radius), |t| t * radius.max(1.0));
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let gap = vals[2 * k + 1] - vals[2 * k];
        if gap > pair_tol {
            return Err(Error::PairMismatch {
                index: k,
                gap,
                tol: pair_tol,
            });
        }
        out.push(vals[2 * k]);
    }
    Ok(out)
}

/// `[[p, q], [q̄, r]]` with real `p`, `r`: eigenvalues `(p+r)/2 ± sqrt(((p-r)/2)² + |q|²)`.
fn two_by_two(s: &QuaternionMatrix) -> Vec<f64> {
    let p = s.get(0, 0).w;
    let r = s.get(1, 1).w;
    let q = s.get(0, 1).norm_sqr();
    let mid = 0.5 * (p + r);
    let half = 0.5 * (p - r);
    let rad = (half * half + q).sqrt();
    vec![mid - rad, mid + rad]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quaternion::algebra::Quaternion;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_hermitian(n: usize, rng: &mut ChaCha8Rng) -> QuaternionMatrix {
        let mut m = QuaternionMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Quaternion::real(rng.random_range(-2.0..2.0)));
            for j in i + 1..n {
                let q = Quaternion::new(
                    rng.random_range(-1.0..1.0),
                    rng.random_range(-1.0..1.0),
                    rng.random_range(-1.0..1.0),
                    rng.random_range(-1.0..1.0),
                );
                m.set(i, j, q);
                m.set(j, i, q.conj());
            }
        }
        m
    }

    #[test]
    fn diagonal_and_identity() {
        let mut d = QuaternionMatrix::zeros(2, 2);
        d.set(0, 0, Quaternion::real(3.0));
        d.set(1, 1, Quaternion::real(1.0));
        assert_eq!(hermitian_eigenvalues(&d, None).unwrap(), vec![1.0, 3.0]);
        let id = QuaternionMatrix::from_fn(4, 4, |i, j| {
            if i == j {
                Quaternion::ONE
            } else {
                Quaternion::default()
            }
        });
        let ev = hermitian_eigenvalues(&id, None).unwrap();
        assert_eq!(ev.len(), 4);
        assert!(ev.iter().all(|&v| (v - 1.0).abs() < 1e-14));
    }

    #[test]
    fn trace_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in [3, 5, 8] {
            let s = random_hermitian(n, &mut rng);
            let ev = hermitian_eigenvalues(&s, None).unwrap();
            let sum: f64 = ev.iter().sum();
            assert!((sum - s.re_trace()).abs() < 1e-10);
            assert!(ev.windows(2).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn two_by_two_matches_dense() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let s = random_hermitian(2, &mut rng);
            let fast = hermitian_eigenvalues(&s, None).unwrap();
            let mut dense: Vec<f64> = SymmetricEigen::new(s.embedding().clone())
                .eigenvalues
                .iter()
                .copied()
                .collect();
            dense.sort_by(|a, b| a.total_cmp(b));
            assert!((fast[0] - dense[0]).abs() < 1e-12 && (fast[1] - dense[3]).abs() < 1e-12);
        }
    }

    #[test]
    fn kramers_pairs_up_to_twenty() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for n in [3, 10, 20] {
            let s = random_hermitian(n, &mut rng);
            let mut vals: Vec<f64> = SymmetricEigen::new(s.embedding().clone())
                .eigenvalues
                .iter()
                .copied()
                .collect();
            vals.sort_by(|a, b| a.total_cmp(b));
            let radius = vals.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            for k in 0..n {
                assert!(vals[2 * k + 1] - vals[2 * k] < 1e-9 * radius);
            }
        }
    }

    #[test]
    fn pairing_tolerance_is_enforced() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let s = random_hermitian(6, &mut rng);
        assert!(matches!(
            hermitian_eigenvalues(&s, Some(1e-30)),
            Err(Error::PairMismatch { .. })
        ));
    }

    #[test]
    fn rejects_non_hermitian() {
        let mut m = QuaternionMatrix::zeros(3, 3);
        m.set(0, 1, Quaternion::new(1.0, 0.0, 0.0, 0.0));
        assert!(matches!(
            hermitian_eigenvalues(&m, None),
            Err(Error::NotHermitian { .. })
        ));
        let mut m = QuaternionMatrix::zeros(3, 3);
        m.set(2, 2, Quaternion::new(1.0, 0.5, 0.0, 0.0));
        assert!(matches!(
            hermitian_eigenvalues(&m, None),
            Err(Error::NotHermitian { .. })
        ));
    }
}
