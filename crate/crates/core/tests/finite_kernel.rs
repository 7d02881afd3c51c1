#![allow(clippy::needless_range_loop, clippy::excessive_precision)]
use proptest::prelude::*;
use swl_core::finite_kernel::{
    debruijn_cdf_oracle, finite_cdf, nystrom_det, upper_cutoff, DetMethod, SkewBasis,
};
use swl_core::quaternion::SpikedParams;
use swl_core::special::interval_grid;

/// Skew Gram matrix `∫_0^∞ (ψ_j ψ'_k - ψ'_j ψ_k) dx` by composite Gauss–Legendre.
fn gram(basis: &SkewBasis) -> Vec<Vec<f64>> {
    let hi = upper_cutoff(basis.params());
    let grid = interval_grid(0.0, hi, 200).unwrap();
    let d = 2 * basis.params().n();
    let mut g = vec![vec![0.0; d]; d];
    for (x, w) in grid.iter() {
        let p = basis.point(x).unwrap();
        for j in 0..d {
            for k in 0..d {
                g[j][k] += w * ((p.psi[j] * p.dpsi[k]).value() - (p.dpsi[j] * p.psi[k]).value());
            }
        }
    }
    g
}

#[test]
fn gram_matrix_has_block_pattern() {
    for (m, n) in [(1, 1), (2, 2), (3, 2), (5, 3), (6, 5), (8, 5), (8, 1)] {
        for a in [0.3, 0.7, 2.0] {
            let b = SkewBasis::new(SpikedParams::new(m, n, a).unwrap()).unwrap();
            let g = gram(&b);
            let rmax = (0..n).map(|j| b.r(j).abs()).fold(0.0, f64::max);
            for j in 0..2 * n {
                for k in 0..2 * n {
                    let want = if j % 2 == 0 && k == j + 1 {
                        b.r(j / 2)
                    } else if k % 2 == 0 && j == k + 1 {
                        -b.r(k / 2)
                    } else {
                        0.0
                    };
                    let tol = if want == 0.0 {
                        1e-8 * rmax
                    } else {
                        1e-8 * want.abs()
                    };
                    assert!(
                        (g[j][k] - want).abs() < tol,
                        "M={m} N={n} a={a} ({j},{k}): {} vs {want}",
                        g[j][k]
                    );
                }
            }
        }
    }
}

#[test]
fn negative_spike_norm_sign() {
    let b = SkewBasis::new(SpikedParams::new(5, 3, -0.4).unwrap()).unwrap();
    assert!(b.r(2) < 0.0);
    let g = gram(&b);
    assert!(
        (g[4][5] - b.r(2)).abs() < 1e-8 * b.r(2).abs(),
        "{} vs {}",
        g[4][5],
        b.r(2)
    );
}

#[test]
fn squared_cdf_is_the_determinant() {
    let p = SpikedParams::new(4, 3, 0.6).unwrap();
    let b = SkewBasis::new(p).unwrap();
    for t in [0.6, 1.2, 2.0, 3.0] {
        let det = nystrom_det(&b, t, 64, DetMethod::Dense).unwrap();
        assert!(det >= -1e-8);
        let f = finite_cdf(p, t, 32).unwrap();
        assert!((f * f - det).abs() < 2e-6, "T={t}");
    }
}

#[test]
fn oracle_equivalence_grid() {
    for n in [1, 2] {
        for (m, a) in [(2, 0.5), (3, 1.5), (5, -0.6)] {
            if m < n {
                continue;
            }
            let p = SpikedParams::new(m, n, a).unwrap();
            for t in [0.5, 1.0, 1.8, 2.6, 4.0] {
                let o = debruijn_cdf_oracle(p, t).unwrap();
                let f = finite_cdf(p, t, 32).unwrap();
                assert!((o - f).abs() < 1e-6, "M={m} N={n} a={a} T={t}: {o} vs {f}");
            }
        }
    }
}

#[test]
fn vanishes_near_zero() {
    let p = SpikedParams::new(3, 2, 0.5).unwrap();
    assert!(finite_cdf(p, 0.02, 32).unwrap() < 1e-8);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]
    #[test]
    fn monotone_in_threshold(t1 in 0.2f64..4.0, dt in 0.0f64..2.0, a in -0.8f64..2.5) {
        let p = SpikedParams::new(3, 2, a).unwrap();
        let lo = finite_cdf(p, t1, 32).unwrap();
        let hi = finite_cdf(p, t1 + dt, 32).unwrap();
        prop_assert!(lo <= hi + 1e-8);
        prop_assert!((0.0..=1.0).contains(&lo));
    }
}
