//! Pfaffians of real skew-symmetric matrices.

use nalgebra::DMatrix;

/// Pfaffian by skew Gaussian elimination with pivoting (Parlett–Reid).
/// Odd dimension gives 0. The input is assumed skew-symmetric.
pub fn pfaffian(a: &DMatrix<f64>) -> f64 {
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "pfaffian needs a square matrix");
    if n % 2 == 1 {
        return 0.0;
    }
    let mut a = a.clone();
    let mut pf = 1.0;
    for k in (0..n).step_by(2) {
        // bring the largest entry of column k below the diagonal to row k+1
        let (piv, _) = (k + 1..n).fold((k + 1, 0.0), |best, i| {
            let v = a[(i, k)].abs();
            if v > best.1 {
                (i, v)
            } else {
                best
            }
        });
        if piv != k + 1 {
            a.swap_rows(k + 1, piv);
            a.swap_columns(k + 1, piv);
            pf = -pf;
        }
        let p = a[(k + 1, k)];
        if p == 0.0 {
            return 0.0;
        }
        pf *= -p;
        // eliminate rows/columns k+2.. using column k (a[(i,k)]/p) on row/column k+1
        for i in k + 2..n {
            let tau = a[(i, k)] / p;
            if tau == 0.0 {
                continue;
            }
            for j in k..n {
                let v = a[(k + 1, j)];
                a[(i, j)] -= tau * v;
            }
            for j in k..n {
                let v = a[(j, k + 1)];
                a[(j, i)] -= tau * v;
            }
        }
    }
    pf
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_cases() {
        let a = DMatrix::from_row_slice(2, 2, &[0.0, 3.0, -3.0, 0.0]);
        assert_eq!(pfaffian(&a), 3.0);
        // Pf = a01 a23 - a02 a13 + a03 a12
        let (b01, b02, b03, b12, b13, b23) = (1.0, 2.0, 3.0, 4.0, 5.0, 6.0);
        let m = DMatrix::from_row_slice(
            4,
            4,
            &[
                0.0, b01, b02, b03, -b01, 0.0, b12, b13, -b02, -b12, 0.0, b23, -b03, -b13, -b23,
                0.0,
            ],
        );
        assert!((pfaffian(&m) - (b01 * b23 - b02 * b13 + b03 * b12)).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn square_is_determinant(vals in proptest::collection::vec(-1.0f64..1.0, 28)) {
            let n = 8;
            let mut m = DMatrix::<f64>::zeros(n, n);
            let mut it = vals.iter();
            for i in 0..n {
                for j in i + 1..n {
                    let v = *it.next().unwrap();
                    m[(i, j)] = v;
                    m[(j, i)] = -v;
                }
            }
            let pf = pfaffian(&m);
            let det = m.clone().determinant();
            prop_assert!((pf * pf - det).abs() < 1e-10 * (1.0 + det.abs()));
        }
    }
}
