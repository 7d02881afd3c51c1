//! Brute-force checks of the determinant and symmetric-function identities
//! behind the joint eigenvalue density, at small N.

use crate::error::{Error, Result};
use crate::finite_kernel::upper_cutoff;
use crate::linalg::pfaffian;
use crate::quaternion::{hermitian_eigenvalues, sample_matrix, SpikedParams, TrialStream};
use crate::special::{composite_grid, gauss_legendre, QuadratureGrid};
use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

pub const MAX_LAMBDA_LEN: usize = 4;
pub const MIN_LAMBDA_GAP: f64 = 1e-6;
pub const JOINT_SAMPLES: usize = 1_000_000;
/// Side of the square `[0, JOINT_BOX]^N` binned by [`check_joint_density`].
pub const JOINT_BOX: f64 = 5.0;
pub const JOINT_BINS: usize = 10;
/// Master seed of the default identity sweep.
pub const SWEEP_SEED: u64 = 20_240_611;

/// Distinct positive eigenvalues, at most [`MAX_LAMBDA_LEN`] of them.
#[derive(Debug, Clone, PartialEq)]
pub struct LambdaPoint(Vec<f64>);

impl LambdaPoint {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() || values.len() > MAX_LAMBDA_LEN {
            return Err(Error::Size(format!(
                "need 1..={MAX_LAMBDA_LEN} eigenvalues, got {}",
                values.len()
            )));
        }
        if values.iter().any(|&x| !(x > 0.0 && x.is_finite())) {
            return Err(Error::InvalidParams(
                "eigenvalues must be positive and finite".into(),
            ));
        }
        for (i, &x) in values.iter().enumerate() {
            if values[i + 1..]
                .iter()
                .any(|&y| (x - y).abs() <= MIN_LAMBDA_GAP)
            {
                return Err(Error::InvalidParams(format!(
                    "eigenvalues closer than {MIN_LAMBDA_GAP}"
                )));
            }
        }
        Ok(LambdaPoint(values))
    }

    /// `n` values drawn uniformly from `[lo, hi]`, redrawn until pairwise
    /// gaps exceed `gap`.
    pub fn random<R: Rng + ?Sized>(
        rng: &mut R,
        n: usize,
        lo: f64,
        hi: f64,
        gap: f64,
    ) -> Result<Self> {
        loop {
            let v: Vec<f64> = (0..n).map(|_| rng.random_range(lo..hi)).collect();
            let ok = v
                .iter()
                .enumerate()
                .all(|(i, &x)| v[i + 1..].iter().all(|&y| (x - y).abs() > gap));
            if ok {
                return Self::new(v);
            }
        }
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `(λ₁, λ₁, λ₂, λ₂, …)`.
    pub fn doubled(&self) -> Vec<f64> {
        self.0.iter().flat_map(|&x| [x, x]).collect()
    }
}

/// `count` points with `1..=max_n` eigenvalues in `[0.1, 2.5]`, gaps of at
/// least 0.2 (0.5 when N = 4, where f64 LU on the 8x8 confluent matrix
/// loses digits to closer spacings).
pub fn sweep_points(seed: u64, count: usize, max_n: usize) -> Vec<LambdaPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.random_range(1..=max_n.min(MAX_LAMBDA_LEN));
            let gap = if n == 4 { 0.5 } else { 0.2 };
            LambdaPoint::random(&mut rng, n, 0.1, 2.5, gap).expect("valid range")
        })
        .collect()
}

fn monomial(x: f64, k: usize) -> (f64, f64) {
    let d = if k == 0 {
        0.0
    } else {
        k as f64 * x.powi(k as i32 - 1)
    };
    (x.powi(k as i32), d)
}

/// `2N x 2N` matrix whose first `2N - 1` rows are `(x^k, k x^{k-1})` per
/// eigenvalue and whose last row is `last(x) = (f(x), f'(x))`.
pub fn confluent_matrix(values: &[f64], last: impl Fn(f64) -> (f64, f64)) -> DMatrix<f64> {
    let d = 2 * values.len();
    let mut a = DMatrix::zeros(d, d);
    for (i, &x) in values.iter().enumerate() {
        for k in 0..d {
            let (f, df) = if k + 1 < d { monomial(x, k) } else { last(x) };
            a[(k, 2 * i)] = f;
            a[(k, 2 * i + 1)] = df;
        }
    }
    a
}

/// Determinant of [`confluent_matrix`], expanded along the last row so that a
/// fast-growing `last` never mixes with the polynomial rows.
pub fn confluent_det(values: &[f64], last: impl Fn(f64) -> (f64, f64)) -> f64 {
    let a = confluent_matrix(values, |_| (0.0, 0.0));
    let d = a.nrows();
    let head = a.rows(0, d - 1).into_owned();
    let mut det = 0.0;
    for (i, &x) in values.iter().enumerate() {
        let (f, df) = last(x);
        for (col, entry) in [(2 * i, f), (2 * i + 1, df)] {
            let sign = if (d - 1 + col) % 2 == 0 { 1.0 } else { -1.0 };
            det += sign * entry * head.clone().remove_column(col).determinant();
        }
    }
    det
}

/// `∏_{i<j} (λ_i - λ_j)`.
pub fn vandermonde(values: &[f64]) -> f64 {
    let mut v = 1.0;
    for (i, &x) in values.iter().enumerate() {
        for &y in &values[i + 1..] {
            v *= x - y;
        }
    }
    v
}

fn relative(value: f64, reference: f64) -> f64 {
    (value - reference).abs() / reference.abs().max(f64::MIN_POSITIVE)
}

/// Relative gap between the confluent determinant and `V(λ)^4`.
pub fn check_confluent_vandermonde(lambda: &LambdaPoint) -> f64 {
    let d = 2 * lambda.len();
    let det = confluent_matrix(lambda.values(), |x| monomial(x, d - 1)).determinant();
    relative(det, vandermonde(lambda.values()).powi(4))
}

/// Complete homogeneous symmetric polynomial `h_j(vars)`.
pub fn complete_homogeneous(vars: &[f64], j: usize) -> f64 {
    // h[k] over the first i variables; adding x_i gives h[k] += x_i h[k-1].
    let mut h = vec![0.0; j + 1];
    h[0] = 1.0;
    for &x in vars {
        for k in 1..=j {
            h[k] += x * h[k - 1];
        }
    }
    h[j]
}

/// Determinant ratio with last row `(x^{2N+j-1}, …)` over `V(λ)^4`.
pub fn lemma1_ratio(lambda: &LambdaPoint, j: usize) -> f64 {
    let n = lambda.len();
    let det = confluent_matrix(lambda.values(), |x| monomial(x, 2 * n + j - 1)).determinant();
    det / vandermonde(lambda.values()).powi(4)
}

fn rational_det(mut a: Vec<Vec<BigRational>>) -> BigRational {
    let n = a.len();
    let mut det = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return BigRational::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        let pivot = a[c][c].clone();
        det *= &pivot;
        for r in c + 1..n {
            if a[r][c].is_zero() {
                continue;
            }
            let f = &a[r][c] / &pivot;
            for k in c..n {
                let v = &f * &a[c][k];
                a[r][k] -= v;
            }
        }
    }
    det
}

/// [`lemma1_ratio`] in exact rational arithmetic on the f64 inputs.
pub fn lemma1_ratio_exact(lambda: &LambdaPoint, j: usize) -> BigRational {
    let n = lambda.len();
    let d = 2 * n;
    let xs: Vec<BigRational> = lambda.values().iter().map(|&x| exact(x)).collect();
    let mut a = vec![vec![BigRational::zero(); d]; d];
    for (i, x) in xs.iter().enumerate() {
        for k in 0..d {
            let e = if k + 1 < d { k } else { 2 * n + j - 1 };
            a[k][2 * i] = x.pow(e as i32);
            if e > 0 {
                a[k][2 * i + 1] = x.pow(e as i32 - 1) * BigRational::from_integer(BigInt::from(e));
            }
        }
    }
    let mut v = BigRational::one();
    for (i, x) in xs.iter().enumerate() {
        for y in &xs[i + 1..] {
            v *= x - y;
        }
    }
    rational_det(a) / v.pow(4)
}

/// Relative gap between [`lemma1_ratio`] and `h_j` of the doubled variables.
pub fn check_lemma1(lambda: &LambdaPoint, j: usize) -> Result<f64> {
    if lambda.len() > 3 || j > 4 {
        return Err(Error::Size(format!(
            "lemma check needs N <= 3 and j <= 4, got N = {}, j = {j}",
            lambda.len()
        )));
    }
    Ok(relative(
        lemma1_ratio(lambda, j),
        complete_homogeneous(&lambda.doubled(), j),
    ))
}

fn exact(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite eigenvalue")
}

/// `(j+1) C_{(j)}^{(1/2)}(λ)`: the exact `t^j` coefficient of
/// `∏ (1 - λ_i t)^{-2}`, the f64 inputs read as exact rationals.
pub fn scaled_one_row_jack(lambda: &LambdaPoint, j: usize) -> BigRational {
    let mut series = vec![BigRational::zero(); j + 1];
    series[0] = BigRational::one();
    for &x in lambda.values() {
        let x = exact(x);
        // (1 - x t)^{-2} = Σ (k+1) x^k t^k
        let mut factor = Vec::with_capacity(j + 1);
        let mut power = BigRational::one();
        for k in 0..=j {
            factor.push(&power * BigRational::from_integer(BigInt::from(k + 1)));
            power *= &x;
        }
        let mut next = vec![BigRational::zero(); j + 1];
        for (p, s) in series.iter().enumerate() {
            if s.is_zero() {
                continue;
            }
            for (q, f) in factor.iter().enumerate().take(j + 1 - p) {
                next[p + q] += s * f;
            }
        }
        series = next;
    }
    series.swap_remove(j)
}

/// One-row quaternionic zonal polynomial `C_{(j)}^{(1/2)}(λ)`.
pub fn one_row_jack(lambda: &LambdaPoint, j: usize) -> BigRational {
    scaled_one_row_jack(lambda, j) / BigRational::from_integer(BigInt::from(j + 1))
}

/// Relative gap between `(j+1) C_{(j)}^{(1/2)}(λ)` and `h_j` of the doubled
/// variables.
pub fn check_jack_identity(lambda: &LambdaPoint, j: usize) -> Result<f64> {
    if lambda.len() > 3 || j > 6 {
        return Err(Error::Size(format!(
            "Jack check needs N <= 3 and j <= 6, got N = {}, j = {j}",
            lambda.len()
        )));
    }
    let coefficient = scaled_one_row_jack(lambda, j).to_f64().unwrap_or(f64::NAN);
    Ok(relative(
        coefficient,
        complete_homogeneous(&lambda.doubled(), j),
    ))
}

/// Last row of the joint-density determinant with the polynomial part of
/// `e^{bx}` removed and rescaled so that it tends to `x^{2N-1}` as `b -> 0`:
/// `p(x) = Σ_j b^j x^{2N+j-1} / ∏_{i<j} (2N+i)`.
fn exp_row(n: usize, b: f64, x: f64) -> (f64, f64) {
    let k = 2 * n - 1;
    let bx = b * x;
    if bx.abs() < 1.0 {
        let (mut term, mut f, mut df) = (x.powi(k as i32), 0.0, 0.0);
        for j in 0.. {
            f += term;
            df += term * (k + j) as f64 / x;
            term *= bx / (2 * n + j) as f64;
            if term.abs() <= 1e-18 * f.abs() {
                break;
            }
        }
        (f, df)
    } else {
        // (2N-1)! / b^{2N-1} (e^{bx} - Σ_{j<2N-1} (bx)^j / j!)
        let mut partial = 0.0;
        let mut dpartial = 0.0;
        let mut term = 1.0;
        for j in 0..k {
            partial += term;
            if j + 1 < k {
                dpartial += term;
            }
            term *= bx / (j + 1) as f64;
        }
        let fact: f64 = (1..=k).map(|i| i as f64).product();
        let scale = fact / b.powi(k as i32);
        let e = bx.exp();
        (scale * (e - partial), scale * b * (e - dpartial))
    }
}

/// Determinant factor of the joint density exactly as written, last row
/// `(e^{bx}, b e^{bx})` with `b = 2Ma/(1+a)`.
pub fn tilde_v4(params: &SpikedParams, values: &[f64]) -> f64 {
    let b = spike_rate(params);
    confluent_det(values, |x| ((b * x).exp(), b * (b * x).exp()))
}

fn spike_rate(params: &SpikedParams) -> f64 {
    2.0 * params.m() as f64 * params.a() / (1.0 + params.a())
}

/// Normalized joint eigenvalue density for `N <= 2`, `M <= 4`, as a
/// symmetric function on `(0, ∞)^N`.
#[derive(Debug, Clone)]
pub struct JointDensity {
    params: SpikedParams,
    total: f64,
}

impl JointDensity {
    pub fn new(params: SpikedParams) -> Result<Self> {
        if params.n() > 2 || params.m() > 4 {
            return Err(Error::Size(format!(
                "joint density check needs N <= 2 and M <= 4, got N = {}, M = {}",
                params.n(),
                params.m()
            )));
        }
        let mut out = JointDensity { params, total: 1.0 };
        out.total = out.debruijn_total()?;
        Ok(out)
    }

    fn weight(&self, x: f64) -> f64 {
        let (m, n) = (self.params.m() as f64, self.params.n() as f64);
        x.powf(2.0 * (m - n) + 1.0) * (-2.0 * m * x).exp()
    }

    /// Density up to its normalizing constant, with the `p(x)` last row.
    pub fn unnormalized(&self, values: &[f64]) -> f64 {
        let (n, b) = (self.params.n(), spike_rate(&self.params));
        let det = confluent_det(values, |x| exp_row(n, b, x));
        det * values.iter().map(|&x| self.weight(x)).product::<f64>()
    }

    pub fn pdf(&self, values: &[f64]) -> f64 {
        self.unnormalized(values) / self.total
    }

    /// `∫_{(0,∞)^N} unnormalized = N! Pf(G)`, `G` the skew Gram matrix of the
    /// rows of the determinant.
    fn debruijn_total(&self) -> Result<f64> {
        let (n, b) = (self.params.n(), spike_rate(&self.params));
        let d = 2 * n;
        let grid = composite_grid(0.0, upper_cutoff(&self.params), 64, 24)?;
        let mut g = DMatrix::<f64>::zeros(d, d);
        for (x, w) in grid.iter() {
            let wt = w * self.weight(x);
            let f: Vec<(f64, f64)> = (0..d)
                .map(|k| {
                    if k + 1 < d {
                        monomial(x, k)
                    } else {
                        exp_row(n, b, x)
                    }
                })
                .collect();
            for j in 0..d {
                for k in j + 1..d {
                    let v = wt * (f[j].0 * f[k].1 - f[j].1 * f[k].0);
                    g[(j, k)] += v;
                    g[(k, j)] -= v;
                }
            }
        }
        let fact: f64 = (1..=n).map(|i| i as f64).product();
        Ok(fact * pfaffian(&g).abs())
    }

    /// Integral of [`JointDensity::pdf`] over the box `[lo, hi]^N`.
    pub fn box_mass(&self, lo: &[f64], hi: &[f64], grid: &QuadratureGrid) -> f64 {
        let n = self.params.n();
        let axes: Vec<Vec<(f64, f64)>> = (0..n)
            .map(|i| {
                let (c, h) = (0.5 * (lo[i] + hi[i]), 0.5 * (hi[i] - lo[i]));
                grid.iter().map(|(t, w)| (c + h * t, h * w)).collect()
            })
            .collect();
        match n {
            1 => axes[0].iter().map(|&(x, w)| w * self.pdf(&[x])).sum(),
            _ => axes[0]
                .iter()
                .map(|&(x, wx)| {
                    axes[1]
                        .iter()
                        .map(|&(y, wy)| wx * wy * self.pdf(&[x, y]))
                        .sum::<f64>()
                })
                .sum(),
        }
    }
}

/// `|∫_{(0,20)^N} pdf - 1|`, the mass computed by product Gauss-Legendre.
pub fn normalization_residual(params: SpikedParams) -> Result<f64> {
    let density = JointDensity::new(params)?;
    let grid = composite_grid(0.0, 20.0, 40, 16)?;
    let n = params.n();
    let mass: f64 = match n {
        1 => grid.iter().map(|(x, w)| w * density.pdf(&[x])).sum(),
        _ => grid
            .nodes
            .par_iter()
            .zip(grid.weights.par_iter())
            .map(|(&x, &wx)| {
                grid.iter()
                    .map(|(y, wy)| wx * wy * density.pdf(&[x, y]))
                    .sum::<f64>()
            })
            .sum(),
    };
    Ok((mass - 1.0).abs())
}

/// Binned residual with [`JOINT_SAMPLES`] samples and seed 0.
pub fn check_joint_density(params: SpikedParams) -> Result<f64> {
    check_joint_density_with(params, JOINT_SAMPLES, 0)
}

/// Largest difference, over the cells of a `JOINT_BINS^N` grid on
/// `[0, JOINT_BOX]^N`, between the density's cell probability and the
/// symmetrized histogram of `samples` eigenvalue draws from the matrix model.
pub fn check_joint_density_with(params: SpikedParams, samples: usize, seed: u64) -> Result<f64> {
    let density = JointDensity::new(params)?;
    let n = params.n();
    let cells = JOINT_BINS.pow(n as u32);
    let width = JOINT_BOX / JOINT_BINS as f64;
    let bin = |x: f64| {
        let k = (x / width).floor();
        (k >= 0.0 && k < JOINT_BINS as f64).then_some(k as usize)
    };
    let counts = (0..samples as u64)
        .into_par_iter()
        .map(|k| -> Result<Vec<u64>> {
            let ev =
                hermitian_eigenvalues(&sample_matrix(&params, &TrialStream::new(seed, k)), None)?;
            let mut c = vec![0u64; cells];
            match n {
                1 => {
                    if let Some(i) = bin(ev[0]) {
                        c[i] += 2;
                    }
                }
                _ => {
                    if let (Some(i), Some(j)) = (bin(ev[0]), bin(ev[1])) {
                        c[i * JOINT_BINS + j] += 1;
                        c[j * JOINT_BINS + i] += 1;
                    }
                }
            }
            Ok(c)
        })
        .try_reduce(
            || vec![0u64; cells],
            |mut a, b| {
                a.iter_mut().zip(&b).for_each(|(x, y)| *x += y);
                Ok(a)
            },
        )?;
    let grid = gauss_legendre(8)?;
    let mut worst: f64 = 0.0;
    for (cell, &count) in counts.iter().enumerate() {
        let idx: Vec<usize> = if n == 1 {
            vec![cell]
        } else {
            vec![cell / JOINT_BINS, cell % JOINT_BINS]
        };
        let lo: Vec<f64> = idx.iter().map(|&i| i as f64 * width).collect();
        let hi: Vec<f64> = lo.iter().map(|l| l + width).collect();
        let model = density.box_mass(&lo, &hi, &grid);
        let empirical = count as f64 / (2 * samples) as f64;
        worst = worst.max((model - empirical).abs());
    }
    Ok(worst)
}
