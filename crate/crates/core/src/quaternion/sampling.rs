use super::algebra::{Quaternion, QuaternionMatrix};
use super::params::SpikedParams;
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::RngCore;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::TAU;

/// Random stream for one trial. Every matrix entry owns a fixed window of the
/// ChaCha8 keystream selected by `(seed, trial, i, m)`, so draws do not depend
/// on evaluation order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrialStream {
    pub seed: u64,
    pub trial: u64,
}

/// 32-bit keystream words per quaternion entry (four u64 draws).
const QUAT_WORDS: u128 = 8;
/// 32-bit keystream words per complex entry (two u64 draws).
const COMPLEX_WORDS: u128 = 4;

impl TrialStream {
    pub fn new(seed: u64, trial: u64) -> Self {
        TrialStream { seed, trial }
    }

    /// Keystream positioned at the start of this trial.
    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.trial);
        rng
    }

    fn rng_at(&self, word: u128) -> ChaCha8Rng {
        let mut rng = self.rng();
        rng.set_word_pos(word);
        rng
    }

    /// Four standard normals of quaternion entry `(i, m)` in an `N × M` array.
    pub fn quaternion_normals(&self, cols: usize, i: usize, m: usize) -> [f64; 4] {
        let mut rng = self.rng_at((i * cols + m) as u128 * QUAT_WORDS);
        normals4(&mut rng)
    }

    /// Two standard normals of complex entry `(i, m)` in an `N × M` array.
    pub fn complex_normals(&self, cols: usize, i: usize, m: usize) -> [f64; 2] {
        let mut rng = self.rng_at((i * cols + m) as u128 * COMPLEX_WORDS);
        box_muller(rng.next_u64(), rng.next_u64())
    }
}

fn unit_open(bits: u64) -> f64 {
    // (0, 1]
    ((bits >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64)
}

fn box_muller(u: u64, v: u64) -> [f64; 2] {
    let r = (-2.0 * unit_open(u).ln()).sqrt();
    let (s, c) = (TAU * unit_open(v)).sin_cos();
    [r * c, r * s]
}

fn normals4(rng: &mut ChaCha8Rng) -> [f64; 4] {
    let [a, b] = box_muller(rng.next_u64(), rng.next_u64());
    let [c, d] = box_muller(rng.next_u64(), rng.next_u64());
    [a, b, c, d]
}

/// `N × M` quaternionic data: entries of row `i` have independent components
/// of variance `l_i / 4`, so `E|x|² = l_i`.
pub fn sample_data_matrix(params: &SpikedParams, stream: &TrialStream) -> QuaternionMatrix {
    let (n, m) = (params.n(), params.m());
    let mut rng = stream.rng();
    let mut x = QuaternionMatrix::zeros(n, m);
    // Row-major sequential reads land on the same keystream windows as
    // `TrialStream::quaternion_normals`.
    for i in 0..n {
        let sd = (params.spike(i) / 4.0).sqrt();
        for j in 0..m {
            let [w, a, b, c] = normals4(&mut rng);
            x.set(i, j, Quaternion::new(sd * w, sd * a, sd * b, sd * c));
        }
    }
    x
}

/// Sample matrix `S = X X* / M`.
pub fn sample_matrix(params: &SpikedParams, stream: &TrialStream) -> QuaternionMatrix {
    let x = sample_data_matrix(params, stream);
    x.matmul(&x.adjoint())
        .expect("conformable")
        .scale(1.0 / params.m() as f64)
}

/// `N × M` complex data with `E|x|² = l_i` (real and imaginary parts of
/// variance `l_i / 2`).
pub fn sample_complex_data_matrix(
    params: &SpikedParams,
    stream: &TrialStream,
) -> DMatrix<Complex64> {
    let (n, m) = (params.n(), params.m());
    let mut rng = stream.rng();
    let mut x = DMatrix::zeros(n, m);
    for i in 0..n {
        let sd = (params.spike(i) / 2.0).sqrt();
        for j in 0..m {
            let [re, im] = box_muller(rng.next_u64(), rng.next_u64());
            x[(i, j)] = Complex64::new(sd * re, sd * im);
        }
    }
    x
}

/// Complex sample matrix `X X* / M`.
pub fn sample_complex_matrix(params: &SpikedParams, stream: &TrialStream) -> DMatrix<Complex64> {
    let x = sample_complex_data_matrix(params, stream);
    (&x * x.adjoint()).map(|v| v / params.m() as f64)
}
