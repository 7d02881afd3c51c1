//! Monte Carlo experiments on the largest eigenvalue.

use crate::error::{Error, Result};
use crate::limit_dists::{
    limit_cdf, rescale_map, rescale_map_in, Ensemble, Family, LimitFamily, Regime, RescaleMap,
};
use crate::quaternion::{
    hermitian_eigenvalues, sample_complex_matrix, sample_matrix, tridiagonal_max_eigenvalue, Beta,
    SpikedParams, TrialStream,
};
use nalgebra::SymmetricEigen;
use rayon::prelude::*;

/// How each trial's largest eigenvalue is produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Sampler {
    /// Bidiagonal chi model, `O(N)` per trial.
    #[default]
    Tridiagonal,
    /// Full Gaussian data matrix and a dense Hermitian eigensolve.
    Dense,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialBatch {
    pub params: SpikedParams,
    pub ensemble: Ensemble,
    pub trials: usize,
    pub seed: u64,
    pub map: RescaleMap,
    pub raw_maxima: Vec<f64>,
    pub rescaled: Vec<f64>,
}

impl TrialBatch {
    pub fn ks(&self, cdf: impl Fn(f64) -> f64) -> f64 {
        ks_statistic(&self.rescaled, cdf)
    }
}

fn sampling_params(params: &SpikedParams, ensemble: Ensemble) -> Result<SpikedParams> {
    if ensemble.is_white() {
        params.with_a(0.0)
    } else {
        Ok(*params)
    }
}

/// Largest eigenvalue of `S = X X* / M` for one trial.
pub fn max_eigenvalue(
    params: &SpikedParams,
    ensemble: Ensemble,
    stream: &TrialStream,
    sampler: Sampler,
) -> Result<f64> {
    let p = sampling_params(params, ensemble)?;
    let beta = if ensemble.is_quaternionic() {
        Beta::Quaternionic
    } else {
        Beta::Complex
    };
    match sampler {
        Sampler::Tridiagonal => Ok(tridiagonal_max_eigenvalue(&p, beta, stream)),
        Sampler::Dense if ensemble.is_quaternionic() => {
            let ev = hermitian_eigenvalues(&sample_matrix(&p, stream), None)?;
            Ok(ev.into_iter().fold(f64::NEG_INFINITY, f64::max))
        }
        Sampler::Dense => {
            let s = sample_complex_matrix(&p, stream);
            let ev = SymmetricEigen::new(s).eigenvalues;
            Ok(ev.iter().copied().fold(f64::NEG_INFINITY, f64::max))
        }
    }
}

/// Runs `trials` independent trials; trial `k` uses stream `(seed, k)`, so the
/// result does not depend on scheduling.
pub fn run_trials(
    params: &SpikedParams,
    ensemble: Ensemble,
    trials: usize,
    seed: u64,
) -> Result<TrialBatch> {
    run_trials_with(params, ensemble, trials, seed, Sampler::default(), None)
}

/// As [`run_trials`], with an explicit sampler and optionally a forced regime
/// for the rescaling.
pub fn run_trials_with(
    params: &SpikedParams,
    ensemble: Ensemble,
    trials: usize,
    seed: u64,
    sampler: Sampler,
    regime: Option<Regime>,
) -> Result<TrialBatch> {
    if trials == 0 {
        return Err(Error::InvalidParams("trials must be at least 1".into()));
    }
    let map = match regime {
        Some(r) => rescale_map_in(params, ensemble, r)?,
        None => rescale_map(params, ensemble)?,
    };
    let raw_maxima = (0..trials as u64)
        .into_par_iter()
        .map(|k| max_eigenvalue(params, ensemble, &TrialStream::new(seed, k), sampler))
        .collect::<Result<Vec<f64>>>()?;
    let rescaled = raw_maxima.iter().map(|&l| map.apply(l)).collect();
    Ok(TrialBatch {
        params: *params,
        ensemble,
        trials,
        seed,
        map,
        raw_maxima,
        rescaled,
    })
}

/// Two-sided Kolmogorov–Smirnov distance between the empirical law of
/// `samples` and `cdf`.
pub fn ks_statistic(samples: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
    let mut xs = samples.to_vec();
    xs.sort_by(f64::total_cmp);
    let n = xs.len() as f64;
    xs.iter().enumerate().fold(0.0, |d: f64, (i, &x)| {
        let f = cdf(x);
        d.max(f - i as f64 / n).max((i + 1) as f64 / n - f)
    })
}

/// A CDF sampled on a uniform grid and interpolated by monotone cubic
/// Hermite pieces (Fritsch–Carlson slopes). Clamped to the end values outside.
#[derive(Debug, Clone, PartialEq)]
pub struct TabulatedCdf {
    lo: f64,
    step: f64,
    values: Vec<f64>,
    slopes: Vec<f64>,
}

impl TabulatedCdf {
    pub fn from_values(lo: f64, step: f64, values: Vec<f64>) -> Result<Self> {
        if values.len() < 2 || !(step > 0.0) {
            return Err(Error::Size(
                "tabulation needs at least two points and a positive step".into(),
            ));
        }
        let n = values.len();
        let secant: Vec<f64> = values.windows(2).map(|w| (w[1] - w[0]) / step).collect();
        let mut slopes = vec![0.0; n];
        slopes[0] = secant[0];
        slopes[n - 1] = secant[n - 2];
        for i in 1..n - 1 {
            let (a, b) = (secant[i - 1], secant[i]);
            slopes[i] = if a * b <= 0.0 {
                0.0
            } else {
                2.0 * a * b / (a + b)
            };
        }
        Ok(TabulatedCdf {
            lo,
            step,
            values,
            slopes,
        })
    }

    /// Tabulates `f` on `points` equispaced nodes of `[lo, hi]`.
    pub fn from_fn(
        lo: f64,
        hi: f64,
        points: usize,
        f: impl Fn(f64) -> Result<f64> + Sync,
    ) -> Result<Self> {
        if points < 2 || !(hi > lo) {
            return Err(Error::Size(
                "tabulation needs at least two points on a nonempty interval".into(),
            ));
        }
        let step = (hi - lo) / (points - 1) as f64;
        let values = (0..points)
            .into_par_iter()
            .map(|i| f(lo + step * i as f64))
            .collect::<Result<Vec<_>>>()?;
        Self::from_values(lo, step, values)
    }

    /// Limiting law `family` on `[lo, hi]`.
    pub fn limit_law(family: Family, lo: f64, hi: f64, points: usize) -> Result<Self> {
        let lf = LimitFamily::new(family);
        Self::from_fn(lo, hi, points, |t| limit_cdf(&lf, t))
    }

    pub fn eval(&self, x: f64) -> f64 {
        let n = self.values.len();
        let u = (x - self.lo) / self.step;
        if u <= 0.0 {
            return self.values[0];
        }
        if u >= (n - 1) as f64 {
            return self.values[n - 1];
        }
        let i = (u.floor() as usize).min(n - 2);
        let s = u - i as f64;
        let (y0, y1) = (self.values[i], self.values[i + 1]);
        let (d0, d1) = (self.slopes[i] * self.step, self.slopes[i + 1] * self.step);
        let s2 = s * s;
        let s3 = s2 * s;
        (2.0 * s3 - 3.0 * s2 + 1.0) * y0
            + (s3 - 2.0 * s2 + s) * d0
            + (-2.0 * s3 + 3.0 * s2) * y1
            + (s3 - s2) * d1
    }
}

/// Limit laws used in a phase sweep, tabulated once.
pub struct PhaseLaws {
    pub gse: TabulatedCdf,
    pub goe: TabulatedCdf,
}

impl PhaseLaws {
    pub fn new() -> Result<Self> {
        Ok(PhaseLaws {
            gse: TabulatedCdf::limit_law(Family::Gse, -9.0, 6.0, 301)?,
            goe: TabulatedCdf::limit_law(Family::Goe, -9.0, 6.0, 301)?,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseRow {
    pub a: f64,
    pub regime: Regime,
    pub ks_gse: f64,
    pub ks_goe: f64,
    pub ks_gaussian: f64,
}

impl PhaseRow {
    /// Law with the smallest KS distance.
    pub fn best(&self) -> Family {
        let cands = [
            (self.ks_gse, Family::Gse),
            (self.ks_goe, Family::Goe),
            (self.ks_gaussian, Family::Gaussian),
        ];
        cands
            .into_iter()
            .min_by(|x, y| x.0.total_cmp(&y.0))
            .map(|c| c.1)
            .expect("nonempty")
    }

    /// Law predicted for the regime.
    pub fn expected(&self) -> Family {
        match self.regime {
            Regime::Subcritical => Family::Gse,
            Regime::Critical => Family::Goe,
            Regime::Supercritical => Family::Gaussian,
        }
    }
}

/// Quaternionic ensemble with `M = γ² N` across spikes `a_grid`; each batch is
/// rescaled for its own regime and compared with all three laws.
pub fn phase_sweep(
    n: usize,
    gamma: f64,
    a_grid: &[f64],
    trials: usize,
    seed: u64,
) -> Result<Vec<PhaseRow>> {
    phase_sweep_with(&PhaseLaws::new()?, n, gamma, a_grid, trials, seed)
}

pub fn phase_sweep_with(
    laws: &PhaseLaws,
    n: usize,
    gamma: f64,
    a_grid: &[f64],
    trials: usize,
    seed: u64,
) -> Result<Vec<PhaseRow>> {
    if a_grid.is_empty() {
        return Err(Error::InvalidParams("empty spike grid".into()));
    }
    let normal = statrs::distribution::Normal::standard();
    a_grid
        .iter()
        .map(|&a| {
            let params = SpikedParams::from_gamma(n, gamma, a)?;
            let batch = run_trials(&params, Ensemble::Quaternionic, trials, seed)?;
            Ok(PhaseRow {
                a,
                regime: batch.map.regime,
                ks_gse: batch.ks(|t| laws.gse.eval(t)),
                ks_goe: batch.ks(|t| laws.goe.eval(t)),
                ks_gaussian: batch.ks(|t| statrs::distribution::ContinuousCDF::cdf(&normal, t)),
            })
        })
        .collect()
}
