#![allow(clippy::needless_range_loop, clippy::excessive_precision)]
use swl_core::finite_kernel::{finite_cdf_with_basis, upper_cutoff, SkewBasis};
use swl_core::limit_dists::Ensemble;
use swl_core::mc::{ks_statistic, run_trials, run_trials_with, Sampler, TabulatedCdf};
use swl_core::quaternion::SpikedParams;

fn finite_law(params: SpikedParams) -> TabulatedCdf {
    let basis = SkewBasis::new(params).unwrap();
    TabulatedCdf::from_fn(0.02, upper_cutoff(&params), 61, |t| {
        finite_cdf_with_basis(&basis, t, 32)
    })
    .unwrap()
}

#[test]
fn finite_n_consistency() {
    let params = SpikedParams::new(3, 2, 0.5).unwrap();
    let law = finite_law(params);
    for sampler in [Sampler::Tridiagonal, Sampler::Dense] {
        let batch =
            run_trials_with(&params, Ensemble::Quaternionic, 20000, 11, sampler, None).unwrap();
        let ks = ks_statistic(&batch.raw_maxima, |x| law.eval(x));
        assert!(ks <= 0.02, "{sampler:?}: KS {ks}");
    }
}

#[test]
fn spiked_finite_law_beyond_threshold() {
    let params = SpikedParams::new(4, 2, 2.5).unwrap();
    let law = finite_law(params);
    let batch = run_trials(&params, Ensemble::Quaternionic, 10000, 12).unwrap();
    let ks = ks_statistic(&batch.raw_maxima, |x| law.eval(x));
    assert!(ks <= 0.02, "KS {ks}");
}

#[test]
fn deterministic_under_any_schedule() {
    let params = SpikedParams::new(12, 8, 0.7).unwrap();
    let reference = run_trials(&params, Ensemble::Quaternionic, 64, 99).unwrap();
    for threads in [1, 3] {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap();
        let again = pool.install(|| run_trials(&params, Ensemble::Quaternionic, 64, 99).unwrap());
        assert_eq!(reference, again);
    }
    let complex = run_trials(&params, Ensemble::Complex, 64, 99).unwrap();
    assert_ne!(reference.raw_maxima, complex.raw_maxima);
}

#[test]
fn complex_supercritical_is_gaussian() {
    let params = SpikedParams::new(80, 80, 3.0).unwrap();
    let batch = run_trials(&params, Ensemble::Complex, 5000, 13).unwrap();
    let normal = statrs::distribution::Normal::new(0.0, 1.0).unwrap();
    let ks = batch.ks(|x| statrs::distribution::ContinuousCDF::cdf(&normal, x));
    assert!(ks <= 0.05, "KS {ks}");
}
