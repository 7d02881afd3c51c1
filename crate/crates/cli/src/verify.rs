//! `verify`: identity suite, skew-orthogonality and Painlevé cross-checks.

use crate::config::Suite;
use swl_core::finite_kernel::{debruijn_cdf_oracle, finite_cdf, skew_gram_defect, SkewBasis};
use swl_core::identities::{
    check_confluent_vandermonde, check_jack_identity, check_joint_density_with, check_lemma1,
    complete_homogeneous, lemma1_ratio_exact, normalization_residual, scaled_one_row_jack,
    sweep_points, JOINT_SAMPLES,
};
use swl_core::limit_dists::tw_identity_check;
use swl_core::quaternion::SpikedParams;
use swl_core::Result;

const SWEEP_POINTS: usize = 24;

/// One line of the report.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub threshold: f64,
    pub outcome: std::result::Result<f64, String>,
}

impl Check {
    fn new(name: impl Into<String>, threshold: f64, residual: Result<f64>) -> Self {
        Check {
            name: name.into(),
            threshold,
            outcome: residual.map_err(|e| e.to_string()),
        }
    }

    pub fn passed(&self) -> bool {
        matches!(self.outcome, Ok(r) if r <= self.threshold)
    }

    pub fn line(&self) -> String {
        match &self.outcome {
            Ok(r) if self.passed() => format!("ok {} residual={r:e}", self.name),
            Ok(r) => format!(
                "FAIL {} residual={r:e} threshold={:e}",
                self.name, self.threshold
            ),
            Err(e) => format!("FAIL {} error={e}", self.name),
        }
    }
}

fn worst<I: IntoIterator<Item = Result<f64>>>(residuals: I) -> Result<f64> {
    residuals
        .into_iter()
        .try_fold(0.0f64, |w, r| r.map(|r| w.max(r)))
}

fn identities(seed: u64) -> Vec<Check> {
    let wide = sweep_points(seed, SWEEP_POINTS, 4);
    let small = sweep_points(seed.wrapping_add(1), SWEEP_POINTS, 3);
    let js = |max_j: usize| {
        small
            .iter()
            .flat_map(move |l| (0..=max_j).map(move |j| (l, j)))
    };
    let joint = SpikedParams::new(3, 2, 0.5).expect("valid parameters");
    vec![
        Check::new(
            "confluent_vandermonde",
            1e-10,
            Ok(wide
                .iter()
                .map(check_confluent_vandermonde)
                .fold(0.0, f64::max)),
        ),
        Check::new(
            "lemma1",
            1e-10,
            worst(js(4).map(|(l, j)| check_lemma1(l, j))),
        ),
        Check::new(
            "jack_identity",
            1e-12,
            worst(js(6).map(|(l, j)| check_jack_identity(l, j))),
        ),
        Check::new(
            "lemma1_jack_agreement",
            1e-12,
            Ok(js(4)
                .map(|(l, j)| {
                    let h = complete_homogeneous(&l.doubled(), j);
                    let a = num_traits::ToPrimitive::to_f64(&lemma1_ratio_exact(l, j))
                        .unwrap_or(f64::NAN);
                    let b = num_traits::ToPrimitive::to_f64(&scaled_one_row_jack(l, j))
                        .unwrap_or(f64::NAN);
                    (a - b).abs() / h
                })
                .fold(0.0, f64::max)),
        ),
        Check::new(
            "joint_density N=2 M=3 a=0.5",
            0.01,
            check_joint_density_with(joint, JOINT_SAMPLES, seed),
        ),
        Check::new(
            "joint_density_normalization N=2 M=3 a=0.5",
            1e-4,
            normalization_residual(joint),
        ),
    ]
}

fn skew() -> Vec<Check> {
    let mut out = Vec::new();
    for (n, m, a) in [(2, 3, 0.5), (3, 5, 0.7), (5, 8, 2.0)] {
        let r = SpikedParams::new(m, n, a)
            .and_then(SkewBasis::new)
            .and_then(|b| skew_gram_defect(&b));
        out.push(Check::new(format!("skew_gram N={n} M={m} a={a}"), 1e-8, r));
    }
    let p = SpikedParams::new(3, 2, 0.5).expect("valid parameters");
    let r = worst(
        [1.0, 2.0, 3.0].map(|t| Ok((finite_cdf(p, t, 32)? - debruijn_cdf_oracle(p, t)?).abs())),
    );
    out.push(Check::new("debruijn_oracle N=2 M=3 a=0.5", 1e-6, r));
    out
}

fn painleve() -> Vec<Check> {
    let mut out = Vec::new();
    for t in [-2.0, 0.0, 2.0] {
        let r = tw_identity_check(t);
        out.push(Check::new(
            format!("painleve_at_threshold T={t}"),
            1e-4,
            r.clone().map(|r| r.at_threshold),
        ));
        out.push(Check::new(
            format!("painleve_inner_product T={t}"),
            1e-4,
            r.map(|r| r.inner_product),
        ));
    }
    out
}

pub fn run(suite: Suite, seed: u64) -> Vec<Check> {
    match suite {
        Suite::Identities => identities(seed),
        Suite::Skew => skew(),
        Suite::Painleve => painleve(),
        Suite::All => [identities(seed), skew(), painleve()].concat(),
    }
}
