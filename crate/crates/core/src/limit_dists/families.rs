//! Limiting largest-eigenvalue laws.

use super::airy_kernel::AiryTables;
use super::fredholm::{check_nodes, doubled, limit_grid, DEFAULT_CUTOFF, DEFAULT_LIMIT_NODES};
use crate::error::{Error, Result};
use nalgebra::DMatrix;
use statrs::distribution::{ContinuousCDF, Normal};
use std::fmt;
use std::str::FromStr;

/// Determinants below `-NEGATIVE_FLOOR` are reported as discretization failures.
const NEGATIVE_FLOOR: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Gue,
    Gue1,
    Goe,
    Gse,
    Gse1,
    Gaussian,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::Gue,
        Family::Gue1,
        Family::Goe,
        Family::Gse,
        Family::Gse1,
        Family::Gaussian,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Gue => "gue",
            Family::Gue1 => "gue1",
            Family::Goe => "goe",
            Family::Gse => "gse",
            Family::Gse1 => "gse1",
            Family::Gaussian => "gaussian",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidParams(format!("unknown family '{s}'")))
    }
}

/// A family together with its discretization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitFamily {
    pub family: Family,
    pub nodes: usize,
    /// The Nyström interval is `[T, T + cutoff]`.
    pub cutoff: f64,
}

impl LimitFamily {
    pub fn new(family: Family) -> Self {
        LimitFamily {
            family,
            nodes: DEFAULT_LIMIT_NODES,
            cutoff: DEFAULT_CUTOFF,
        }
    }

    pub fn with_nodes(mut self, nodes: usize) -> Self {
        self.nodes = nodes;
        self
    }
}

impl From<Family> for LimitFamily {
    fn from(f: Family) -> Self {
        LimitFamily::new(f)
    }
}

fn fold(mut k: DMatrix<f64>, sw: &[f64]) -> DMatrix<f64> {
    let m = k.nrows();
    for i in 0..m {
        for j in 0..m {
            k[(i, j)] *= sw[i] * sw[j];
        }
    }
    k
}

fn identity_minus(k: DMatrix<f64>) -> DMatrix<f64> {
    DMatrix::identity(k.nrows(), k.ncols()) - k
}

/// Block matrix `[[S, SD], [IS, Sᵀ]]` of the symplectic kernels; with
/// `critical` the rank-one corrections of the critical-spike law are added.
fn symplectic_block(tab: &AiryTables, critical: bool) -> [DMatrix<f64>; 3] {
    let m = tab.ai.len();
    let (ai, b) = (&tab.ai, &tab.tail);
    let s = DMatrix::from_fn(m, m, |i, j| {
        let v = 0.5 * tab.k[(i, j)] - 0.25 * ai[i] * b[j];
        if critical {
            v + 0.5 * ai[i]
        } else {
            v
        }
    });
    let sd = DMatrix::from_fn(m, m, |i, j| -0.5 * tab.dk[(i, j)] - 0.25 * ai[i] * ai[j]);
    let is = DMatrix::from_fn(m, m, |i, j| {
        let v = -0.5 * tab.ik[(i, j)] + 0.25 * b[i] * b[j];
        if critical {
            v - 0.5 * b[i] + 0.5 * b[j]
        } else {
            v
        }
    });
    [s, sd, is]
}

/// Determinant whose square root (GOE, GSE, GSE1) or value (GUE, GUE1) is
/// the CDF, at a fixed node count.
pub fn limit_det(family: Family, t: f64, m: usize, cutoff: f64) -> Result<f64> {
    check_nodes(m)?;
    let grid = limit_grid(t, m, cutoff)?;
    let sw: Vec<f64> = grid.weights.iter().map(|w| w.sqrt()).collect();
    match family {
        Family::Gaussian => Err(Error::InvalidParams(
            "the Gaussian law has no determinant".into(),
        )),
        Family::Gue => {
            let tab = AiryTables::new(&grid.nodes, false);
            Ok(identity_minus(fold(tab.k, &sw)).determinant())
        }
        Family::Gue1 | Family::Goe => {
            let tab = AiryTables::new(&grid.nodes, false);
            // K(ξ, η) + s1(ξ) Ai(η), s1 = 1 - B
            let k = DMatrix::from_fn(m, m, |i, j| tab.k[(i, j)] + (1.0 - tab.tail[i]) * tab.ai[j]);
            Ok(identity_minus(fold(k, &sw)).determinant())
        }
        Family::Gse | Family::Gse1 => {
            let tab = AiryTables::new(&grid.nodes, true);
            let [s, sd, is] = symplectic_block(&tab, family == Family::Gse1);
            let mut a = DMatrix::<f64>::zeros(2 * m, 2 * m);
            let st = s.transpose();
            a.view_mut((0, 0), (m, m)).copy_from(&fold(s, &sw));
            a.view_mut((0, m), (m, m)).copy_from(&fold(sd, &sw));
            a.view_mut((m, 0), (m, m)).copy_from(&fold(is, &sw));
            a.view_mut((m, m), (m, m)).copy_from(&fold(st, &sw));
            Ok(identity_minus(a).determinant())
        }
    }
}

fn to_cdf(family: Family, det: f64) -> Result<f64> {
    if det < -NEGATIVE_FLOOR || det.is_nan() {
        return Err(Error::NegativeDeterminant { value: det });
    }
    Ok(match family {
        Family::Gue | Family::Gue1 => det,
        _ => det.max(0.0).sqrt(),
    })
}

/// CDF of the limiting law at `T`, checked for stability under node doubling.
pub fn limit_cdf(family: &LimitFamily, t: f64) -> Result<f64> {
    if family.family == Family::Gaussian {
        if t.is_nan() {
            return Err(Error::Domain("threshold is NaN".into()));
        }
        return Ok(Normal::standard().cdf(t));
    }
    let f = family.family;
    doubled(f.name(), family.nodes, |m| {
        to_cdf(f, limit_det(f, t, m, family.cutoff)?)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cdf(f: Family, t: f64) -> f64 {
        limit_cdf(&LimitFamily::new(f), t).unwrap()
    }

    #[test]
    fn names_round_trip() {
        for f in Family::ALL {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
        }
        assert!("tw3".parse::<Family>().is_err());
    }

    #[test]
    fn far_right_is_one() {
        for f in Family::ALL {
            assert!((cdf(f, 10.0) - 1.0).abs() < 1e-8, "{f}");
        }
        assert_eq!(cdf(Family::Gaussian, 0.0), 0.5);
    }

    #[test]
    fn critical_relations() {
        for t in [-3.0, -1.0, 0.5] {
            let goe = cdf(Family::Goe, t);
            assert!((cdf(Family::Gue1, t) - goe * goe).abs() < 5e-6);
            assert!((cdf(Family::Gse1, t) - goe).abs() < 5e-6, "{t}");
        }
    }
}
