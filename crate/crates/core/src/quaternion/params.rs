use crate::error::{Error, Result};

/// Rank-one spiked ensemble: `M` samples of an `N`-variate normal with
/// population eigenvalues `1 + a, 1, …, 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpikedParams {
    m: usize,
    n: usize,
    a: f64,
}

impl SpikedParams {
    pub fn new(m: usize, n: usize, a: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParams("N must be at least 1".into()));
        }
        if m < n {
            return Err(Error::InvalidParams(format!(
                "need M >= N, got M={m}, N={n}"
            )));
        }
        if !(a > -1.0) || !a.is_finite() {
            return Err(Error::InvalidParams(format!("need a > -1, got {a}")));
        }
        Ok(SpikedParams { m, n, a })
    }

    /// Builds `M = γ²N`, which must be an integer.
    pub fn from_gamma(n: usize, gamma: f64, a: f64) -> Result<Self> {
        if !(gamma >= 1.0) {
            return Err(Error::InvalidParams(format!(
                "need gamma >= 1, got {gamma}"
            )));
        }
        let m_real = gamma * gamma * n as f64;
        let m = m_real.round();
        if (m - m_real).abs() > 1e-9 * m_real.max(1.0) {
            return Err(Error::InvalidParams(format!(
                "gamma^2 N = {m_real} is not an integer"
            )));
        }
        Self::new(m as usize, n, a)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn gamma(&self) -> f64 {
        (self.m as f64 / self.n as f64).sqrt()
    }

    /// Population eigenvalue of row `i` (0-based).
    pub fn spike(&self, i: usize) -> f64 {
        if i == 0 {
            1.0 + self.a
        } else {
            1.0
        }
    }

    pub fn with_a(&self, a: f64) -> Result<Self> {
        Self::new(self.m, self.n, a)
    }
}
