//! Sign / log-magnitude carrier for quantities that overflow `f64`.

use std::cmp::Ordering;
use std::ops::{Mul, Neg};

/// A real number stored as `sign * exp(log_mag)`.
///
/// Zero is represented by `sign == 0` (the log magnitude is then `-inf`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogScaled {
    sign: i8,
    log_mag: f64,
}

impl LogScaled {
    pub const ZERO: LogScaled = LogScaled {
        sign: 0,
        log_mag: f64::NEG_INFINITY,
    };
    pub const ONE: LogScaled = LogScaled {
        sign: 1,
        log_mag: 0.0,
    };

    pub fn new(sign: i8, log_mag: f64) -> Self {
        if sign == 0 || log_mag == f64::NEG_INFINITY {
            Self::ZERO
        } else {
            LogScaled {
                sign: sign.signum(),
                log_mag,
            }
        }
    }

    pub fn from_f64(v: f64) -> Self {
        if v == 0.0 {
            Self::ZERO
        } else {
            LogScaled {
                sign: if v > 0.0 { 1 } else { -1 },
                log_mag: v.abs().ln(),
            }
        }
    }

    /// `exp(log)` with positive sign.
    pub fn from_log(log_mag: f64) -> Self {
        Self::new(1, log_mag)
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn log_mag(&self) -> f64 {
        self.log_mag
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    /// Converts back to `f64`; underflows to zero and overflows to infinity.
    pub fn value(&self) -> f64 {
        match self.sign {
            0 => 0.0,
            s => f64::from(s) * self.log_mag.exp(),
        }
    }

    /// Multiplies by `exp(delta)`.
    pub fn scale_log(self, delta: f64) -> Self {
        if self.is_zero() {
            self
        } else {
            LogScaled {
                sign: self.sign,
                log_mag: self.log_mag + delta,
            }
        }
    }

    pub fn abs(self) -> Self {
        LogScaled {
            sign: self.sign.abs(),
            log_mag: self.log_mag,
        }
    }

    /// Sums a collection after aligning every term to the largest magnitude.
    pub fn sum<I: IntoIterator<Item = LogScaled>>(terms: I) -> Self {
        let terms: Vec<LogScaled> = terms.into_iter().filter(|t| !t.is_zero()).collect();
        let Some(peak) = terms
            .iter()
            .map(|t| t.log_mag)
            .max_by(|a, b| a.partial_cmp(b).unwrap_or(Ordering::Equal))
        else {
            return Self::ZERO;
        };
        let acc: f64 = terms
            .iter()
            .map(|t| f64::from(t.sign) * (t.log_mag - peak).exp())
            .sum();
        Self::from_f64(acc).scale_log(peak)
    }
}

impl Mul for LogScaled {
    type Output = LogScaled;

    fn mul(self, rhs: LogScaled) -> LogScaled {
        if self.is_zero() || rhs.is_zero() {
            LogScaled::ZERO
        } else {
            LogScaled {
                sign: self.sign * rhs.sign,
                log_mag: self.log_mag + rhs.log_mag,
            }
        }
    }
}

impl Neg for LogScaled {
    type Output = LogScaled;

    fn neg(self) -> LogScaled {
        LogScaled {
            sign: -self.sign,
            log_mag: self.log_mag,
        }
    }
}

/// `ln(n!)`, exact summation below 256 and Stirling's series above.
pub fn ln_factorial(n: u64) -> f64 {
    if n < 256 {
        (2..=n).map(|k| (k as f64).ln()).sum()
    } else {
        let x = n as f64 + 1.0;
        (x - 0.5) * x.ln() - x + 0.5 * (2.0 * std::f64::consts::PI).ln() + 1.0 / (12.0 * x)
            - 1.0 / (360.0 * x.powi(3))
    }
}

impl std::ops::Add for LogScaled {
    type Output = LogScaled;
    fn add(self, other: LogScaled) -> LogScaled {
        LogScaled::sum([self, other])
    }
}

impl std::ops::Sub for LogScaled {
    type Output = LogScaled;
    fn sub(self, other: LogScaled) -> LogScaled {
        LogScaled::sum([self, -other])
    }
}
