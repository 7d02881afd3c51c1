//! Generalized Laguerre polynomials `L_n^{(alpha)}(x)` in log-scaled form.

use super::logscaled::LogScaled;
use crate::error::{Error, Result};

const RESCALE_HI: f64 = 1e150;

/// All values `L_0^{(alpha)}(x), ..., L_{n_max}^{(alpha)}(x)` from the
/// three-term recurrence, renormalizing so that neither the polynomials nor
/// their large arguments overflow.
pub fn laguerre_table(n_max: usize, alpha: u32, x: f64) -> Vec<LogScaled> {
    let a = f64::from(alpha);
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(LogScaled::ONE);
    if n_max == 0 {
        return out;
    }
    let mut log_scale = 0.0;
    let mut prev = 1.0;
    let mut cur = 1.0 + a - x;
    out.push(LogScaled::from_f64(cur));
    for k in 1..n_max {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + a - x) * cur - (kf + a) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
        let mag = cur.abs().max(prev.abs());
        if mag > RESCALE_HI || (mag < 1.0 / RESCALE_HI && mag > 0.0) {
            let s = mag.ln();
            cur /= mag;
            prev /= mag;
            log_scale += s;
        }
        out.push(LogScaled::from_f64(cur).scale_log(log_scale));
    }
    out
}

/// `L_n^{(alpha)}(x)`; negative degrees give exactly zero.
pub fn laguerre(n: i64, alpha: u32, x: f64) -> LogScaled {
    if n < 0 {
        return LogScaled::ZERO;
    }
    laguerre_table(n as usize, alpha, x)[n as usize]
}

/// `d/dx L_n^{(alpha)}(x) = (n L_n - (n + alpha) L_{n-1}) / x`.
///
/// The quotient form is singular at `x = 0`; there the limit is
/// `-binom(n + alpha, n - 1)`, which callers must request explicitly through
/// [`laguerre_deriv_at_zero`].
pub fn laguerre_deriv(n: i64, alpha: u32, x: f64) -> Result<LogScaled> {
    if x == 0.0 {
        return Err(Error::Domain(
            "laguerre_deriv at x = 0; use laguerre_deriv_at_zero".into(),
        ));
    }
    if n <= 0 {
        return Ok(LogScaled::ZERO);
    }
    let table = laguerre_table(n as usize, alpha, x);
    let nf = n as f64;
    let hi = table[n as usize] * LogScaled::from_f64(nf);
    let lo = table[n as usize - 1] * LogScaled::from_f64(nf + f64::from(alpha));
    Ok((hi - lo) * LogScaled::from_f64(1.0 / x))
}

/// `L_n^{(alpha)}'(0) = -binom(n + alpha, n - 1)`.
pub fn laguerre_deriv_at_zero(n: i64, alpha: u32) -> f64 {
    if n <= 0 {
        return 0.0;
    }
    let n = n as u64;
    let top = n + u64::from(alpha);
    let k = n - 1;
    let mut c = 1.0;
    for i in 0..k {
        c = c * (top - i) as f64 / (i + 1) as f64;
    }
    -c
}
