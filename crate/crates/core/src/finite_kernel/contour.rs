//! `φ_{2N-1}` from its contour representation
//!
//! ```text
//! φ_{2N-1}(y) = -(1+a)^{α+1} a^{2N-1} / (2πi) ∮ e^{-2Myz} (z+1)^{2M-1} z^{1-2N} / ((a+1)z + a) dz
//! ```
//!
//! with the contour enclosing `0` and `p = -a/(1+a)`. The contour is a circle
//! chosen per evaluation point to keep the integrand as small as possible
//! relative to the result; alternatively the pole at `p` is taken out as its
//! residue `e^{cy}` and the circle encloses `0` only.

use crate::error::{Error, Result};
use crate::special::LogScaled;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Trapezoid node limits for the contour.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ContourRule {
    pub min_nodes: usize,
    pub max_nodes: usize,
}

impl Default for ContourRule {
    fn default() -> Self {
        ContourRule {
            min_nodes: 256,
            max_nodes: 16384,
        }
    }
}

/// Largest tolerated `|Im| / magnitude` of the contour sum.
pub const IMAG_TOL: f64 = 1e-9;
/// Successive node doublings must agree to this fraction of the contour magnitude.
const DOUBLING_TOL: f64 = 1e-15;
/// Enclosed poles stay within this fraction of the radius from the centre.
const POLE_RATIO: f64 = 0.7;

#[derive(Debug, Clone, Copy)]
pub struct ContourValue {
    pub phi: LogScaled,
    pub dphi: LogScaled,
    /// Contour magnitude over |φ|, i.e. the cancellation factor.
    pub loss: f64,
}

struct Integrand {
    m: f64,
    n: f64,
    a: f64,
    x: f64,
}

impl Integrand {
    fn log(&self, z: Complex64) -> Complex64 {
        -self.x * z + (2.0 * self.m - 1.0) * (z + 1.0).ln() + (1.0 - 2.0 * self.n) * z.ln()
            - ((self.a + 1.0) * z + self.a).ln()
    }

    /// `max_θ Re log g + ln R` over a coarse set of angles; by conjugate
    /// symmetry the upper half circle suffices.
    fn circle_cost(&self, l: f64, r: f64) -> f64 {
        const STEPS: usize = 32;
        let c0 = 0.5 * (l + r);
        let rad = 0.5 * (r - l);
        let mut worst = f64::NEG_INFINITY;
        for k in 0..=STEPS {
            let th = PI * k as f64 / STEPS as f64;
            let z = Complex64::new(c0 + rad * th.cos(), rad * th.sin());
            worst = worst.max(self.log(z).re);
        }
        worst + rad.ln()
    }
}

fn feasible(p: f64, l: f64, r: f64, enclose_p: bool) -> bool {
    let c0 = 0.5 * (l + r);
    let rad = 0.5 * (r - l);
    if enclose_p {
        c0.abs().max((c0 - p).abs()) <= POLE_RATIO * rad
    } else {
        c0.abs() <= POLE_RATIO * rad && (c0 - p).abs() >= rad / POLE_RATIO
    }
}

/// Circle through `l = -e^u < 0 < r = e^v` minimizing the integrand bound.
fn best_circle(g: &Integrand, p: f64, enclose_p: bool) -> Option<(f64, f64, f64)> {
    let (lo, hi, step) = (-8.0, 3.0, 0.25);
    let cost = |u: f64, v: f64| -> Option<f64> {
        let (l, r) = (-u.exp(), v.exp());
        feasible(p, l, r, enclose_p).then(|| g.circle_cost(l, r))
    };
    let mut best: Option<(f64, f64, f64)> = None;
    let steps = ((hi - lo) / step) as usize;
    for i in 0..=steps {
        for j in 0..=steps {
            let (u, v) = (lo + step * i as f64, lo + step * j as f64);
            if let Some(c) = cost(u, v) {
                if best.is_none_or(|b| c < b.0) {
                    best = Some((c, u, v));
                }
            }
        }
    }
    let (mut c, mut u, mut v) = best?;
    let mut h = step / 2.0;
    while h > 1e-3 {
        let mut moved = false;
        for (du, dv) in [(h, 0.0), (-h, 0.0), (0.0, h), (0.0, -h)] {
            if let Some(cn) = cost(u + du, v + dv) {
                if cn < c {
                    c = cn;
                    u += du;
                    v += dv;
                    moved = true;
                }
            }
        }
        if !moved {
            h /= 2.0;
        }
    }
    Some((c, -u.exp(), v.exp()))
}

/// Trapezoid sums of `g` and `-2Mz g` over the circle, scaled by `e^{-reference}`,
/// with the magnitude `(1/K) Σ |terms|` and an estimate of the rounding floor.
fn trapezoid(g: &Integrand, l: f64, r: f64, reference: f64, nodes: usize) -> Trapezoid {
    let c0 = 0.5 * (l + r);
    let rad = 0.5 * (r - l);
    let mut out = Trapezoid::default();
    for k in 0..nodes {
        let th = 2.0 * PI * (k as f64 + 0.5) / nodes as f64;
        let z = c0 + rad * Complex64::from_polar(1.0, th);
        // (1/2πi) ∮ g dz = (1/K) Σ g(z_k) R e^{iθ_k}
        let lg = g.log(z);
        let term = (lg + Complex64::new(rad.ln() - reference, th)).exp();
        let size = term.norm();
        // absolute rounding error of the exponent, relative error of the term
        let spread = g.x * z.norm() + reference.abs() + lg.re.abs() + 1.0;
        out.s += term;
        out.ds += term * (-2.0 * g.m * z);
        out.mag += size;
        out.noise += size * spread * f64::EPSILON;
    }
    let k = nodes as f64;
    out.s /= k;
    out.ds /= k;
    out.mag /= k;
    out.noise /= k;
    out
}

#[derive(Default)]
struct Trapezoid {
    s: Complex64,
    ds: Complex64,
    mag: f64,
    noise: f64,
}

struct Candidate {
    value: ContourValue,
}

fn evaluate_option(
    g: &Integrand,
    p: f64,
    enclose_p: bool,
    log_pref: f64,
    sign_pref: f64,
    rule: ContourRule,
) -> Result<Option<Candidate>> {
    let Some((reference, l, r)) = best_circle(g, p, enclose_p) else {
        return Ok(None);
    };
    // residue relative to the contour scale, capped to stay finite
    let res_scaled = if enclose_p {
        0.0
    } else {
        (-g.x * p - log_pref - reference).min(700.0).exp()
    };
    let dscale = (2.0 * g.m * (l.abs().max(r.abs()))).max(1.0);
    let mut nodes = rule.min_nodes.max(8);
    let mut prev = trapezoid(g, l, r, reference, nodes);
    let cur = loop {
        if nodes * 2 > rule.max_nodes {
            return Err(Error::Contour {
                ratio: f64::INFINITY,
            });
        }
        nodes *= 2;
        let cur = trapezoid(g, l, r, reference, nodes);
        let tol = DOUBLING_TOL * (cur.mag + res_scaled) + 8.0 * cur.noise;
        let settled = (cur.s - prev.s).norm() <= tol && (cur.ds - prev.ds).norm() <= dscale * tol;
        if settled {
            break cur;
        }
        prev = cur;
    };
    let (s, ds, mag) = (cur.s, cur.ds, cur.mag);
    let ratio = s.im.abs() / mag;
    if ratio > IMAG_TOL {
        return Err(Error::Contour { ratio });
    }
    let scale = log_pref + reference;
    let mut phi = LogScaled::from_f64(sign_pref * s.re).scale_log(scale);
    let mut dphi = LogScaled::from_f64(sign_pref * ds.re).scale_log(scale);
    let mut magnitude = LogScaled::from_f64(mag).scale_log(scale);
    if !enclose_p {
        // Residue at p: e^{-2Myp} = e^{cy}.
        let c = -2.0 * g.m * p;
        let res = LogScaled::from_log(-g.x * p);
        phi = phi + res;
        dphi = dphi + res * LogScaled::from_f64(c);
        magnitude = magnitude + res;
    }
    let loss = if phi.is_zero() {
        f64::INFINITY
    } else {
        (magnitude.log_mag() - phi.log_mag()).exp()
    };
    Ok(Some(Candidate {
        value: ContourValue { phi, dphi, loss },
    }))
}

/// `φ_{2N-1}(y)` and `dφ_{2N-1}/dy` for the spiked basis (`a != 0`).
pub fn phi_last(m: usize, n: usize, a: f64, y: f64, rule: ContourRule) -> Result<ContourValue> {
    if !(y > 0.0) {
        return Err(Error::Domain(format!(
            "contour evaluation needs y > 0, got {y}"
        )));
    }
    let g = Integrand {
        m: m as f64,
        n: n as f64,
        a,
        x: 2.0 * m as f64 * y,
    };
    let p = -a / (1.0 + a);
    let alpha = 2.0 * (m as f64 - n as f64);
    let log_pref = (alpha + 1.0) * (1.0 + a).ln() + (2.0 * n as f64 - 1.0) * a.abs().ln();
    // -a^{2N-1} carries the sign of -a.
    let sign_pref = -a.signum();
    let mut best: Option<Candidate> = None;
    let mut last_err = None;
    for enclose_p in [true, false] {
        match evaluate_option(&g, p, enclose_p, log_pref, sign_pref, rule) {
            Ok(Some(c)) => {
                if best.as_ref().is_none_or(|b| c.value.loss < b.value.loss) {
                    best = Some(c);
                }
            }
            Ok(None) => {}
            Err(e) => last_err = Some(e),
        }
    }
    match (best, last_err) {
        (Some(c), _) => Ok(c.value),
        (None, Some(e)) => Err(e),
        (None, None) => Err(Error::Contour {
            ratio: f64::INFINITY,
        }),
    }
}

/// Series definition `e^{cy} - (1+a)^{α+1} Σ_{j<=2N-2} (-a)^j L_j^{(α)}(2My)`,
/// summed with Neumaier compensation. Suffers cancellation; kept for checks.
pub fn phi_last_series(m: usize, n: usize, a: f64, y: f64) -> f64 {
    let alpha = 2 * (m - n) as u32;
    let lag = crate::special::laguerre_table(2 * n - 2, alpha, 2.0 * m as f64 * y);
    let pref = (1.0 + a).powi(alpha as i32 + 1);
    let mut sum = 0.0;
    let mut comp = 0.0;
    let mut add = |v: f64| {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    };
    add((2.0 * m as f64 * a / (1.0 + a) * y).exp());
    for (j, l) in lag.iter().enumerate() {
        add(-pref * (-a).powi(j as i32) * l.value());
    }
    sum + comp
}
