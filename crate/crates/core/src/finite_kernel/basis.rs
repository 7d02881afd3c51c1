//! Skew-orthogonal basis `φ_j` and weighted functions `ψ_j = φ_j w`,
//! `w(x) = x^{M-N+1/2} e^{-Mx}`.

use super::contour::{phi_last, ContourRule};
use super::{MAX_M, WHITE_THRESHOLD};
use crate::error::{Error, Result};
use crate::quaternion::SpikedParams;
use crate::special::{half_line_grid, interval_grid, laguerre_table, ln_factorial, LogScaled};
use nalgebra::DMatrix;

#[derive(Debug, Clone)]
pub struct SkewBasis {
    params: SpikedParams,
    alpha: u32,
    coeffs: Vec<f64>,
    norms: Vec<LogScaled>,
    white: bool,
    rule: ContourRule,
}

/// Everything the kernel needs at one point `x > 0`.
#[derive(Debug, Clone)]
pub struct BasisPoint {
    pub x: f64,
    /// `L_k^{(α)}(2Mx)` for `k = 0..=2N`.
    pub lag: Vec<LogScaled>,
    /// `ln w(x)`; `ln w(x) - ln x` is the log of `x^{M-N-1/2} e^{-Mx}`.
    pub log_w: f64,
    pub psi: Vec<LogScaled>,
    pub dpsi: Vec<LogScaled>,
}

impl BasisPoint {
    pub fn log_wm(&self) -> f64 {
        self.log_w - self.x.ln()
    }
}

fn check_range(params: &SpikedParams) -> Result<()> {
    if params.m() > MAX_M {
        return Err(Error::Range(format!(
            "M = {} exceeds the validated ceiling {MAX_M}",
            params.m()
        )));
    }
    Ok(())
}

/// `c_k = prod_{i=1}^k (2i-1)/(2i+α)`.
fn coefficients(n: usize, alpha: u32) -> Vec<f64> {
    let mut c = Vec::with_capacity(n);
    let mut v = 1.0;
    c.push(v);
    for i in 1..n {
        v *= (2 * i - 1) as f64 / (2 * i + alpha as usize) as f64;
        c.push(v);
    }
    c
}

/// `r_j = (1/2M)^{α+1} (2j+α+1)!/(2j)! c_j`.
fn lse_norm(m: usize, alpha: u32, j: usize, cj: f64) -> LogScaled {
    let a1 = f64::from(alpha + 1);
    LogScaled::from_log(
        -a1 * (2.0 * m as f64).ln() + ln_factorial((2 * j + alpha as usize + 1) as u64)
            - ln_factorial(2 * j as u64)
            + cj.ln(),
    )
}

/// Spiked basis; `a` must be away from zero.
pub fn build_skew_basis(params: SpikedParams) -> Result<SkewBasis> {
    check_range(&params)?;
    let a = params.a();
    if a.abs() < WHITE_THRESHOLD {
        return Err(Error::DegenerateParam(format!(
            "spiked basis needs a != 0, got {a}"
        )));
    }
    let (m, n) = (params.m(), params.n());
    let alpha = 2 * (m - n) as u32;
    let coeffs = coefficients(n, alpha);
    let mut norms: Vec<LogScaled> = (0..n - 1)
        .map(|j| lse_norm(m, alpha, j, coeffs[j]))
        .collect();
    // r_{N-1} = ((1+a)/2M)^{α+1} a^{2N-1} (2M-1)!/(2N-2)! c_{N-1}
    let log_r = f64::from(alpha + 1) * ((1.0 + a) / (2.0 * m as f64)).ln()
        + (2 * n - 1) as f64 * a.abs().ln()
        + ln_factorial((2 * m - 1) as u64)
        - ln_factorial((2 * n - 2) as u64)
        + coeffs[n - 1].ln();
    norms.push(LogScaled::new(if a > 0.0 { 1 } else { -1 }, log_r));
    Ok(SkewBasis {
        params,
        alpha,
        coeffs,
        norms,
        white: false,
        rule: ContourRule::default(),
    })
}

/// Unspiked (a = 0) basis: the Laguerre construction carried through `j = N-1`.
pub fn build_white_basis(params: SpikedParams) -> Result<SkewBasis> {
    check_range(&params)?;
    let (m, n) = (params.m(), params.n());
    let alpha = 2 * (m - n) as u32;
    let coeffs = coefficients(n, alpha);
    let norms = (0..n).map(|j| lse_norm(m, alpha, j, coeffs[j])).collect();
    Ok(SkewBasis {
        params: params.with_a(0.0)?,
        alpha,
        coeffs,
        norms,
        white: true,
        rule: ContourRule::default(),
    })
}

impl SkewBasis {
    /// Spiked basis, or the unspiked one when `|a| < 1e-8`.
    pub fn new(params: SpikedParams) -> Result<Self> {
        if params.a().abs() < WHITE_THRESHOLD {
            build_white_basis(params)
        } else {
            build_skew_basis(params)
        }
    }

    pub fn with_contour_rule(mut self, rule: ContourRule) -> Self {
        self.rule = rule;
        self
    }

    pub fn contour_rule(&self) -> ContourRule {
        self.rule
    }

    pub fn params(&self) -> &SpikedParams {
        &self.params
    }

    pub fn alpha(&self) -> u32 {
        self.alpha
    }

    pub fn is_white(&self) -> bool {
        self.white
    }

    /// `c_0 ..= c_{N-1}`.
    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// `r_0 ..= r_{N-1}` in log-scaled form.
    pub fn norms(&self) -> &[LogScaled] {
        &self.norms
    }

    pub fn r(&self, j: usize) -> f64 {
        self.norms[j].value()
    }

    /// Evaluates `ψ_j`, `ψ'_j` for all `j < 2N` at `x > 0`.
    pub fn point(&self, x: f64) -> Result<BasisPoint> {
        if !(x > 0.0) || !x.is_finite() {
            return Err(Error::Domain(format!(
                "basis evaluation needs finite x > 0, got {x}"
            )));
        }
        let (m, n) = (self.params.m(), self.params.n());
        let mf = m as f64;
        let af = f64::from(self.alpha);
        let lag = laguerre_table(2 * n, self.alpha, 2.0 * mf * x);
        let log_w = (mf - n as f64 + 0.5) * x.ln() - mf * x;
        let log_wm = log_w - x.ln();
        let mut psi = Vec::with_capacity(2 * n);
        let mut dpsi = Vec::with_capacity(2 * n);
        let mut even = LogScaled::ZERO;
        let half = LogScaled::from_f64(0.5);
        for j in 0..n {
            let cj = LogScaled::from_f64(self.coeffs[j]);
            even = even + cj * lag[2 * j];
            psi.push(even.scale_log(log_w));
            // ψ'_{2j} = ½ c_j (2j+1) L_{2j+1} wm
            dpsi.push(
                (half * cj * LogScaled::from_f64((2 * j + 1) as f64) * lag[2 * j + 1])
                    .scale_log(log_wm),
            );
            if j + 1 < n || self.white {
                psi.push((-lag[2 * j + 1]).scale_log(log_w));
                // ψ'_{2j+1} = -½((2j+2) L_{2j+2} - (2j+α+1) L_{2j}) wm
                let inner = LogScaled::from_f64((2 * j + 2) as f64) * lag[2 * j + 2]
                    - LogScaled::from_f64(2.0 * j as f64 + af + 1.0) * lag[2 * j];
                dpsi.push((-(half * inner)).scale_log(log_wm));
            } else {
                let cv = phi_last(m, n, self.params.a(), x, self.rule)?;
                psi.push(cv.phi.scale_log(log_w));
                let dlogw = LogScaled::from_f64((mf - n as f64 + 0.5) / x - mf);
                dpsi.push((cv.dphi + cv.phi * dlogw).scale_log(log_w));
            }
        }
        Ok(BasisPoint {
            x,
            lag,
            log_w,
            psi,
            dpsi,
        })
    }

    /// `∫_y^∞ t^{M-N-1/2} e^{-Mt} L_{2N-1}(2Mt) dt`, from the closed form of `ψ_{2N-2}`.
    pub(crate) fn tail_from_point(&self, p: &BasisPoint) -> LogScaled {
        let n = self.params.n();
        let c = LogScaled::from_f64((2 * n - 1) as f64 / 2.0 * self.coeffs[n - 1]);
        -LogScaled::new(
            p.psi[2 * n - 2].sign(),
            p.psi[2 * n - 2].log_mag() - c.log_mag(),
        )
    }
}

/// `ψ_{2N-1}(y)`.
pub fn psi_last(basis: &SkewBasis, y: f64) -> Result<f64> {
    let p = basis.point(y)?;
    Ok(p.psi[2 * basis.params.n() - 1].value())
}

/// `ψ'_{2N-1}(x)`.
pub fn psi_last_deriv(basis: &SkewBasis, x: f64) -> Result<f64> {
    let p = basis.point(x)?;
    Ok(p.dpsi[2 * basis.params.n() - 1].value())
}

/// `ψ_{2N-2}(x)` from its tail-integral form, by quadrature on `[x, ∞)`.
pub fn psi_penult(basis: &SkewBasis, x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("psi_penult needs x > 0, got {x}")));
    }
    let (m, n) = (basis.params.m() as f64, basis.params.n());
    let k = 2 * n - 1;
    let c = k as f64 / 2.0 * basis.coeffs[n - 1];
    let scale = (m + n as f64) / m;
    let grid = half_line_grid(x, 160, scale)?;
    let integral = grid.integrate(|t| {
        let l = laguerre_table(k, basis.alpha, 2.0 * m * t)[k];
        l.scale_log((m - n as f64 - 0.5) * t.ln() - m * t).value()
    });
    Ok(-c * integral)
}

/// Skew Gram matrix `∫_0^∞ (ψ_j ψ'_k - ψ'_j ψ_k) dx` on one 200-node
/// Gauss-Legendre rule over `[0, upper_cutoff]`.
pub fn skew_gram(basis: &SkewBasis) -> Result<DMatrix<f64>> {
    let grid = interval_grid(0.0, super::upper_cutoff(&basis.params), 200)?;
    let d = 2 * basis.params.n();
    let mut g = DMatrix::zeros(d, d);
    for (x, w) in grid.iter() {
        let p = basis.point(x)?;
        for j in 0..d {
            for k in j + 1..d {
                let v = w * ((p.psi[j] * p.dpsi[k]).value() - (p.dpsi[j] * p.psi[k]).value());
                g[(j, k)] += v;
                g[(k, j)] -= v;
            }
        }
    }
    Ok(g)
}

/// Largest deviation of [`skew_gram`] from the pattern `r_j` at `(2j, 2j+1)`,
/// zero elsewhere; pattern entries relative to `r_j`, zeros to `max |r_j|`.
pub fn skew_gram_defect(basis: &SkewBasis) -> Result<f64> {
    let g = skew_gram(basis)?;
    let n = basis.params.n();
    let rmax = (0..n).map(|j| basis.r(j).abs()).fold(0.0, f64::max);
    let mut worst: f64 = 0.0;
    for j in 0..2 * n {
        for k in 0..2 * n {
            let want = match (j % 2, k % 2) {
                (0, 1) if k == j + 1 => basis.r(j / 2),
                (1, 0) if j == k + 1 => -basis.r(k / 2),
                _ => 0.0,
            };
            let scale = if want == 0.0 { rmax } else { want.abs() };
            worst = worst.max((g[(j, k)] - want).abs() / scale);
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(m: usize, n: usize, a: f64) -> SpikedParams {
        SpikedParams::new(m, n, a).unwrap()
    }

    #[test]
    fn gram_defect_small() {
        for (m, n, a) in [(3, 2, 0.5), (6, 4, 1.7), (4, 4, 0.0)] {
            let b = SkewBasis::new(params(m, n, a)).unwrap();
            assert!(skew_gram_defect(&b).unwrap() < 1e-8);
        }
    }

    #[test]
    fn coefficients_match_product() {
        let c = coefficients(4, 6);
        assert_eq!(c[0], 1.0);
        assert!((c[1] - 1.0 / 8.0).abs() < 1e-16);
        assert!((c[3] - (1.0 / 8.0) * (3.0 / 10.0) * (5.0 / 12.0)).abs() < 1e-16);
    }

    #[test]
    fn small_norms() {
        let b = build_skew_basis(params(2, 2, 0.7)).unwrap();
        assert!((b.r(0) - 0.25).abs() < 1e-15);
        let a: f64 = 0.7;
        let want = 3.0 * (1.0 + a) * a.powi(3) / 8.0;
        assert!((b.r(1) - want).abs() < 1e-14 * want);
        let neg = build_skew_basis(params(2, 2, -0.4)).unwrap();
        assert!(neg.r(1) < 0.0);
    }

    #[test]
    fn zero_spike_rejected_by_spiked_builder() {
        assert!(matches!(
            build_skew_basis(params(3, 2, 0.0)),
            Err(Error::DegenerateParam(_))
        ));
        assert!(SkewBasis::new(params(3, 2, 0.0)).unwrap().is_white());
        assert!(matches!(
            SkewBasis::new(params(41, 2, 0.5)),
            Err(Error::Range(_))
        ));
    }

    #[test]
    fn psi_last_decays() {
        let b = SkewBasis::new(params(2, 2, 0.3)).unwrap();
        assert!(psi_last(&b, 50.0).unwrap().abs() < 1e-10);
    }

    #[test]
    fn psi_last_node_doubling() {
        let b = SkewBasis::new(params(4, 3, 0.8)).unwrap();
        let v = psi_last(&b, 2.0).unwrap();
        let rule = ContourRule {
            min_nodes: 1024,
            max_nodes: 65536,
        };
        let w = psi_last(&b.clone().with_contour_rule(rule), 2.0).unwrap();
        assert!(((v - w) / v).abs() < 1e-11);
        let dv = psi_last_deriv(&b, 2.0).unwrap();
        let dw = psi_last_deriv(&b.with_contour_rule(rule), 2.0).unwrap();
        assert!(((dv - dw) / dv).abs() < 1e-10);
    }

    #[test]
    fn psi_last_deriv_finite_difference() {
        let b = SkewBasis::new(params(3, 2, 0.5)).unwrap();
        let h = 1e-5;
        let fd = (psi_last(&b, 1.5 + h).unwrap() - psi_last(&b, 1.5 - h).unwrap()) / (2.0 * h);
        let d = psi_last_deriv(&b, 1.5).unwrap();
        assert!(((d - fd) / d).abs() < 1e-6);
    }

    #[test]
    fn psi_last_single_pair_closed_form() {
        // N = 1: ψ_1 = (e^{cx} - (1+a)^{2M-1}) x^{M-1/2} e^{-Mx}
        let (m, a) = (3usize, 0.6f64);
        let b = SkewBasis::new(params(m, 1, a)).unwrap();
        let mf = m as f64;
        let c = 2.0 * mf * a / (1.0 + a);
        let k = (1.0 + a).powi(2 * m as i32 - 1);
        for x in [0.3f64, 1.0, 2.5, 6.0] {
            let w = x.powf(mf - 0.5) * (-mf * x).exp();
            let dw = w * ((mf - 0.5) / x - mf);
            let phi = (c * x).exp() - k;
            let want = phi * w;
            let dwant = c * (c * x).exp() * w + phi * dw;
            assert!(((psi_last(&b, x).unwrap() - want) / want).abs() < 1e-10);
            assert!(((psi_last_deriv(&b, x).unwrap() - dwant) / dwant).abs() < 1e-10);
        }
    }

    #[test]
    fn psi_penult_representations_agree() {
        let b = SkewBasis::new(params(3, 2, 0.5)).unwrap();
        assert!(psi_penult(&b, 50.0).unwrap().abs() < 1e-12);
        for x in [0.2, 0.9, 2.0, 4.0] {
            let q = psi_penult(&b, x).unwrap();
            let closed = b.point(x).unwrap().psi[2].value();
            assert!(
                (q - closed).abs() < 1e-8 * closed.abs().max(1e-3),
                "{x}: {q} vs {closed}"
            );
        }
    }

    #[test]
    fn psi_penult_derivative() {
        let b = SkewBasis::new(params(3, 2, 0.5)).unwrap();
        let (x, h) = (1.3f64, 1e-4);
        let fd = (psi_penult(&b, x + h).unwrap() - psi_penult(&b, x - h).unwrap()) / (2.0 * h);
        let c = 1.5 * b.coeffs()[1];
        let want = c * x.powf(0.5) * (-3.0 * x).exp() * laguerre_table(3, 2, 6.0 * x)[3].value();
        assert!(((fd - want) / want).abs() < 1e-6);
    }
}
