//! Entries of the 2×2 block kernel.

use super::basis::{BasisPoint, SkewBasis};
use crate::error::Result;
use crate::special::{ln_factorial, LogScaled};

/// `(S_4, SD_4, IS_4)` at one `(x, y)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelEntries {
    pub s: f64,
    pub sd: f64,
    pub is: f64,
}

/// Block kernel `[[S(x,y), SD(x,y)], [IS(x,y), S(y,x)]]` restricted to `(T, ∞)`.
#[derive(Debug, Clone)]
pub struct BlockKernel {
    basis: SkewBasis,
    threshold: f64,
}

impl BlockKernel {
    pub fn new(basis: SkewBasis, threshold: f64) -> Self {
        BlockKernel { basis, threshold }
    }

    pub fn basis(&self) -> &SkewBasis {
        &self.basis
    }

    pub fn threshold(&self) -> f64 {
        self.threshold
    }

    /// Block entries at `(x, y)`; zero outside `(T, ∞)²`.
    pub fn block(&self, x: f64, y: f64) -> Result<[[f64; 2]; 2]> {
        if x <= self.threshold || y <= self.threshold {
            return Ok([[0.0; 2]; 2]);
        }
        let (px, py) = (self.basis.point(x)?, self.basis.point(y)?);
        let xy = kernel_from_points(&self.basis, &px, &py);
        let yx = s_from_points(&self.basis, &py, &px);
        Ok([[xy.s, xy.sd], [xy.is, yx]])
    }
}

pub fn kernel_eval(basis: &SkewBasis, x: f64, y: f64) -> Result<KernelEntries> {
    let px = basis.point(x)?;
    let py = basis.point(y)?;
    Ok(kernel_from_points(basis, &px, &py))
}

pub(crate) fn kernel_from_points(
    basis: &SkewBasis,
    px: &BasisPoint,
    py: &BasisPoint,
) -> KernelEntries {
    let n = basis.params().n();
    let mut sd = 0.0;
    let mut is = 0.0;
    for j in 0..n {
        let inv = LogScaled::new(basis.norms()[j].sign(), -basis.norms()[j].log_mag());
        let (e, o) = (2 * j, 2 * j + 1);
        sd += (inv * px.dpsi[e] * py.dpsi[o]).value() - (inv * px.dpsi[o] * py.dpsi[e]).value();
        is += -(inv * px.psi[e] * py.psi[o]).value() + (inv * px.psi[o] * py.psi[e]).value();
    }
    KernelEntries {
        s: s_from_points(basis, px, py),
        sd,
        is,
    }
}

/// `S_4(x, y)` as the Laguerre Christoffel-type sum plus the tail-integral
/// corrections; the `ψ`-sum form is [`s_psi_sum`].
pub(crate) fn s_from_points(basis: &SkewBasis, px: &BasisPoint, py: &BasisPoint) -> f64 {
    let p = basis.params();
    let (m, n) = (p.m(), p.n());
    let alpha = basis.alpha() as usize;
    let a1 = (alpha + 1) as f64;
    let log2m = (2.0 * m as f64).ln();
    let wm_x = px.log_wm();
    let w_y = py.log_w;

    // ½ (2M)^{α+1} Σ_{j<=2N-2} j!/(j+α)! L_j(2Mx) L_j(2My) wm(x) w(y)
    let base = a1 * log2m - 2f64.ln() + wm_x + w_y;
    let a1_sum = LogScaled::sum((0..=2 * n - 2).map(|j| {
        (px.lag[j] * py.lag[j])
            .scale_log(base + ln_factorial(j as u64) - ln_factorial((j + alpha) as u64))
    }));

    let tail = basis.tail_from_point(py);
    // ¼ (2M)^{α+1} (2N-1)!/(2M-2)! L_{2N-2}(2Mx) wm(x) tail(y)
    let a2 = (px.lag[2 * n - 2] * tail).scale_log(
        a1 * log2m - 4f64.ln() + ln_factorial((2 * n - 1) as u64)
            - ln_factorial((2 * m - 2) as u64)
            + wm_x,
    );

    let b = if basis.is_white() {
        let inv = LogScaled::new(basis.norms()[n - 1].sign(), -basis.norms()[n - 1].log_mag());
        let (e, o) = (2 * n - 2, 2 * n - 1);
        inv * px.dpsi[o] * py.psi[e] - inv * px.dpsi[e] * py.psi[o]
    } else {
        // -½ (2M/(1+a))^{α+1} a^{-(2N-1)} (2N-1)!/(2M-1)!
        //   × {L_{2N-1}(2Mx) wm(x) ψ_{2N-1}(y) + ψ'_{2N-1}(x) tail(y)}
        let a = p.a();
        let k = LogScaled::new(
            if a > 0.0 { -1 } else { 1 },
            a1 * (log2m - (1.0 + a).ln()) - (2 * n - 1) as f64 * a.abs().ln() - 2f64.ln()
                + ln_factorial((2 * n - 1) as u64)
                - ln_factorial((2 * m - 1) as u64),
        );
        let inner =
            (px.lag[2 * n - 1] * py.psi[2 * n - 1]).scale_log(wm_x) + px.dpsi[2 * n - 1] * tail;
        k * inner
    };
    a1_sum.value() + a2.value() + b.value()
}

/// `S_4(x, y) = Σ_j (1/r_j)(-ψ'_{2j}(x) ψ_{2j+1}(y) + ψ'_{2j+1}(x) ψ_{2j}(y))`.
pub fn s_psi_sum(basis: &SkewBasis, x: f64, y: f64) -> Result<f64> {
    let (px, py) = (basis.point(x)?, basis.point(y)?);
    let mut s = 0.0;
    for j in 0..basis.params().n() {
        let inv = LogScaled::new(basis.norms()[j].sign(), -basis.norms()[j].log_mag());
        s += (inv * px.dpsi[2 * j + 1] * py.psi[2 * j]).value()
            - (inv * px.dpsi[2 * j] * py.psi[2 * j + 1]).value();
    }
    Ok(s)
}
