//! Hastings–McLeod solution of `q'' = s q + 2 q^3` and the resolvent identities
//! tying it to the critical-spike kernel.

use super::airy_kernel::AiryTables;
use super::fredholm::{limit_grid, DEFAULT_CUTOFF, DEFAULT_LIMIT_NODES};
use crate::error::{Error, Result};
use crate::special::{airy_all, airy_s1};
use nalgebra::{DMatrix, DVector};

/// Integration starts here from Airy data.
pub const PAINLEVE_START: f64 = 8.0;
/// Backward integration loses accuracy quickly below this point.
pub const PAINLEVE_LOWER: f64 = -7.0;
const LOCAL_TOL: f64 = 1e-10;

/// `q`, `q'` and `∫_s^∞ q` at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PainleveState {
    pub s: f64,
    pub q: f64,
    pub qp: f64,
    pub int_q: f64,
}

type State = [f64; 3];

fn rhs(s: f64, y: &State) -> State {
    [y[1], s * y[0] + 2.0 * y[0].powi(3), -y[0]]
}

fn axpy(y: &State, h: f64, terms: &[(f64, &State)]) -> State {
    let mut out = *y;
    for (c, k) in terms {
        for i in 0..3 {
            out[i] += h * c * k[i];
        }
    }
    out
}

/// Dormand–Prince 5(4) from `PAINLEVE_START` down to `s`.
pub fn painleve_solve(s: f64) -> Result<PainleveState> {
    if !(PAINLEVE_LOWER..=PAINLEVE_START).contains(&s) {
        return Err(Error::Domain(format!(
            "Painlevé solution available on [{PAINLEVE_LOWER}, {PAINLEVE_START}], got {s}"
        )));
    }
    let (ai, aip, tail) = airy_all(PAINLEVE_START);
    // third component: ∫_s^∞ q, seeded with the Airy tail beyond the start
    let mut y: State = [ai, aip, tail];
    let mut x = PAINLEVE_START;
    let mut h = -0.01;
    let mut k1 = rhs(x, &y);
    let mut steps = 0usize;
    while x > s {
        if x + h < s {
            h = s - x;
        }
        let k2 = rhs(x + h / 5.0, &axpy(&y, h, &[(1.0 / 5.0, &k1)]));
        let k3 = rhs(
            x + 3.0 * h / 10.0,
            &axpy(&y, h, &[(3.0 / 40.0, &k1), (9.0 / 40.0, &k2)]),
        );
        let k4 = rhs(
            x + 4.0 * h / 5.0,
            &axpy(
                &y,
                h,
                &[(44.0 / 45.0, &k1), (-56.0 / 15.0, &k2), (32.0 / 9.0, &k3)],
            ),
        );
        let k5 = rhs(
            x + 8.0 * h / 9.0,
            &axpy(
                &y,
                h,
                &[
                    (19372.0 / 6561.0, &k1),
                    (-25360.0 / 2187.0, &k2),
                    (64448.0 / 6561.0, &k3),
                    (-212.0 / 729.0, &k4),
                ],
            ),
        );
        let k6 = rhs(
            x + h,
            &axpy(
                &y,
                h,
                &[
                    (9017.0 / 3168.0, &k1),
                    (-355.0 / 33.0, &k2),
                    (46732.0 / 5247.0, &k3),
                    (49.0 / 176.0, &k4),
                    (-5103.0 / 18656.0, &k5),
                ],
            ),
        );
        let y5 = axpy(
            &y,
            h,
            &[
                (35.0 / 384.0, &k1),
                (500.0 / 1113.0, &k3),
                (125.0 / 192.0, &k4),
                (-2187.0 / 6784.0, &k5),
                (11.0 / 84.0, &k6),
            ],
        );
        let k7 = rhs(x + h, &y5);
        let e = [
            71.0 / 57600.0,
            0.0,
            -71.0 / 16695.0,
            71.0 / 1920.0,
            -17253.0 / 339200.0,
            22.0 / 525.0,
            -1.0 / 40.0,
        ];
        let ks = [&k1, &k2, &k3, &k4, &k5, &k6, &k7];
        let mut err: f64 = 0.0;
        for i in 0..3 {
            let est: f64 = h * ks.iter().zip(e).map(|(k, c)| c * k[i]).sum::<f64>();
            let sc = LOCAL_TOL * y[i].abs().max(y5[i].abs()).max(1e-300);
            err = err.max((est / sc).abs());
        }
        if err <= 1.0 {
            x += h;
            y = y5;
            k1 = k7;
        }
        if !y.iter().all(|v| v.is_finite()) {
            return Err(Error::Domain(format!(
                "Painlevé integration diverged near s = {x}"
            )));
        }
        let factor = if err == 0.0 {
            5.0
        } else {
            (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
        };
        h *= factor;
        steps += 1;
        if steps > 1_000_000 {
            return Err(Error::Domain("Painlevé integration did not finish".into()));
        }
    }
    Ok(PainleveState {
        s,
        q: y[0],
        qp: y[1],
        int_q: y[2],
    })
}

pub fn painleve_q(s: f64) -> Result<f64> {
    Ok(painleve_solve(s)?.q)
}

/// Residuals of `(I+R)s1(T) = e^{-∫_T^∞ q}` and `<(I+R)s1, Ai>_T = 1 - e^{-∫_T^∞ q}`,
/// where `I + R = (I - K_Airy χ_T)^{-1}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdentityResiduals {
    pub at_threshold: f64,
    pub inner_product: f64,
}

pub fn tw_identity_check(t: f64) -> Result<IdentityResiduals> {
    tw_identity_check_with(t, DEFAULT_LIMIT_NODES)
}

pub fn tw_identity_check_with(t: f64, m: usize) -> Result<IdentityResiduals> {
    let state = painleve_solve(t)?;
    let grid = limit_grid(t, m, DEFAULT_CUTOFF)?;
    let mut nodes = grid.nodes.clone();
    nodes.push(t);
    let tab = AiryTables::new(&nodes, false);
    let w = &grid.weights;
    let a = DMatrix::from_fn(
        m,
        m,
        |i, j| if i == j { 1.0 } else { 0.0 } - tab.k[(i, j)] * w[j],
    );
    let rhs = DVector::from_fn(m, |i, _| 1.0 - tab.tail[i]);
    let f = a
        .lu()
        .solve(&rhs)
        .ok_or_else(|| Error::Domain(format!("I - K_Airy is singular at T = {t}")))?;
    // Nyström interpolation to the endpoint
    let f_t = airy_s1(t) + (0..m).map(|j| tab.k[(m, j)] * w[j] * f[j]).sum::<f64>();
    let inner: f64 = (0..m).map(|j| w[j] * f[j] * tab.ai[j]).sum();
    let e = (-state.int_q).exp();
    Ok(IdentityResiduals {
        at_threshold: (f_t - e).abs(),
        inner_product: (inner - (1.0 - e)).abs(),
    })
}
