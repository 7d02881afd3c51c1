//! Airy function Ai, its derivative and the tail integral `B(x) = ∫_x^∞ Ai`.
//!
//! Values inside `[TABLE_LO, TABLE_HI]` come from a table of `(Ai, Ai', B)`
//! built once by Taylor-stepping `y'' = x y`; evaluation expands around the
//! nearest node. Outside the table the classical asymptotic series are used.

use std::f64::consts::PI;
use std::sync::OnceLock;

pub const AI0: f64 = 0.355_028_053_887_817_239_3;
pub const AIP0: f64 = -0.258_819_403_792_806_798_4;

const TABLE_LO: f64 = -200.0;
const TABLE_HI: f64 = 40.0;
const STEPS_PER_UNIT: usize = 8;
const H: f64 = 1.0 / STEPS_PER_UNIT as f64;
const MAX_TERMS: usize = 80;

#[derive(Clone, Copy, Debug)]
struct Node {
    ai: f64,
    aip: f64,
    tail: f64,
}

struct Table {
    nodes: Vec<Node>,
}

fn table() -> &'static Table {
    static TABLE: OnceLock<Table> = OnceLock::new();
    TABLE.get_or_init(build_table)
}

fn node_x(k: usize) -> f64 {
    TABLE_LO + k as f64 * H
}

fn build_table() -> Table {
    let n_left = (-TABLE_LO) as usize * STEPS_PER_UNIT;
    let n_right = TABLE_HI as usize * STEPS_PER_UNIT;
    let mut nodes = vec![
        Node {
            ai: 0.0,
            aip: 0.0,
            tail: 0.0
        };
        n_left + n_right + 1
    ];

    // Right part: start from the asymptotic series at TABLE_HI and step back to
    // the origin, the direction in which Ai is the dominant solution.
    let (ai, aip) = asymptotic_positive(TABLE_HI);
    let mut cur = Node {
        ai,
        aip,
        tail: asymptotic_tail_positive(TABLE_HI),
    };
    nodes[n_left + n_right] = cur;
    for k in (n_left..n_left + n_right).rev() {
        let x0 = node_x(k + 1);
        let (ai, aip, integral) = taylor(x0, cur.ai, cur.aip, -H);
        // `integral` is ∫_{x0}^{x0-H} Ai, i.e. minus the panel contribution.
        cur = Node {
            ai,
            aip,
            tail: cur.tail - integral,
        };
        nodes[k] = cur;
    }

    // Left part: oscillatory region, forward from the exact values at 0.
    let mut cur = Node {
        ai: AI0,
        aip: AIP0,
        tail: 1.0 / 3.0,
    };
    nodes[n_left] = cur;
    for k in (0..n_left).rev() {
        let x0 = node_x(k + 1);
        let (ai, aip, integral) = taylor(x0, cur.ai, cur.aip, -H);
        cur = Node {
            ai,
            aip,
            tail: cur.tail - integral,
        };
        nodes[k] = cur;
    }
    Table { nodes }
}

/// Taylor expansion of the Airy equation around `x0` with data `(y, y')`.
/// Returns `(y(x0+h), y'(x0+h), ∫_{x0}^{x0+h} y)`.
fn taylor(x0: f64, y: f64, yp: f64, h: f64) -> (f64, f64, f64) {
    // a_n h^n carried directly as c_n to avoid powers.
    let mut c_prev2; // c_{n-1}
    let mut c_prev = y; // c_{n-1} once the loop starts
    let mut c = yp * h; // c_n
    let mut val = y + c;
    let mut der = yp; // Σ n c_n / h
    let mut int = y * h + c * h / 2.0;
    // c_2 = x0 y / 2 * h^2
    c_prev2 = c_prev;
    c_prev = c;
    c = x0 * y * h * h / 2.0;
    let mut n = 2usize;
    let mut quiet = 0;
    loop {
        val += c;
        der += n as f64 * c / h;
        int += c * h / (n as f64 + 1.0);
        let scale = val.abs().max(der.abs() * h.abs()).max(f64::MIN_POSITIVE);
        if c.abs() <= 1e-18 * scale {
            quiet += 1;
            if quiet >= 3 {
                break;
            }
        } else {
            quiet = 0;
        }
        if n >= MAX_TERMS {
            break;
        }
        // (n+1) n a_{n+1} = x0 a_{n-1} + a_{n-2}
        let next = (x0 * c_prev * h * h + c_prev2 * h * h * h) / ((n as f64 + 1.0) * n as f64);
        c_prev2 = c_prev;
        c_prev = c;
        c = next;
        n += 1;
    }
    (val, der, int)
}

fn u_coeffs() -> &'static [f64] {
    static U: OnceLock<Vec<f64>> = OnceLock::new();
    U.get_or_init(|| {
        let mut u = vec![1.0];
        for k in 1..40 {
            let kf = k as f64;
            let prev = u[k - 1];
            u.push(
                prev * (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0)
                    / ((2.0 * kf - 1.0) * 216.0 * kf),
            );
        }
        u
    })
}

fn v_coeff(k: usize) -> f64 {
    let kf = k as f64;
    -(6.0 * kf + 1.0) / (6.0 * kf - 1.0) * u_coeffs()[k]
}

/// Sums an asymptotic series `Σ sign_k c_k / ζ^k`, stopping at the smallest term.
fn asym_sum(
    zeta: f64,
    coeff: impl Fn(usize) -> f64,
    alternating: bool,
    parity: Option<usize>,
) -> f64 {
    let mut total = 0.0;
    let mut last = f64::INFINITY;
    let mut j = 0usize;
    loop {
        let k = match parity {
            Some(p) => 2 * j + p,
            None => j,
        };
        if k >= u_coeffs().len() {
            break;
        }
        let term = coeff(k) / zeta.powi(k as i32);
        if term.abs() > last {
            break;
        }
        let s = if alternating && j % 2 == 1 { -1.0 } else { 1.0 };
        total += s * term;
        last = term.abs();
        if last < 1e-18 * total.abs() {
            break;
        }
        j += 1;
    }
    total
}

fn asymptotic_positive(x: f64) -> (f64, f64) {
    let zeta = 2.0 / 3.0 * x.powf(1.5);
    let e = (-zeta).exp() / (2.0 * PI.sqrt());
    let su = asym_sum(zeta, |k| u_coeffs()[k], true, None);
    let sv = asym_sum(zeta, v_coeff, true, None);
    (e / x.powf(0.25) * su, -e * x.powf(0.25) * sv)
}

fn asymptotic_tail_positive(x: f64) -> f64 {
    let zeta = 2.0 / 3.0 * x.powf(1.5);
    (-zeta).exp() / (2.0 * PI.sqrt() * x.powf(0.75)) * (1.0 - 41.0 / (48.0 * zeta))
}

fn asymptotic_negative(x: f64) -> (f64, f64) {
    let y = -x;
    let zeta = 2.0 / 3.0 * y.powf(1.5);
    let (s, c) = (zeta + PI / 4.0).sin_cos();
    let ue = asym_sum(zeta, |k| u_coeffs()[k], true, Some(0));
    let uo = asym_sum(zeta, |k| u_coeffs()[k], true, Some(1));
    let ve = asym_sum(zeta, v_coeff, true, Some(0));
    let vo = asym_sum(zeta, v_coeff, true, Some(1));
    let ai = (s * ue - c * uo) / (PI.sqrt() * y.powf(0.25));
    let aip = -y.powf(0.25) / PI.sqrt() * (c * ve + s * vo);
    (ai, aip)
}

fn eval(x: f64) -> (f64, f64, f64) {
    if x.is_nan() {
        return (f64::NAN, f64::NAN, f64::NAN);
    }
    if x > TABLE_HI {
        let (ai, aip) = asymptotic_positive(x);
        return (ai, aip, asymptotic_tail_positive(x));
    }
    if x < TABLE_LO {
        let (ai, aip) = asymptotic_negative(x);
        let y = -x;
        let zeta = 2.0 / 3.0 * y.powf(1.5);
        let tail = 1.0 - (zeta + PI / 4.0).cos() / (PI.sqrt() * y.powf(0.75));
        return (ai, aip, tail);
    }
    let t = table();
    let k = ((x - TABLE_LO) / H).round() as usize;
    let k = k.min(t.nodes.len() - 1);
    let x0 = node_x(k);
    let h = x - x0;
    let node = t.nodes[k];
    if h == 0.0 {
        return (node.ai, node.aip, node.tail);
    }
    let (ai, aip, integral) = taylor(x0, node.ai, node.aip, h);
    (ai, aip, node.tail - integral)
}

/// Ai(x).
pub fn airy_ai(x: f64) -> f64 {
    eval(x).0
}

/// Ai'(x).
pub fn airy_ai_prime(x: f64) -> f64 {
    eval(x).1
}

/// `B(x) = ∫_x^∞ Ai(t) dt`.
pub fn airy_tail(x: f64) -> f64 {
    eval(x).2
}

/// `s1(x) = 1 - B(x)`.
pub fn airy_s1(x: f64) -> f64 {
    1.0 - airy_tail(x)
}

/// `(Ai(x), Ai'(x), B(x))` in one lookup.
pub fn airy_all(x: f64) -> (f64, f64, f64) {
    eval(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::quadrature::composite_grid;
    use num_complex::Complex64;

    /// Ai from the contour representation: rays from ∞e^{iπ/3} to 0 and out to
    /// ∞e^{-iπ/3}, prefactor -1/(2πi).
    fn contour_ai(x: f64) -> f64 {
        let grid = composite_grid(0.0, 10.0, 40, 20).unwrap();
        let up = Complex64::from_polar(1.0, PI / 3.0);
        let down = up.conj();
        let mut acc = Complex64::new(0.0, 0.0);
        for (r, w) in grid.iter() {
            let f = |d: Complex64| {
                let z = d * r;
                (-x * z + z * z * z / 3.0).exp() * d
            };
            acc += (f(down) - f(up)) * w;
        }
        (acc * (-1.0 / (2.0 * PI * Complex64::i()))).re
    }

    /// Maclaurin series, usable for modest |x|.
    fn maclaurin(x: f64) -> (f64, f64) {
        let mut a = vec![AI0, AIP0, 0.0];
        for n in 3..200 {
            let v = a[n - 3] / (n as f64 * (n as f64 - 1.0));
            a.push(v);
        }
        let ai = a.iter().rev().fold(0.0, |acc, &c| acc * x + c);
        let aip = a
            .iter()
            .enumerate()
            .skip(1)
            .rev()
            .fold(0.0, |acc, (n, &c)| acc * x + n as f64 * c);
        (ai, aip)
    }

    #[test]
    fn origin_two_methods() {
        assert!((airy_ai(0.0) - contour_ai(0.0)).abs() < 1e-12);
        assert!((airy_ai(0.0) - AI0).abs() < 1e-15);
        assert!((airy_ai_prime(0.0) - AIP0).abs() < 1e-15);
        assert!((airy_tail(0.0) - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn contour_oracle_off_origin() {
        for x in [-3.0, -1.2, 0.7, 2.5] {
            assert!((airy_ai(x) - contour_ai(x)).abs() < 1e-12, "x={x}");
        }
    }

    #[test]
    fn maclaurin_agreement() {
        for i in 0..=90 {
            let x = -4.5 + 0.1 * i as f64;
            let (ai, aip) = maclaurin(x);
            assert!((airy_ai(x) - ai).abs() < 1e-13, "x={x}");
            assert!((airy_ai_prime(x) - aip).abs() < 1e-13, "x={x}");
        }
    }

    #[test]
    fn right_sweep_meets_exact_origin() {
        // The table's right half was integrated from x = 40 down to 0.
        let t = table();
        let n_left = (-TABLE_LO) as usize * STEPS_PER_UNIT;
        let mid = t.nodes[n_left];
        let (ai, aip, tail) = taylor(H, t.nodes[n_left + 1].ai, t.nodes[n_left + 1].aip, -H);
        assert!((ai - AI0).abs() < 1e-14 && (aip - AIP0).abs() < 1e-14);
        assert!((t.nodes[n_left + 1].tail - tail - 1.0 / 3.0).abs() < 1e-14);
        assert!((mid.ai - AI0).abs() < 1e-16);
    }

    #[test]
    fn known_values() {
        // Reference values computed to 30 digits with mpmath.
        assert!((airy_ai(1.0) - 0.135_292_416_312_881_415_5).abs() < 1e-15);
        assert!((airy_ai_prime(1.0) + 0.159_147_441_296_793_212_8).abs() < 1e-15);
        assert!((airy_ai(-1.0) - 0.535_560_883_292_352_118_8).abs() < 1e-15);
        assert!(
            ((airy_ai(5.0) - 1.083_444_281_360_744_5e-4) / 1.083_444_281_360_744_5e-4).abs()
                < 1e-13
        );
        assert!((airy_ai(-10.0) - 0.040_241_238_486_443_190_7).abs() < 1e-13);
        assert!((airy_ai_prime(-10.0) - 0.996_265_044_132_790_055_9).abs() < 1e-12);
    }

    #[test]
    fn decay_and_asymptotic_match() {
        assert!(airy_ai(30.0) < 1e-30 && airy_ai(30.0) > 0.0);
        let mut prev = airy_ai(2.0);
        for i in 1..200 {
            let v = airy_ai(2.0 + 0.25 * i as f64);
            assert!(v < prev);
            prev = v;
        }
        for x in [10.0, 20.0, 30.0, 39.9] {
            let (a, d) = asymptotic_positive(x);
            assert!(((airy_ai(x) - a) / a).abs() < 1e-12, "x={x}");
            assert!(((airy_ai_prime(x) - d) / d).abs() < 1e-12, "x={x}");
        }
        for x in [-30.0, -60.0, -150.0, -199.9] {
            let (a, d) = asymptotic_negative(x);
            assert!((airy_ai(x) - a).abs() < 1e-12, "x={x}");
            assert!((airy_ai_prime(x) - d).abs() < 1e-11, "x={x}");
        }
    }

    #[test]
    fn wronskian_like_ode_residual() {
        // y'' = x y via a central difference on Ai'.
        for x in [-14.0, -3.3, 0.4, 6.0] {
            let h = 1e-5;
            let ypp = (airy_ai_prime(x + h) - airy_ai_prime(x - h)) / (2.0 * h);
            assert!((ypp - x * airy_ai(x)).abs() < 1e-8, "x={x}");
        }
    }

    #[test]
    fn tail_values() {
        assert!(airy_tail(30.0).abs() < 1e-12);
        for x in [-7.0, -2.0, 0.0, 2.0, 9.0] {
            assert_eq!(airy_s1(x) + airy_tail(x), 1.0 - airy_tail(x) + airy_tail(x));
        }
        for x in [-2.0, 0.0, 2.0] {
            let h = 1e-5;
            let d = (airy_tail(x + h) - airy_tail(x - h)) / (2.0 * h);
            assert!((d + airy_ai(x)).abs() < 1e-7, "x={x}");
        }
    }

    #[test]
    fn tail_against_quadrature() {
        for x in [-12.0, -5.0, -0.5, 1.0, 4.0] {
            let g = composite_grid(x, 40.0, 200, 20).unwrap();
            let q = g.integrate(airy_ai);
            assert!(
                (q - airy_tail(x)).abs() < 1e-12,
                "x={x}: {q} vs {}",
                airy_tail(x)
            );
        }
    }

    #[test]
    fn total_mass_window() {
        // The integral over [-40, 40] equals B(-40) - B(40); the remainder to the
        // full mass of one is the oscillating tail below -40, bounded by the
        // leading asymptotic amplitude 40^{-3/4}/sqrt(pi).
        let g = composite_grid(-40.0, 40.0, 400, 20).unwrap();
        let q = g.integrate(airy_ai);
        assert!((q - (airy_tail(-40.0) - airy_tail(40.0))).abs() < 1e-11);
        let bound = 40f64.powf(-0.75) / PI.sqrt() * 1.01;
        assert!((1.0 - q).abs() <= bound);
        // Far out the tail settles on one.
        let deep = airy_tail(-190.0);
        assert!((1.0 - deep).abs() <= 190f64.powf(-0.75) / PI.sqrt() * 1.01);
    }

    #[test]
    fn reference_sweep() {
        // (x, Ai, Ai', B) computed with mpmath at 30 digits.
        let table: [(f64, f64, f64, f64); 17] = [
            (
                -15.0,
                0.27821749087082892953,
                0.27237420430864202083,
                1.0169139616952691863,
            ),
            (
                -12.3,
                -0.2874720802564413633,
                0.31007878814201665197,
                1.027074963952011693,
            ),
            (
                -9.7,
                0.28023750191629743829,
                0.48628629123926820898,
                1.0470718072496214839,
            ),
            (
                -7.25,
                0.32374057321118614622,
                -0.30022899504735408146,
                0.95275651192206693404,
            ),
            (
                -4.6,
                0.33749597548946286318,
                -0.37953391433584533575,
                0.90401922992403642083,
            ),
            (
                -2.2,
                0.096145378007669001802,
                0.68624482490900170983,
                1.2676889620575689872,
            ),
            (
                -0.8,
                0.52357394970577400835,
                -0.10580999118796886753,
                0.69277486406893740155,
            ),
            (
                0.35,
                0.2666578721607712695,
                -0.24071729733555172017,
                0.22472670719672730197,
            ),
            (
                1.9,
                0.040594420031529496666,
                -0.06043678178575654015,
                0.024570383492097200444,
            ),
            (
                3.6,
                0.0021264786826381708363,
                -0.0041711317444193810804,
                0.0010270091421528237048,
            ),
            (
                6.1,
                7.7477310324484275363e-6,
                -0.000019440985375102954127,
                3.0012898136677308764e-6,
            ),
            (
                9.4,
                7.2674117707792015033e-10,
                -2.2470755570506691197e-9,
                2.3133343820418318646e-10,
            ),
            (
                13.0,
                3.981776078833335363e-15,
                -1.4432080573972626044e-14,
                1.0875320879868456877e-15,
            ),
            (
                17.5,
                8.7742208232947097375e-23,
                -3.6829496287900966919e-22,
                2.0766374082977326406e-23,
            ),
            (
                22.2,
                6.7410961052849720378e-32,
                -3.1837404916286654969e-31,
                1.4206352770201470161e-32,
            ),
            (
                26.8,
                8.3877684964299851893e-42,
                -4.3500296252776393724e-41,
                1.6115687358070758505e-42,
            ),
            (
                30.0,
                3.2082175915504955711e-49,
                -1.7598765814327259821e-48,
                5.830874025029283742e-50,
            ),
        ];
        for (x, ai, aip, b) in table {
            let (a, d, t) = airy_all(x);
            assert!((a - ai).abs() < 1e-12, "Ai({x})");
            assert!((d - aip).abs() < 1e-12, "Ai'({x})");
            assert!((t - b).abs() < 1e-10, "B({x})");
        }
    }
}
