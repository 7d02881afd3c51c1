use nalgebra::DMatrix;
use num_complex::Complex64;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const ONE: Quaternion = Quaternion {
        w: 1.0,
        x: 0.0,
        y: 0.0,
        z: 0.0,
    };
    pub const I: Quaternion = Quaternion {
        w: 0.0,
        x: 1.0,
        y: 0.0,
        z: 0.0,
    };
    pub const J: Quaternion = Quaternion {
        w: 0.0,
        x: 0.0,
        y: 1.0,
        z: 0.0,
    };
    pub const K: Quaternion = Quaternion {
        w: 0.0,
        x: 0.0,
        y: 0.0,
        z: 1.0,
    };

    pub fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Quaternion { w, x, y, z }
    }

    pub fn real(w: f64) -> Self {
        Quaternion {
            w,
            x: 0.0,
            y: 0.0,
            z: 0.0,
        }
    }

    pub fn conj(self) -> Self {
        Quaternion {
            w: self.w,
            x: -self.x,
            y: -self.y,
            z: -self.z,
        }
    }

    pub fn norm_sqr(self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    /// 2×2 complex block `[[w+xi, y+zi], [-y+zi, w-xi]]`.
    pub fn embed(self) -> [[Complex64; 2]; 2] {
        [
            [
                Complex64::new(self.w, self.x),
                Complex64::new(self.y, self.z),
            ],
            [
                Complex64::new(-self.y, self.z),
                Complex64::new(self.w, -self.x),
            ],
        ]
    }

    /// Inverse of [`Quaternion::embed`], reading the first row of the block.
    pub fn from_block(a: Complex64, b: Complex64) -> Self {
        Quaternion {
            w: a.re,
            x: a.im,
            y: b.re,
            z: b.im,
        }
    }
}

/// Hamilton product.
pub fn quat_mul(p: Quaternion, q: Quaternion) -> Quaternion {
    Quaternion {
        w: p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
        x: p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
        y: p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
        z: p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w,
    }
}

impl Mul for Quaternion {
    type Output = Quaternion;
    fn mul(self, rhs: Quaternion) -> Quaternion {
        quat_mul(self, rhs)
    }
}

impl Add for Quaternion {
    type Output = Quaternion;
    fn add(self, r: Quaternion) -> Quaternion {
        Quaternion::new(self.w + r.w, self.x + r.x, self.y + r.y, self.z + r.z)
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    fn sub(self, r: Quaternion) -> Quaternion {
        Quaternion::new(self.w - r.w, self.x - r.x, self.y - r.y, self.z - r.z)
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        Quaternion::new(-self.w, -self.x, -self.y, -self.z)
    }
}

/// An `rows × cols` quaternion matrix held as its `2rows × 2cols` complex embedding.
#[derive(Debug, Clone, PartialEq)]
pub struct QuaternionMatrix {
    rows: usize,
    cols: usize,
    data: DMatrix<Complex64>,
}

impl QuaternionMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QuaternionMatrix {
            rows,
            cols,
            data: DMatrix::zeros(2 * rows, 2 * cols),
        }
    }

    pub fn from_fn<F: FnMut(usize, usize) -> Quaternion>(
        rows: usize,
        cols: usize,
        mut f: F,
    ) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    /// Wraps an embedding. Returns `None` if the shape is odd or some 2×2 block
    /// breaks the embedding pattern by more than `tol`.
    pub fn from_embedding(data: DMatrix<Complex64>, tol: f64) -> Option<Self> {
        if !data.nrows().is_multiple_of(2) || !data.ncols().is_multiple_of(2) {
            return None;
        }
        let m = QuaternionMatrix {
            rows: data.nrows() / 2,
            cols: data.ncols() / 2,
            data,
        };
        (m.pattern_defect() <= tol).then_some(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn embedding(&self) -> &DMatrix<Complex64> {
        &self.data
    }

    pub fn into_embedding(self) -> DMatrix<Complex64> {
        self.data
    }

    pub fn get(&self, i: usize, j: usize) -> Quaternion {
        Quaternion::from_block(self.data[(2 * i, 2 * j)], self.data[(2 * i, 2 * j + 1)])
    }

    pub fn set(&mut self, i: usize, j: usize, q: Quaternion) {
        let b = q.embed();
        for r in 0..2 {
            for c in 0..2 {
                self.data[(2 * i + r, 2 * j + c)] = b[r][c];
            }
        }
    }

    /// Largest deviation of any 2×2 block from the embedding pattern.
    pub fn pattern_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.data[(2 * i, 2 * j)];
                let b = self.data[(2 * i, 2 * j + 1)];
                let c = self.data[(2 * i + 1, 2 * j)];
                let d = self.data[(2 * i + 1, 2 * j + 1)];
                worst = worst.max((c + b.conj()).norm()).max((d - a.conj()).norm());
            }
        }
        worst
    }

    /// Quaternionic conjugate transpose.
    pub fn adjoint(&self) -> Self {
        QuaternionMatrix {
            rows: self.cols,
            cols: self.rows,
            data: self.data.adjoint(),
        }
    }

    pub fn matmul(&self, other: &QuaternionMatrix) -> Option<QuaternionMatrix> {
        (self.cols == other.rows).then(|| QuaternionMatrix {
            rows: self.rows,
            cols: other.cols,
            data: &self.data * &other.data,
        })
    }

    pub fn scale(&self, s: f64) -> Self {
        QuaternionMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.map(|v| v * s),
        }
    }

    /// Real part of the quaternionic trace (half the embedding trace).
    pub fn re_trace(&self) -> f64 {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i).w)
            .sum()
    }
}
