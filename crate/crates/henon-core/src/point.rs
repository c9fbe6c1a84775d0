//! Points of C^2 and 2x2 complex matrices.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Mul, Sub};

#[derive(Clone, Copy, PartialEq, Debug, Default, Serialize, Deserialize)]
pub struct Point2 {
    pub x: Complex64,
    pub y: Complex64,
}

impl Point2 {
    pub const fn new(x: Complex64, y: Complex64) -> Self {
        Self { x, y }
    }

    pub fn real(x: f64, y: f64) -> Self {
        Self { x: Complex64::new(x, 0.0), y: Complex64::new(y, 0.0) }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    /// Euclidean norm in C^2 = R^4.
    pub fn norm(&self) -> f64 {
        (self.x.norm_sqr() + self.y.norm_sqr()).sqrt()
    }

    pub fn dist(&self, o: &Point2) -> f64 {
        (*self - *o).norm()
    }

    pub fn scale(&self, k: Complex64) -> Point2 {
        Point2::new(self.x * k, self.y * k)
    }

    /// Hermitian inner product `<self, o>` (conjugate-linear in `o`).
    pub fn dot(&self, o: &Point2) -> Complex64 {
        self.x * o.x.conj() + self.y * o.y.conj()
    }

    /// Lexicographic key on (re x, im x, re y, im y).
    pub fn lex_key(&self) -> [f64; 4] {
        [self.x.re, self.x.im, self.y.re, self.y.im]
    }

    pub fn max_imag(&self) -> f64 {
        self.x.im.abs().max(self.y.im.abs())
    }
}

impl Add for Point2 {
    type Output = Point2;
    fn add(self, o: Point2) -> Point2 {
        Point2::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point2 {
    type Output = Point2;
    fn sub(self, o: Point2) -> Point2 {
        Point2::new(self.x - o.x, self.y - o.y)
    }
}

impl fmt::Display for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", crate::parse::format_complex(self.x), crate::parse::format_complex(self.y))
    }
}

/// Row-major 2x2 complex matrix.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct Mat2 {
    pub m: [[Complex64; 2]; 2],
}

impl Mat2 {
    pub const fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Self {
        Self { m: [[a, b], [c, d]] }
    }

    pub fn identity() -> Self {
        let o = Complex64::new(1.0, 0.0);
        let z = Complex64::new(0.0, 0.0);
        Self::new(o, z, z, o)
    }

    pub fn from_columns(c0: Point2, c1: Point2) -> Self {
        Self::new(c0.x, c1.x, c0.y, c1.y)
    }

    pub fn col(&self, j: usize) -> Point2 {
        Point2::new(self.m[0][j], self.m[1][j])
    }

    pub fn det(&self) -> Complex64 {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    pub fn trace(&self) -> Complex64 {
        self.m[0][0] + self.m[1][1]
    }

    pub fn apply(&self, v: Point2) -> Point2 {
        Point2::new(self.m[0][0] * v.x + self.m[0][1] * v.y, self.m[1][0] * v.x + self.m[1][1] * v.y)
    }

    pub fn inverse(&self) -> Option<Mat2> {
        let d = self.det();
        if d.norm() == 0.0 || !d.is_finite() {
            return None;
        }
        let inv = Mat2::new(self.m[1][1] / d, -self.m[0][1] / d, -self.m[1][0] / d, self.m[0][0] / d);
        inv.is_finite().then_some(inv)
    }

    pub fn is_finite(&self) -> bool {
        self.m.iter().flatten().all(|z| z.is_finite())
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.m.iter().flatten().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Eigenvalues ordered by increasing modulus.
    pub fn eigenvalues(&self) -> [Complex64; 2] {
        let t = self.trace();
        let d = self.det();
        let disc = (t * t - 4.0 * d).sqrt();
        // Pick the root without cancellation, recover the other from the determinant.
        let big = if (t + disc).norm() >= (t - disc).norm() { (t + disc) * 0.5 } else { (t - disc) * 0.5 };
        let small = if big.norm() > 0.0 { d / big } else { Complex64::new(0.0, 0.0) };
        if small.norm() <= big.norm() {
            [small, big]
        } else {
            [big, small]
        }
    }

    /// Unit eigenvector for eigenvalue `ev`.
    pub fn eigenvector(&self, ev: Complex64) -> Point2 {
        let a = self.m[0][0] - ev;
        let b = self.m[0][1];
        let c = self.m[1][0];
        let d = self.m[1][1] - ev;
        // Null vector of [[a, b], [c, d]] from the better conditioned row.
        let v = if a.norm() + b.norm() >= c.norm() + d.norm() { Point2::new(b, -a) } else { Point2::new(d, -c) };
        let n = v.norm();
        if n == 0.0 {
            return Point2::real(1.0, 0.0);
        }
        v.scale(Complex64::new(1.0 / n, 0.0))
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, o: Mat2) -> Mat2 {
        let mut r = [[Complex64::new(0.0, 0.0); 2]; 2];
        for (i, row) in r.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = self.m[i][0] * o.m[0][j] + self.m[i][1] * o.m[1][j];
            }
        }
        Mat2 { m: r }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn eigen_pairs_of_triangular_matrix() {
        let m = Mat2::new(c(3.0), c(1.0), c(0.0), c(0.5));
        let [s, b] = m.eigenvalues();
        assert!((s - c(0.5)).norm() < 1e-14);
        assert!((b - c(3.0)).norm() < 1e-14);
        for ev in [s, b] {
            let v = m.eigenvector(ev);
            let r = m.apply(v) - v.scale(ev);
            assert!(r.norm() < 1e-13);
        }
    }

    #[test]
    fn inverse_times_matrix_is_identity() {
        let m = Mat2::new(Complex64::new(1.0, 2.0), c(-0.3), c(1.0), c(0.0));
        let p = m * m.inverse().unwrap();
        assert!((p.m[0][0] - c(1.0)).norm() < 1e-14);
        assert!(p.m[0][1].norm() < 1e-14);
    }
}
