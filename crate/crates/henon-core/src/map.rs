//! The generalized Henon family `F(x, y) = (p(x) - a y, x)`.

use crate::point::{Mat2, Point2};
use crate::poly::Poly;
use crate::rect::{Box2, ComplexRect};
use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MapError {
    #[error("degree must be at least 2, got {0}")]
    Degree(usize),
    #[error("parameter a must be nonzero")]
    ZeroJacobian,
    #[error("coefficients must be finite")]
    NonFinite,
    #[error("iterate diverged (overflow)")]
    Diverged,
}

/// An invertible self-map of (a region of) C^2 with derivative.
///
/// Implemented by [`HenonMap`] and by chart conjugates of its iterates.
pub trait PlanarMap: Sync {
    fn eval(&self, z: Point2) -> Option<Point2>;
    fn eval_inverse(&self, z: Point2) -> Option<Point2>;
    fn jacobian_at(&self, z: Point2) -> Option<Mat2>;
    /// Degree of the horizontal polynomial-like slices.
    fn slice_degree(&self) -> usize;
}

#[derive(Clone, Debug, PartialEq)]
pub struct HenonMap {
    p: Poly,
    dp: Poly,
    a: Complex64,
}

impl HenonMap {
    pub fn new(coeffs: Vec<Complex64>, a: Complex64) -> Result<Self, MapError> {
        if !a.is_finite() || coeffs.iter().any(|c| !c.is_finite()) {
            return Err(MapError::NonFinite);
        }
        let p = Poly::new(coeffs);
        if p.degree() < 2 {
            return Err(MapError::Degree(p.degree()));
        }
        if a.norm() == 0.0 {
            return Err(MapError::ZeroJacobian);
        }
        let dp = p.derivative();
        Ok(Self { p, dp, a })
    }

    /// `x^d + c - a y`.
    pub fn normal(d: usize, a: Complex64, c: Complex64) -> Result<Self, MapError> {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); d + 1];
        coeffs[0] = c;
        coeffs[d] = Complex64::new(1.0, 0.0);
        Self::new(coeffs, a)
    }

    /// `x^2 + c - a y` with real parameters.
    pub fn quadratic(a: f64, c: f64) -> Self {
        Self::normal(2, Complex64::new(a, 0.0), Complex64::new(c, 0.0)).expect("a must be nonzero")
    }

    pub fn poly(&self) -> &Poly {
        &self.p
    }

    pub fn a(&self) -> Complex64 {
        self.a
    }

    pub fn degree(&self) -> usize {
        self.p.degree()
    }

    /// `Some(c)` when `p(x) = x^d + c`.
    pub fn normal_form_c(&self) -> Option<Complex64> {
        let d = self.degree();
        let lead_one = self.p.coeffs[d] == Complex64::new(1.0, 0.0);
        let middle_zero = self.p.coeffs[1..d].iter().all(|c| c.norm() == 0.0);
        (lead_one && middle_zero).then_some(self.p.coeffs[0])
    }

    pub fn is_real(&self) -> bool {
        self.a.im == 0.0 && self.p.coeffs.iter().all(|c| c.im == 0.0)
    }

    pub fn apply(&self, z: Point2) -> Result<Point2, MapError> {
        let w = Point2::new(self.p.eval(z.x) - self.a * z.y, z.x);
        if w.is_finite() {
            Ok(w)
        } else {
            Err(MapError::Diverged)
        }
    }

    pub fn apply_inverse(&self, z: Point2) -> Result<Point2, MapError> {
        let w = Point2::new(z.y, (self.p.eval(z.y) - z.x) / self.a);
        if w.is_finite() {
            Ok(w)
        } else {
            Err(MapError::Diverged)
        }
    }

    /// `[[p'(x), -a], [1, 0]]`.
    pub fn jacobian(&self, z: Point2) -> Mat2 {
        Mat2::new(self.dp.eval(z.x), -self.a, Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0))
    }

    pub fn derivative_at(&self, x: Complex64) -> Complex64 {
        self.dp.eval(x)
    }

    /// `n`-fold iterate (negative `n` iterates the inverse).
    pub fn iterate(&self, mut z: Point2, n: i64) -> Result<Point2, MapError> {
        for _ in 0..n.unsigned_abs() {
            z = if n > 0 { self.apply(z)? } else { self.apply_inverse(z)? };
        }
        Ok(z)
    }

    /// `F^n(z)` together with `d(F^n)` at `z`.
    pub fn iterate_with_jacobian(&self, mut z: Point2, n: usize) -> Result<(Point2, Mat2), MapError> {
        let mut j = Mat2::identity();
        for _ in 0..n {
            j = self.jacobian(z) * j;
            z = self.apply(z)?;
        }
        if j.is_finite() {
            Ok((z, j))
        } else {
            Err(MapError::Diverged)
        }
    }

    /// Outward enclosure of `F(b)`.
    pub fn apply_box(&self, b: &Box2) -> Box2 {
        let x = self.p.eval_rect(&b.x) - b.y.scale(self.a);
        Box2::new(x, b.x)
    }

    /// Outward enclosure of `F^{-1}(b)`.
    pub fn apply_inverse_box(&self, b: &Box2) -> Box2 {
        let num = self.p.eval_rect(&b.y) - b.x;
        Box2::new(b.y, num * self.recip_a_rect())
    }

    fn recip_a_rect(&self) -> ComplexRect {
        // 1/a = conj(a)/|a|^2, enclosed in rectangle arithmetic.
        let ar = ComplexRect::point(self.a);
        let n2 = ar.re.sqr() + ar.im.sqr();
        let inv = n2.recip();
        ComplexRect { re: ar.re * inv, im: -(ar.im * inv) }
    }

    /// Entrywise enclosure of the Jacobian over a box.
    pub fn jacobian_box(&self, b: &Box2) -> [[ComplexRect; 2]; 2] {
        let one = ComplexRect::point(Complex64::new(1.0, 0.0));
        let zero = ComplexRect::point(Complex64::new(0.0, 0.0));
        [[self.dp.eval_rect(&b.x), ComplexRect::point(-self.a)], [one, zero]]
    }
}

impl PlanarMap for HenonMap {
    fn eval(&self, z: Point2) -> Option<Point2> {
        self.apply(z).ok()
    }
    fn eval_inverse(&self, z: Point2) -> Option<Point2> {
        self.apply_inverse(z).ok()
    }
    fn jacobian_at(&self, z: Point2) -> Option<Mat2> {
        Some(self.jacobian(z))
    }
    fn slice_degree(&self) -> usize {
        self.degree()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_linear_and_degenerate() {
        let one = Complex64::new(1.0, 0.0);
        assert_eq!(HenonMap::new(vec![one, one], one), Err(MapError::Degree(1)));
        assert_eq!(HenonMap::normal(2, Complex64::new(0.0, 0.0), one), Err(MapError::ZeroJacobian));
    }

    #[test]
    fn overflow_is_reported() {
        let f = HenonMap::quadratic(1.0, -10.0);
        let z = Point2::real(1e200, 0.0);
        assert_eq!(f.apply(z), Err(MapError::Diverged));
    }

    #[test]
    fn normal_form_detection() {
        assert!(HenonMap::quadratic(1.0, -10.0).normal_form_c().is_some());
        let one = Complex64::new(1.0, 0.0);
        let g = HenonMap::new(vec![one, one, one], one).unwrap();
        assert!(g.normal_form_c().is_none());
    }
}
