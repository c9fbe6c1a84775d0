//! Affine charts on the unit bidisc and chart conjugates of Henon iterates.

use crate::saddle::SaddleData;
use henon_core::{Complex64, HenonMap, Mat2, PlanarMap, Point2};
use serde::Serialize;

/// `φ(u, v) = center + u·r_u·frame_u + v·r_s·frame_s` on `|u|, |v| <= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EmbeddedBidiscChart {
    pub center: Point2,
    pub frame_u: Point2,
    pub frame_s: Point2,
    pub r_u: f64,
    pub r_s: f64,
}

impl EmbeddedBidiscChart {
    /// Eigenvector frame at the saddle.
    pub fn at_saddle(s: &SaddleData, r_u: f64, r_s: f64) -> Self {
        EmbeddedBidiscChart { center: s.p, frame_u: s.eigvec_u, frame_s: s.eigvec_s, r_u, r_s }
    }

    pub fn matrix(&self) -> Mat2 {
        Mat2::from_columns(self.frame_u.scale(Complex64::new(self.r_u, 0.0)), self.frame_s.scale(Complex64::new(self.r_s, 0.0)))
    }

    /// Frames independent and radii positive; an affine chart is then injective.
    pub fn is_valid(&self) -> bool {
        let m = self.matrix();
        self.r_u > 0.0 && self.r_s > 0.0 && m.det().norm() > 1e-12 * m.norm() * m.norm()
    }

    pub fn to_ambient(&self, z: Point2) -> Point2 {
        self.center + self.matrix().apply(z)
    }

    pub fn from_ambient(&self, w: Point2) -> Option<Point2> {
        self.from_offset(w - self.center)
    }

    /// Chart coordinates of `center + offset`, for offsets computed in
    /// higher precision.
    pub fn from_offset(&self, offset: Point2) -> Option<Point2> {
        Some(self.matrix().inverse()?.apply(offset))
    }

    pub fn with_radii(&self, r_u: f64, r_s: f64) -> Self {
        EmbeddedBidiscChart { r_u, r_s, ..*self }
    }
}

/// `φ^{-1} ∘ F^iterates ∘ φ`.
#[derive(Clone, Debug)]
pub struct ChartMap {
    pub map: HenonMap,
    pub chart: EmbeddedBidiscChart,
    pub iterates: u32,
    pub degree: usize,
    m: Mat2,
    minv: Mat2,
}

impl ChartMap {
    pub fn new(map: HenonMap, chart: EmbeddedBidiscChart, iterates: u32, degree: usize) -> Option<Self> {
        let m = chart.matrix();
        let minv = m.inverse()?;
        Some(ChartMap { map, chart, iterates, degree, m, minv })
    }
}

impl PlanarMap for ChartMap {
    fn eval(&self, z: Point2) -> Option<Point2> {
        let w = self.map.iterate(self.chart.center + self.m.apply(z), self.iterates as i64).ok()?;
        let u = self.minv.apply(w - self.chart.center);
        u.is_finite().then_some(u)
    }

    fn eval_inverse(&self, z: Point2) -> Option<Point2> {
        let w = self.map.iterate(self.chart.center + self.m.apply(z), -(self.iterates as i64)).ok()?;
        let u = self.minv.apply(w - self.chart.center);
        u.is_finite().then_some(u)
    }

    fn jacobian_at(&self, z: Point2) -> Option<Mat2> {
        let (_, j) = self.map.iterate_with_jacobian(self.chart.center + self.m.apply(z), self.iterates as usize).ok()?;
        let g = self.minv * j * self.m;
        g.is_finite().then_some(g)
    }

    fn slice_degree(&self) -> usize {
        self.degree
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::saddle::find_saddle;

    #[test]
    fn chart_round_trip_and_linearization() {
        let f = HenonMap::quadratic(0.3, -1.4);
        let s = find_saddle(&f, 1).unwrap();
        let c = EmbeddedBidiscChart::at_saddle(&s, 0.1, 0.2);
        assert!(c.is_valid());
        let z = Point2::new(Complex64::new(0.3, -0.2), Complex64::new(-0.5, 0.1));
        assert!(c.from_ambient(c.to_ambient(z)).unwrap().dist(&z) < 1e-14);
        // At the saddle the chart map's derivative is diag(λ, μ).
        let g = ChartMap::new(f, c, 1, 2).unwrap();
        let j = g.jacobian_at(Point2::real(0.0, 0.0)).unwrap();
        assert!((j.m[0][0] - s.lambda).norm() < 1e-12 && (j.m[1][1] - s.mu).norm() < 1e-12);
        assert!(j.m[0][1].norm() < 1e-12 && j.m[1][0].norm() < 1e-12);
        let w = g.eval_inverse(g.eval(z).unwrap()).unwrap();
        assert!(w.dist(&z) < 1e-10);
    }
}
