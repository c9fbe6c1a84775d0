//! Constant cone fields and exact cone-image tests for 2x2 matrices.

use henon_core::{Complex64, Mat2, Point2};
use serde::Serialize;

/// Horizontal cone `{gamma |xi2| < |xi1|}`.
///
/// The vertical field used alongside it is the complement
/// `{|xi1| < gamma |xi2|}`: if `dF` maps the closed horizontal cone into the
/// open one, `dF^{-1}` maps the closed complement into the open complement,
/// so one trapping condition covers both directions.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ConeField {
    pub gamma: f64,
}

impl ConeField {
    pub fn new(gamma: f64) -> Option<Self> {
        (gamma > 0.0 && gamma <= 1.0).then_some(ConeField { gamma })
    }

    pub fn unit() -> Self {
        ConeField { gamma: 1.0 }
    }

    pub fn in_horizontal(&self, v: Point2) -> bool {
        self.gamma * v.y.norm() < v.x.norm()
    }

    pub fn in_vertical(&self, v: Point2) -> bool {
        v.x.norm() < self.gamma * v.y.norm()
    }

    /// Lower bound on `|p'(x)|` that makes the Henon derivative
    /// `[[p'(x), -a], [1, 0]]` map the closed cone strictly into itself.
    ///
    /// Writing `xi = (1, s)` with `|s| <= 1/gamma`, the image slope is
    /// `1 / (p' - a s)`, so the test is `|p'| - |a|/gamma > gamma`. The bound
    /// is sharp: below it some boundary direction fails.
    pub fn henon_threshold(&self, a_abs: f64) -> f64 {
        self.gamma + a_abs / self.gamma
    }

    /// Margin by which `m` maps the closed horizontal cone into its interior.
    ///
    /// Positive iff trapped. In slope coordinates `s = xi2/xi1` the cone is
    /// the disc `|s| <= 1/gamma` and `m` acts by a Moebius map; the image of a
    /// disc avoiding the pole is a disc with explicit center and radius.
    pub fn horizontal_margin(&self, m: &Mat2) -> f64 {
        // Conjugate by diag(1, gamma) so the cone becomes the unit cone.
        let g = Complex64::new(self.gamma, 0.0);
        let [[m11, m12], [m21, m22]] = m.m;
        let (alpha, beta, c, d) = (m22, m21 * g, m12 / g, m11);
        // s -> (alpha s + beta) / (c s + d) on the closed unit disc.
        let den = d.norm_sqr() - c.norm_sqr();
        if den <= 0.0 {
            return -1.0;
        }
        let center = (beta * d.conj() - alpha * c.conj()) / den;
        let radius = (alpha * d - beta * c).norm() / den;
        1.0 - (center.norm() + radius)
    }

    /// Same for the complementary vertical cone under `m` (typically the
    /// derivative of the inverse map).
    pub fn vertical_margin(&self, m: &Mat2) -> f64 {
        // Swap coordinates: the complement becomes a horizontal cone.
        let [[m11, m12], [m21, m22]] = m.m;
        let swapped = Mat2::new(m22, m21, m12, m11);
        self.horizontal_margin(&swapped)
    }
}
