//! Hyperbolic periodic points.

use crate::error::HomoclinicError;
use henon_core::{escape_radius, Bidisc, Complex64, HenonMap, Mat2, Point2};
use periodic_orbits::enumerate_periodic;
use serde::Serialize;

/// Multipliers this close to the unit circle do not count as hyperbolic.
const HYPERBOLIC_GAP: f64 = 1e-6;
const RESIDUAL_TOL: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SaddleData {
    pub p: Point2,
    /// Period `k`.
    pub period: u32,
    /// Contracting multiplier of `d(F^k)` at `p`.
    pub mu: Complex64,
    /// Expanding multiplier.
    pub lambda: Complex64,
    pub eigvec_s: Point2,
    pub eigvec_u: Point2,
}

impl SaddleData {
    /// Whether `p`, both multipliers and both eigenvectors are real.
    pub fn is_real(&self) -> bool {
        let tiny = |z: Complex64| z.im.abs() <= 1e-12 * (1.0 + z.re.abs());
        [self.p.x, self.p.y, self.mu, self.lambda, self.eigvec_s.x, self.eigvec_s.y, self.eigvec_u.x, self.eigvec_u.y]
            .into_iter()
            .all(tiny)
    }

    /// Basis matrix with columns `eigvec_u`, `eigvec_s`.
    pub fn frame(&self) -> Mat2 {
        Mat2::from_columns(self.eigvec_u, self.eigvec_s)
    }
}

/// Unit vector scaled so that its larger component is real and positive.
pub(crate) fn normalize_phase(v: Point2) -> Point2 {
    let big = if v.x.norm() >= v.y.norm() { v.x } else { v.y };
    let phase = big.conj() / big.norm();
    let w = v.scale(phase);
    w.scale(Complex64::new(1.0 / w.norm(), 0.0))
}

/// Saddle data at a point already known to be `k`-periodic.
pub fn saddle_at(map: &HenonMap, p: Point2, k: u32) -> Result<SaddleData, HomoclinicError> {
    let (w, j) = map.iterate_with_jacobian(p, k as usize).map_err(|_| HomoclinicError::NoSaddle { k })?;
    if w.dist(&p) > RESIDUAL_TOL * (1.0 + p.norm()) {
        return Err(HomoclinicError::NoSaddle { k });
    }
    let [mu, lambda] = j.eigenvalues();
    if mu.norm() >= 1.0 - HYPERBOLIC_GAP || lambda.norm() <= 1.0 + HYPERBOLIC_GAP {
        return Err(HomoclinicError::NoSaddle { k });
    }
    Ok(SaddleData {
        p,
        period: k,
        mu,
        lambda,
        eigvec_s: normalize_phase(j.eigenvector(mu)),
        eigvec_u: normalize_phase(j.eigenvector(lambda)),
    })
}

/// A hyperbolic point of exact period `k`, found by Newton on `F^k - Id`
/// from a seed grid over the escape bidisc.
///
/// Real saddles are preferred (the homoclinic search needs one), then the
/// largest expanding multiplier.
pub fn find_saddle(map: &HenonMap, k: u32) -> Result<SaddleData, HomoclinicError> {
    if k == 0 {
        return Err(HomoclinicError::NoSaddle { k });
    }
    let b = Bidisc::centered(escape_radius(map));
    let grid = (12 * k as usize).min(96);
    let e = enumerate_periodic(map, k, &b, grid, RESIDUAL_TOL);
    let mut found: Vec<SaddleData> =
        e.with_period(k).filter(|q| !q.near_singular).filter_map(|q| saddle_at(map, q.z, k).ok()).collect();
    found.sort_by(|s, t| {
        t.is_real().cmp(&s.is_real()).then(t.lambda.norm().total_cmp(&s.lambda.norm())).then(
            s.p.lex_key().partial_cmp(&t.p.lex_key()).unwrap_or(std::cmp::Ordering::Equal),
        )
    });
    found.into_iter().next().ok_or(HomoclinicError::NoSaddle { k })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phase_normalization_makes_the_big_component_positive() {
        let v = normalize_phase(Point2::new(Complex64::new(0.0, -3.0), Complex64::new(1.0, 1.0)));
        assert!(v.x.im.abs() < 1e-15 && v.x.re > 0.0);
        assert!((v.norm() - 1.0).abs() < 1e-15);
    }
}
