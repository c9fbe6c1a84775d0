//! Periodic points by damped Newton on `F^n(z) - z`.

use crate::count::divisors;
use henon_core::{Bidisc, Complex64, HenonMap, Mat2, Point2};
use rayon::prelude::*;
use serde::Serialize;

/// Distinct roots closer than this are merged.
pub const DEDUP_RADIUS: f64 = 1e-8;
/// A root is assigned the smallest period whose return distance is below this.
const PERIOD_MATCH: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PeriodicPoint {
    pub z: Point2,
    /// Minimal period.
    pub period: u32,
    /// `|F^period(z) - z|`.
    pub residual: f64,
    /// Eigenvalues of `d(F^period)` at `z`, by increasing modulus.
    pub multipliers: [Complex64; 2],
    /// `d(F^n) - I` nearly singular: possibly a multiple root.
    pub near_singular: bool,
}

impl PeriodicPoint {
    pub fn is_saddle(&self) -> bool {
        self.multipliers[0].norm() < 1.0 && self.multipliers[1].norm() > 1.0
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Enumeration {
    /// Period searched for: every point has period dividing it.
    pub n: u32,
    /// Sorted by (re x, im x, re y, im y).
    pub points: Vec<PeriodicPoint>,
    pub seeds: usize,
    pub converged: usize,
    /// Points whose multiplicity could not be resolved.
    pub flagged: usize,
}

impl Enumeration {
    pub fn with_period(&self, p: u32) -> impl Iterator<Item = &PeriodicPoint> {
        self.points.iter().filter(move |q| q.period == p)
    }
}

fn newton(map: &HenonMap, mut z: Point2, n: u32, tol: f64) -> Option<Point2> {
    let residual = |z: Point2| map.iterate(z, n as i64).ok().map(|w| (w - z).norm());
    let mut r = residual(z)?;
    for _ in 0..80 {
        if r == 0.0 {
            break;
        }
        // Iterate until the residual stops decreasing, which polishes past `tol`.
        let (w, j) = map.iterate_with_jacobian(z, n as usize).ok()?;
        let g = w - z;
        let dg = Mat2::new(j.m[0][0] - 1.0, j.m[0][1], j.m[1][0], j.m[1][1] - 1.0);
        let step = dg.inverse()?.apply(g);
        let mut lambda = 1.0;
        let mut accepted = false;
        while lambda > 1.0 / 1024.0 {
            let cand = z - step.scale(Complex64::new(lambda, 0.0));
            if let Some(rc) = residual(cand) {
                if rc < r {
                    z = cand;
                    r = rc;
                    accepted = true;
                    break;
                }
            }
            lambda *= 0.5;
        }
        if !accepted {
            break;
        }
    }
    (r <= tol).then_some(z)
}

fn seeds(b: &Bidisc, grid: usize) -> Vec<Point2> {
    let g = grid.max(2);
    let mut v = Vec::with_capacity(g * g);
    // Deterministic small imaginary parts keep seeds off the real subspace
    // without biasing towards either half plane.
    let frac = |k: usize| ((k as f64 * 0.618_033_988_749_894_9) % 1.0) - 0.5;
    for i in 0..g {
        for j in 0..g {
            let sx = -1.0 + 2.0 * (i as f64 + 0.5) / g as f64;
            let sy = -1.0 + 2.0 * (j as f64 + 0.5) / g as f64;
            let k = i * g + j;
            let x = b.c1 + Complex64::new(sx * b.r1, 0.02 * b.r1 * frac(2 * k));
            let y = b.c2 + Complex64::new(sy * b.r2, 0.02 * b.r2 * frac(2 * k + 1));
            v.push(Point2::new(x, y));
        }
    }
    v
}

fn lex_cmp(a: &Point2, b: &Point2) -> std::cmp::Ordering {
    a.lex_key().partial_cmp(&b.lex_key()).unwrap_or(std::cmp::Ordering::Equal)
}

/// Roots of `F^n(z) = z` inside the closed bidisc `b`, from `grid^2` seeds.
pub fn enumerate_periodic(map: &HenonMap, n: u32, b: &Bidisc, grid: usize, tol: f64) -> Enumeration {
    assert!(n >= 1);
    let seeds = seeds(b, grid);
    let mut roots: Vec<Point2> = seeds
        .par_iter()
        .filter_map(|&s| newton(map, s, n, tol))
        .filter(|z| b.gauge(*z) <= 1.0 + 1e-9)
        .collect();
    let converged = roots.len();
    roots.sort_by(lex_cmp);
    let mut distinct: Vec<Point2> = Vec::new();
    for z in roots {
        if !distinct.iter().any(|d| d.dist(&z) <= DEDUP_RADIUS) {
            distinct.push(z);
        }
    }
    let mut points: Vec<PeriodicPoint> = distinct
        .into_iter()
        .filter_map(|z| {
            let period = divisors(n)
                .into_iter()
                .find(|&m| map.iterate(z, m as i64).map(|w| w.dist(&z) <= PERIOD_MATCH).unwrap_or(false))?;
            let (w, j) = map.iterate_with_jacobian(z, period as usize).ok()?;
            let (_, jn) = map.iterate_with_jacobian(z, n as usize).ok()?;
            let det = Mat2::new(jn.m[0][0] - 1.0, jn.m[0][1], jn.m[1][0], jn.m[1][1] - 1.0).det();
            let near_singular = det.norm() < 1e-8 * (1.0 + jn.norm() * jn.norm());
            Some(PeriodicPoint {
                z,
                period,
                residual: (w - z).norm(),
                multipliers: j.eigenvalues(),
                near_singular,
            })
        })
        .collect();
    points.sort_by(|a, b| lex_cmp(&a.z, &b.z));
    let flagged = points.iter().filter(|p| p.near_singular).count();
    Enumeration { n, points, seeds: seeds.len(), converged, flagged }
}

/// Groups points into orbits; each group lists indices in orbit order.
pub fn group_cycles(map: &HenonMap, points: &[PeriodicPoint]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; points.len()];
    let mut out = Vec::new();
    for i in 0..points.len() {
        if seen[i] {
            continue;
        }
        let mut orbit = vec![i];
        seen[i] = true;
        let mut z = points[i].z;
        for _ in 1..points[i].period {
            z = match map.apply(z) {
                Ok(w) => w,
                Err(_) => break,
            };
            let j = (0..points.len())
                .filter(|&j| !seen[j])
                .min_by(|&a, &b| points[a].z.dist(&z).total_cmp(&points[b].z.dist(&z)));
            match j {
                Some(j) if points[j].z.dist(&z) <= PERIOD_MATCH => {
                    seen[j] = true;
                    orbit.push(j);
                }
                _ => break,
            }
        }
        out.push(orbit);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_points_of_the_horseshoe_map() {
        let f = HenonMap::quadratic(1.0, -10.0);
        let e = enumerate_periodic(&f, 1, &Bidisc::centered(4.4), 16, 1e-10);
        assert_eq!(e.points.len(), 2);
        let s = 11f64.sqrt();
        assert!((e.points[0].z.x.re - (1.0 - s)).abs() < 1e-12);
        assert!((e.points[1].z.x.re - (1.0 + s)).abs() < 1e-12);
    }
}
