//! Local stable and unstable manifolds as Taylor polynomials.
//!
//! `σ(t) = p + Σ a_n t^n` solves `F^k(σ(t)) = σ(ev·t)` order by order, with
//! `ev = λ` for the unstable and `ev = μ` for the stable manifold. Matching
//! the `t^n` coefficients gives `(d(F^k)(p) - ev^n I) a_n = -N_n`, where `N_n`
//! depends only on `a_1, ..., a_{n-1}`.

use crate::error::HomoclinicError;
use crate::saddle::SaddleData;
use henon_core::{Complex64, HenonMap, Mat2, Point2};
use serde::Serialize;

pub const RESIDUAL_TOL: f64 = 1e-9;
/// At least 64 samples, and four per degree of the composed polynomial.
const MIN_CIRCLE_SAMPLES: usize = 64;
const MAX_CIRCLE_SAMPLES: usize = 4096;
const START_RADIUS: f64 = 4.0;
const RESONANCE_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Which {
    Stable,
    Unstable,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ManifoldParam {
    pub which: Which,
    /// `a_0 = p, a_1 = eigenvector, a_2, ...`
    pub taylor_coeffs: Vec<Point2>,
    pub valid_radius: f64,
    /// The multiplier in the functional equation.
    pub eigenvalue: Complex64,
    pub period: u32,
}

type Series = Vec<Complex64>;

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

fn mul(a: &[Complex64], b: &[Complex64], n: usize) -> Series {
    let mut out = vec![zero(); n + 1];
    for (i, &x) in a.iter().enumerate().take(n + 1) {
        if x == zero() {
            continue;
        }
        for (j, &y) in b.iter().enumerate().take(n + 1 - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// One Henon step applied to a pair of series truncated at degree `n`.
fn henon_series(map: &HenonMap, x: &[Complex64], y: &[Complex64], n: usize) -> (Series, Series) {
    let mut px = vec![zero(); n + 1];
    for &c in map.poly().coeffs.iter().rev() {
        px = mul(&px, x, n);
        px[0] += c;
    }
    let a = map.a();
    let nx = px.iter().zip(y).map(|(&u, &v)| u - a * v).collect();
    (nx, x[..=n].to_vec())
}

/// Solves for `a_2, ..., a_order` given `a_0 = p`, `a_1 = e1`.
///
/// `step` applies the map once to a series pair truncated at the given degree.
pub(crate) fn taylor_coefficients<S>(
    step: S,
    k: u32,
    p: Point2,
    dfk: Mat2,
    ev: Complex64,
    e1: Point2,
    order: usize,
) -> Result<Vec<Point2>, HomoclinicError>
where
    S: Fn(&[Complex64], &[Complex64], usize) -> (Series, Series),
{
    let mut xs = vec![zero(); order + 1];
    let mut ys = vec![zero(); order + 1];
    xs[0] = p.x;
    ys[0] = p.y;
    if order >= 1 {
        xs[1] = e1.x;
        ys[1] = e1.y;
    }
    for n in 2..=order {
        let (mut fx, mut fy) = (xs[..=n].to_vec(), ys[..=n].to_vec());
        for _ in 0..k {
            (fx, fy) = step(&fx, &fy, n);
        }
        let evn = ev.powu(n as u32);
        let m = Mat2::new(dfk.m[0][0] - evn, dfk.m[0][1], dfk.m[1][0], dfk.m[1][1] - evn);
        let scale = m.norm() * m.norm();
        if m.det().norm() <= RESONANCE_TOL * scale {
            return Err(HomoclinicError::Resonance { n });
        }
        let a = m.inverse().ok_or(HomoclinicError::Resonance { n })?.apply(Point2::new(-fx[n], -fy[n]));
        xs[n] = a.x;
        ys[n] = a.y;
    }
    Ok(xs.into_iter().zip(ys).map(|(x, y)| Point2::new(x, y)).collect())
}

impl ManifoldParam {
    pub fn p(&self) -> Point2 {
        self.taylor_coeffs[0]
    }

    pub fn order(&self) -> usize {
        self.taylor_coeffs.len() - 1
    }

    pub fn eval(&self, t: Complex64) -> Point2 {
        let mut acc = Point2::new(zero(), zero());
        for c in self.taylor_coeffs.iter().rev() {
            acc = acc.scale(t) + *c;
        }
        acc
    }

    /// `σ'(t)`.
    pub fn derivative(&self, t: Complex64) -> Point2 {
        let mut acc = Point2::new(zero(), zero());
        for (n, c) in self.taylor_coeffs.iter().enumerate().skip(1).rev() {
            acc = acc.scale(t) + c.scale(Complex64::new(n as f64, 0.0));
        }
        acc
    }

    /// Largest `‖F^k(σ(t)) - σ(ev·t)‖` on the circle `|t| = r`; by the
    /// maximum principle this bounds the residual on the disc.
    pub fn residual(&self, map: &HenonMap, r: f64) -> f64 {
        let degree = (self.order() as f64) * (map.degree() as f64).powi(self.period as i32);
        let n = ((4.0 * degree) as usize).clamp(MIN_CIRCLE_SAMPLES, MAX_CIRCLE_SAMPLES);
        (0..n)
            .map(|j| {
                let t = Complex64::from_polar(r, std::f64::consts::TAU * j as f64 / n as f64);
                match map.iterate(self.eval(t), self.period as i64) {
                    Ok(w) => w.dist(&self.eval(self.eigenvalue * t)),
                    Err(_) => f64::INFINITY,
                }
            })
            .fold(0.0, f64::max)
    }
}

/// Taylor parametrization of `W^s` or `W^u` at the saddle, of the given order.
pub fn parametrize_manifold(
    map: &HenonMap,
    saddle: &SaddleData,
    which: Which,
    order: usize,
) -> Result<ManifoldParam, HomoclinicError> {
    let (ev, e1) = match which {
        Which::Stable => (saddle.mu, saddle.eigvec_s),
        Which::Unstable => (saddle.lambda, saddle.eigvec_u),
    };
    let (_, dfk) = map
        .iterate_with_jacobian(saddle.p, saddle.period as usize)
        .map_err(|_| HomoclinicError::NoSaddle { k: saddle.period })?;
    let step = |x: &[Complex64], y: &[Complex64], n: usize| henon_series(map, x, y, n);
    let taylor_coeffs = taylor_coefficients(step, saddle.period, saddle.p, dfk, ev, e1, order.max(1))?;
    let mut m = ManifoldParam { which, taylor_coeffs, valid_radius: 0.0, eigenvalue: ev, period: saddle.period };
    m.valid_radius = valid_radius(&m, map)?;
    Ok(m)
}

/// Largest radius (to bisection accuracy, capped at 4) with residual at
/// most [`RESIDUAL_TOL`].
fn valid_radius(m: &ManifoldParam, map: &HenonMap) -> Result<f64, HomoclinicError> {
    let ok = |r: f64| m.residual(map, r) <= RESIDUAL_TOL;
    let mut lo = START_RADIUS;
    let mut halvings = 0;
    while !ok(lo) {
        lo *= 0.5;
        halvings += 1;
        if halvings > 60 {
            return Err(HomoclinicError::NoValidRadius { tol: RESIDUAL_TOL });
        }
    }
    if halvings == 0 {
        return Ok(lo);
    }
    let mut hi = 2.0 * lo;
    for _ in 0..40 {
        let mid = 0.5 * (lo + hi);
        if ok(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

#[cfg(test)]
mod tests {
    use super::*;
    use henon_core::re;

    #[test]
    fn affine_maps_have_flat_manifolds() {
        // (x, y) -> (3x + y + 1, 0.5y - 2): every coefficient past order 1 vanishes.
        let step = |x: &[Complex64], y: &[Complex64], _n: usize| {
            let nx: Series = x.iter().zip(y).enumerate().map(|(i, (&u, &v))| re(3.0) * u + v + re(if i == 0 { 1.0 } else { 0.0 })).collect();
            let ny: Series = y.iter().enumerate().map(|(i, &v)| re(0.5) * v - re(if i == 0 { 2.0 } else { 0.0 })).collect();
            (nx, ny)
        };
        let dfk = Mat2::new(re(3.0), re(1.0), re(0.0), re(0.5));
        let p = Point2::real(1.5, -4.0);
        for (ev, e1) in [(re(3.0), Point2::real(1.0, 0.0)), (re(0.5), Point2::real(-0.4, 1.0))] {
            let c = taylor_coefficients(step, 1, p, dfk, ev, e1, 12).unwrap();
            assert_eq!(c[0], p);
            assert!(c[2..].iter().all(|a| a.norm() < 1e-14), "{c:?}");
        }
    }

    #[test]
    fn resonance_is_reported_with_its_order() {
        // ev^2 equal to the other multiplier.
        let dfk = Mat2::new(re(2.0), re(0.0), re(0.0), re(4.0));
        let step = |x: &[Complex64], y: &[Complex64], n: usize| {
            let xx = mul(x, x, n);
            (x.iter().map(|&u| re(2.0) * u).collect(), y.iter().zip(&xx).map(|(&v, &w)| re(4.0) * v + w).collect())
        };
        let e = taylor_coefficients(step, 1, Point2::real(0.0, 0.0), dfk, re(2.0), Point2::real(1.0, 0.0), 5);
        assert_eq!(e, Err(HomoclinicError::Resonance { n: 2 }));
    }
}
