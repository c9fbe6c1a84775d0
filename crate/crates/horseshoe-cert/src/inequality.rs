//! Closed-form certificate for the quadratic normal form `x^2 + c - a y`.
//!
//! On `D_R x D_R` with `R = alpha (1 + |a| + sqrt((1 + |a|)^2 + 4|c|))` any `z`
//! with `F(z)` in the bidisc has `|x^2 + c| <= R (1 + |a|)`, hence
//! `|p'(x)| = 2|x| >= 2 sqrt(|c| - R (1 + |a|))`. Combined with the cone test
//! `|p'| > gamma + |a|/gamma` this gives the margin
//! `2 sqrt(|c| - R(1 + |a|)) - (gamma + |a|/gamma)`.

use crate::certificate::{Certificate, Method};
use crate::cone::ConeField;
use henon_core::{HenonMap, Interval, Verdict};
use std::time::Instant;

/// Smallest alpha accepted: `R` must be strictly above the escape radius.
pub const MIN_ALPHA: f64 = 0.5;
/// `0.5 (1 + 1e-9)`: keeps fixed points on `|x| = R0` strictly inside.
pub const DEFAULT_ALPHA: f64 = 0.5 * (1.0 + 1e-9);

#[derive(Debug, Clone, PartialEq)]
pub enum InequalityError {
    /// Not of the form `x^2 + c - a y`.
    NotNormalForm,
    Alpha(f64),
    Gamma(f64),
}

impl std::fmt::Display for InequalityError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            InequalityError::NotNormalForm => {
                f.write_str("inequality certificate needs the quadratic normal form x^2 + c; use the cone sweep")
            }
            InequalityError::Alpha(a) => write!(f, "alpha must exceed 1/2, got {a}"),
            InequalityError::Gamma(g) => write!(f, "gamma must lie in (0, 1], got {g}"),
        }
    }
}

impl std::error::Error for InequalityError {}

fn iv(x: f64) -> Interval {
    Interval::point(x)
}

/// Enclosure of `R = alpha (s + sqrt(s^2 + 4|c|))`, `s = 1 + |a|`.
pub fn radius_interval(a_abs: f64, c_abs: f64, alpha: f64) -> Interval {
    let s = iv(1.0) + iv(a_abs);
    let disc = s.sqr() + iv(c_abs).scale(4.0);
    iv(alpha) * (s + disc.sqrt())
}

/// Enclosure of the inequality margin.
pub fn margin_interval(a_abs: f64, c_abs: f64, gamma: f64, alpha: f64) -> Interval {
    let s = iv(1.0) + iv(a_abs);
    let r = radius_interval(a_abs, c_abs, alpha);
    let inner = iv(c_abs) - r * s;
    let inner = Interval { lo: inner.lo.max(0.0), hi: inner.hi.max(0.0) };
    let lhs = inner.sqrt().scale(2.0);
    let k = iv(gamma) + iv(a_abs) * iv(gamma).recip();
    lhs - k
}

/// Point value of the margin (used by searches).
pub fn margin_value(a_abs: f64, c_abs: f64, gamma: f64, alpha: f64) -> f64 {
    let s = 1.0 + a_abs;
    let r = alpha * (s + (s * s + 4.0 * c_abs).sqrt());
    2.0 * (c_abs - r * s).max(0.0).sqrt() - (gamma + a_abs / gamma)
}

fn check_params(gamma: f64, alpha: f64) -> Result<(), InequalityError> {
    if !(alpha > MIN_ALPHA && alpha.is_finite()) {
        return Err(InequalityError::Alpha(alpha));
    }
    if ConeField::new(gamma).is_none() {
        return Err(InequalityError::Gamma(gamma));
    }
    Ok(())
}

pub fn certify_inequality(map: &HenonMap, gamma: f64, alpha: f64) -> Result<Certificate, InequalityError> {
    let start = Instant::now();
    check_params(gamma, alpha)?;
    let c = match map.normal_form_c() {
        Some(c) if map.degree() == 2 => c,
        _ => return Err(InequalityError::NotNormalForm),
    };
    let (a_abs, c_abs) = (map.a().norm(), c.norm());
    let m = margin_interval(a_abs, c_abs, gamma, alpha);
    let verdict = if m.lo > 0.0 {
        Verdict::Yes
    } else if m.hi <= 0.0 {
        Verdict::No
    } else {
        Verdict::Unknown
    };
    Ok(Certificate {
        method: Method::Inequality,
        map: map.to_string(),
        r: radius_interval(a_abs, c_abs, alpha).mid(),
        alpha,
        gamma,
        margin: if verdict.is_yes() { m.lo } else { m.mid() },
        verdict,
        boxes: 0,
        depth: 0,
        wall_ms: start.elapsed().as_millis() as u64,
        undecided: Vec::new(),
    })
}

/// Smallest `|c|` certified by the inequality at fixed `(|a|, gamma, alpha)`.
///
/// The margin is increasing in `|c|` once positive, so bisection on the sign
/// is exact up to roundoff.
pub fn threshold(a_abs: f64, gamma: f64, alpha: f64) -> f64 {
    let f = |c: f64| margin_value(a_abs, c, gamma, alpha);
    let mut lo = 0.0;
    let mut hi = 1.0;
    while f(hi) <= 0.0 {
        lo = hi;
        hi *= 2.0;
        if hi > 1e12 {
            return f64::INFINITY;
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// Closed form at `gamma = 1`, `alpha = 1/2`: `(5/4 + sqrt(5)/2)(1 + |a|)^2`.
pub fn unit_cone_threshold(a_abs: f64) -> f64 {
    (1.25 + 5f64.sqrt() / 2.0) * (1.0 + a_abs).powi(2)
}

/// `(gamma, threshold)` samples over `gamma` in `(0, 1]`.
pub fn threshold_curve(a_abs: f64, alpha: f64, samples: usize) -> Vec<(f64, f64)> {
    (1..=samples.max(1))
        .map(|k| {
            let g = k as f64 / samples.max(1) as f64;
            (g, threshold(a_abs, g, alpha))
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ApertureSearch {
    /// Smallest gamma considered; the search space is `[gamma_min, 1]`.
    pub gamma_min: f64,
    /// Largest alpha considered; the search space is `(1/2, alpha_max]`.
    pub alpha_max: f64,
    pub grid: usize,
    pub golden_steps: usize,
}

impl Default for ApertureSearch {
    fn default() -> Self {
        ApertureSearch { gamma_min: 1e-3, alpha_max: 1.0, grid: 64, golden_steps: 80 }
    }
}

fn golden_max(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, steps: usize) -> f64 {
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - phi * (hi - lo);
    let mut x2 = lo + phi * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..steps {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + phi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - phi * (hi - lo);
            f1 = f(x1);
        }
    }
    if f1 >= f2 {
        x1
    } else {
        x2
    }
}

/// Maximizes the inequality margin over `(gamma, alpha)`.
///
/// A grid pass locates the best cell; alternating golden-section searches
/// then polish each coordinate. Returns `(gamma*, alpha*, certificate)`.
pub fn optimize_aperture(map: &HenonMap, search: &ApertureSearch) -> Result<(f64, f64, Certificate), InequalityError> {
    let c = match map.normal_form_c() {
        Some(c) if map.degree() == 2 => c,
        _ => return Err(InequalityError::NotNormalForm),
    };
    let (a_abs, c_abs) = (map.a().norm(), c.norm());
    let g_lo = search.gamma_min.clamp(f64::MIN_POSITIVE, 1.0);
    let a_lo = DEFAULT_ALPHA;
    let a_hi = search.alpha_max.max(a_lo);
    let f = |g: f64, al: f64| margin_value(a_abs, c_abs, g, al);
    let n = search.grid.max(2);
    let mut best = (1.0, a_lo, f(1.0, a_lo));
    for i in 0..n {
        let g = g_lo + (1.0 - g_lo) * i as f64 / (n - 1) as f64;
        for j in 0..n {
            let al = a_lo + (a_hi - a_lo) * j as f64 / (n - 1) as f64;
            let v = f(g, al);
            if v > best.2 {
                best = (g, al, v);
            }
        }
    }
    let (mut g, mut al) = (best.0, best.1);
    let dg = (1.0 - g_lo) / (n - 1) as f64;
    let da = (a_hi - a_lo) / (n - 1) as f64;
    for _ in 0..3 {
        g = golden_max(|x| f(x, al), (g - dg).max(g_lo), (g + dg).min(1.0), search.golden_steps);
        al = golden_max(|x| f(g, x), (al - da).max(a_lo), (al + da).min(a_hi), search.golden_steps);
    }
    if f(g, al) < best.2 {
        (g, al) = (best.0, best.1);
    }
    let cert = certify_inequality(map, g, al)?;
    Ok((g, al, cert))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_agrees_with_bisection() {
        for a in [0.0, 0.3, 1.0, 2.5] {
            let t = threshold(a, 1.0, 0.5);
            assert!((t - unit_cone_threshold(a)).abs() < 1e-9 * t, "a={a}");
        }
    }

    #[test]
    fn non_normal_form_is_refused() {
        let f = HenonMap::normal(3, henon_core::re(1.0), henon_core::re(-30.0)).unwrap();
        assert_eq!(certify_inequality(&f, 1.0, DEFAULT_ALPHA), Err(InequalityError::NotNormalForm));
    }
}
