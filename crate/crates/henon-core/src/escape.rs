//! Escape radius and the escape regions outside the bidisc `D_R x D_R`.
//!
//! For `R > R0` the complement of the closed bidisc splits into
//! `V+ = {|x| > R, |y| <= |x|}`, which `F` maps into itself while increasing
//! `|x|`, and `V- = {|y| > R, |x| <= |y|}`, the same for `F^{-1}` and `|y|`.

use crate::map::HenonMap;
use crate::point::Point2;

/// Infimum `R0` of the radii for which `D_R x D_R` is Henon-like.
///
/// Normal form `x^d + c`: `(1 + |a| + sqrt((1 + |a|)^2 + 4|c|)) / 2`.
/// Otherwise the unique positive root of
/// `|l| R^d - sum_{1<=k<d} |c_k| R^k - (1 + |a|) R - |c_0|`, which is what the
/// triangle inequality needs once intermediate coefficients are present.
pub fn escape_radius(map: &HenonMap) -> f64 {
    let a = map.a().norm();
    if let Some(c) = map.normal_form_c() {
        return escape_radius_normal(a, c.norm());
    }
    let coeffs = &map.poly().coeffs;
    let d = map.degree();
    let lead = coeffs[d].norm();
    let g = |r: f64| {
        let mut v = lead * r.powi(d as i32) - (1.0 + a) * r - coeffs[0].norm();
        for (k, c) in coeffs.iter().enumerate().take(d).skip(1) {
            v -= c.norm() * r.powi(k as i32);
        }
        v
    };
    // Exactly one sign change in the coefficient sequence: a single positive root.
    let mut lo = 0.0;
    let mut hi = 1.0;
    while g(hi) < 0.0 {
        lo = hi;
        hi *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if g(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    hi
}

/// `(1 + |a| + sqrt((1 + |a|)^2 + 4|c|)) / 2`.
pub fn escape_radius_normal(a_abs: f64, c_abs: f64) -> f64 {
    let s = 1.0 + a_abs;
    0.5 * (s + (s * s + 4.0 * c_abs).sqrt())
}

/// `|x| > R` and `|y| <= |x|`: the forward orbit is certified to escape.
pub fn in_forward_escape_region(z: Point2, r: f64) -> bool {
    let ax = z.x.norm();
    ax > r && z.y.norm() <= ax
}

/// `|y| > R` and `|x| <= |y|`: the backward orbit is certified to escape.
pub fn in_backward_escape_region(z: Point2, r: f64) -> bool {
    let ay = z.y.norm();
    ay > r && z.x.norm() <= ay
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn closed_form_values() {
        assert!((escape_radius(&HenonMap::quadratic(1.0, -10.0)) - (1.0 + 11f64.sqrt())).abs() < 1e-14);
        assert!((escape_radius(&HenonMap::quadratic(1.0, -6.0)) - (1.0 + 7f64.sqrt())).abs() < 1e-14);
        assert!((escape_radius_normal(0.37, 0.0) - 1.37).abs() < 1e-15);
    }

    #[test]
    fn general_root_is_a_root() {
        let one = Complex64::new(1.0, 0.0);
        let f = HenonMap::new(vec![Complex64::new(-3.0, 0.0), Complex64::new(5.0, 0.0), one], one).unwrap();
        let r = escape_radius(&f);
        // r^2 - 5 r - 2 r - 3 = 0
        assert!((r * r - 7.0 * r - 3.0).abs() < 1e-9);
    }
}
