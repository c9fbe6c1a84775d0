//! Critical values of the slice maps must leave the bidisc.

use henon_core::{Bidisc, ComplexRect, HenonMap, Interval};

/// Lower bound of `|p(xi) - c1 - a c2| - (r1 + |a| r2)` over the critical
/// points `xi` of `p`.
///
/// For every `y` in `D2` the critical values of `x -> p(x) - a y` are
/// `p(xi) - a y`, a disc of radius `|a| r2` about `p(xi) - a c2`; they miss
/// `D1` exactly when this quantity is positive. The inverse slice maps
/// `y -> (p(y) - x)/a` give the same condition after scaling by `|a|`.
pub fn critical_value_clearance(map: &HenonMap, b: &Bidisc) -> f64 {
    let dp = map.poly().derivative();
    let a = map.a();
    let need = Interval::point(b.r1) + Interval::point(a.norm()) * Interval::point(b.r2);
    let mut worst = f64::INFINITY;
    for xi in dp.roots() {
        // Root error of the polished roots is far below this pad.
        let pad = 1e-12 * (1.0 + xi.norm());
        let cell = ComplexRect::new(xi.re - pad, xi.re + pad, xi.im - pad, xi.im + pad);
        let v = map.poly().eval_rect(&cell) - ComplexRect::point(b.c1) - ComplexRect::point(a * b.c2);
        worst = worst.min((v.abs() - need).lo);
    }
    worst
}

pub fn critical_values_escape(map: &HenonMap, b: &Bidisc) -> bool {
    critical_value_clearance(map, b) > 0.0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normal_form_reduces_to_c_versus_r() {
        let f = HenonMap::quadratic(1.0, -10.0);
        let v = critical_value_clearance(&f, &Bidisc::centered(4.4));
        assert!((v - 1.2).abs() < 1e-9);
    }
}
