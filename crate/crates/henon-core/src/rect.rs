//! Rectangles in C and their products in C^2.

use crate::interval::Interval;
use crate::point::Point2;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::ops::{Add, Mul, Neg, Sub};

/// `[re_lo, re_hi] + i[im_lo, im_hi]`; arithmetic encloses every pointwise result.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct ComplexRect {
    pub re: Interval,
    pub im: Interval,
}

impl ComplexRect {
    pub fn new(re_lo: f64, re_hi: f64, im_lo: f64, im_hi: f64) -> Self {
        Self { re: Interval::new(re_lo, re_hi), im: Interval::new(im_lo, im_hi) }
    }

    pub fn point(z: Complex64) -> Self {
        Self { re: Interval::point(z.re), im: Interval::point(z.im) }
    }

    /// Axis-aligned square circumscribing the closed disc `|z - c| <= r`.
    pub fn around_disc(c: Complex64, r: f64) -> Self {
        Self { re: Interval::centered(c.re, r), im: Interval::centered(c.im, r) }
    }

    pub fn re_lo(&self) -> f64 {
        self.re.lo
    }
    pub fn re_hi(&self) -> f64 {
        self.re.hi
    }
    pub fn im_lo(&self) -> f64 {
        self.im.lo
    }
    pub fn im_hi(&self) -> f64 {
        self.im.hi
    }

    pub fn mid(&self) -> Complex64 {
        Complex64::new(self.re.mid(), self.im.mid())
    }

    pub fn contains(&self, z: Complex64) -> bool {
        self.re.contains(z.re) && self.im.contains(z.im)
    }

    pub fn contains_rect(&self, o: &ComplexRect) -> bool {
        self.re.contains_interval(&o.re) && self.im.contains_interval(&o.im)
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    /// Half the diagonal, an upper bound on the distance from `mid` to any point.
    pub fn radius(&self) -> f64 {
        let (a, b) = (self.re.rad(), self.im.rad());
        (a * a + b * b).sqrt().next_up()
    }

    pub fn max_width(&self) -> f64 {
        self.re.width().max(self.im.width())
    }

    /// Enclosure of `|z|` over the rectangle.
    pub fn abs(&self) -> Interval {
        let lo2 = self.re.mig().powi(2) + self.im.mig().powi(2);
        let hi2 = self.re.mag().powi(2) + self.im.mag().powi(2);
        Interval { lo: lo2.sqrt().next_down().max(0.0), hi: hi2.sqrt().next_up().next_up() }
    }

    /// Lower bound of `|z - w|` over the rectangle.
    pub fn dist_lower(&self, w: Complex64) -> f64 {
        (*self - ComplexRect::point(w)).abs().lo
    }

    /// Upper bound of `|z - w|` over the rectangle.
    pub fn dist_upper(&self, w: Complex64) -> f64 {
        (*self - ComplexRect::point(w)).abs().hi
    }

    pub fn sqr(&self) -> ComplexRect {
        let re = self.re.sqr() - self.im.sqr();
        let im = (self.re * self.im).scale(2.0);
        ComplexRect { re, im }
    }

    pub fn scale(&self, k: Complex64) -> ComplexRect {
        *self * ComplexRect::point(k)
    }

    pub fn hull(&self, o: &ComplexRect) -> ComplexRect {
        ComplexRect { re: self.re.hull(&o.re), im: self.im.hull(&o.im) }
    }

    /// Split across the wider side; real side wins ties.
    pub fn bisect(&self) -> (ComplexRect, ComplexRect) {
        if self.re.width() >= self.im.width() {
            let (a, b) = self.re.bisect();
            (ComplexRect { re: a, im: self.im }, ComplexRect { re: b, im: self.im })
        } else {
            let (a, b) = self.im.bisect();
            (ComplexRect { re: self.re, im: a }, ComplexRect { re: self.re, im: b })
        }
    }

    pub fn corners(&self) -> [Complex64; 4] {
        [
            Complex64::new(self.re.lo, self.im.lo),
            Complex64::new(self.re.hi, self.im.lo),
            Complex64::new(self.re.lo, self.im.hi),
            Complex64::new(self.re.hi, self.im.hi),
        ]
    }
}

impl Add for ComplexRect {
    type Output = ComplexRect;
    fn add(self, o: ComplexRect) -> ComplexRect {
        ComplexRect { re: self.re + o.re, im: self.im + o.im }
    }
}

impl Sub for ComplexRect {
    type Output = ComplexRect;
    fn sub(self, o: ComplexRect) -> ComplexRect {
        ComplexRect { re: self.re - o.re, im: self.im - o.im }
    }
}

impl Neg for ComplexRect {
    type Output = ComplexRect;
    fn neg(self) -> ComplexRect {
        ComplexRect { re: -self.re, im: -self.im }
    }
}

impl Mul for ComplexRect {
    type Output = ComplexRect;
    fn mul(self, o: ComplexRect) -> ComplexRect {
        ComplexRect {
            re: self.re * o.re - self.im * o.im,
            im: self.re * o.im + self.im * o.re,
        }
    }
}

/// Product of two rectangles, a box in C^2.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct Box2 {
    pub x: ComplexRect,
    pub y: ComplexRect,
}

impl Box2 {
    pub fn new(x: ComplexRect, y: ComplexRect) -> Self {
        Self { x, y }
    }

    pub fn point(z: Point2) -> Self {
        Self { x: ComplexRect::point(z.x), y: ComplexRect::point(z.y) }
    }

    pub fn mid(&self) -> Point2 {
        Point2::new(self.x.mid(), self.y.mid())
    }

    pub fn contains(&self, z: Point2) -> bool {
        self.x.contains(z.x) && self.y.contains(z.y)
    }

    pub fn contains_box(&self, o: &Box2) -> bool {
        self.x.contains_rect(&o.x) && self.y.contains_rect(&o.y)
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn max_width(&self) -> f64 {
        self.x.max_width().max(self.y.max_width())
    }

    /// Split along the widest of the four real axes, ties resolved in the
    /// order x.re, x.im, y.re, y.im.
    pub fn bisect(&self) -> (Box2, Box2) {
        let w = [self.x.re.width(), self.x.im.width(), self.y.re.width(), self.y.im.width()];
        let mut k = 0;
        for i in 1..4 {
            if w[i] > w[k] {
                k = i;
            }
        }
        let mut a = *self;
        let mut b = *self;
        match k {
            0 => {
                let (l, r) = self.x.re.bisect();
                a.x.re = l;
                b.x.re = r;
            }
            1 => {
                let (l, r) = self.x.im.bisect();
                a.x.im = l;
                b.x.im = r;
            }
            2 => {
                let (l, r) = self.y.re.bisect();
                a.y.re = l;
                b.y.re = r;
            }
            _ => {
                let (l, r) = self.y.im.bisect();
                a.y.im = l;
                b.y.im = r;
            }
        }
        (a, b)
    }
}

/// Serializable snapshot of a box, used when reporting undecided cells.
#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq)]
pub struct BoxBounds {
    pub x: [f64; 4],
    pub y: [f64; 4],
}

impl From<&Box2> for BoxBounds {
    fn from(b: &Box2) -> Self {
        BoxBounds {
            x: [b.x.re.lo, b.x.re.hi, b.x.im.lo, b.x.im.hi],
            y: [b.y.re.lo, b.y.re.hi, b.y.im.lo, b.y.im.hi],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_encloses_corner_products() {
        let a = ComplexRect::new(1.0, 2.0, -1.0, 0.5);
        let b = ComplexRect::new(-0.3, 0.1, 2.0, 2.5);
        let p = a * b;
        for u in a.corners() {
            for v in b.corners() {
                assert!(p.contains(u * v));
            }
        }
    }

    #[test]
    fn abs_of_rect_around_origin() {
        let r = ComplexRect::new(-1.0, 1.0, -1.0, 1.0);
        let a = r.abs();
        assert_eq!(a.lo, 0.0);
        assert!(a.hi >= 2f64.sqrt());
    }

    #[test]
    fn box_bisect_prefers_x_re_on_tie() {
        let r = ComplexRect::new(0.0, 1.0, 0.0, 1.0);
        let b = Box2::new(r, r);
        let (l, _) = b.bisect();
        assert_eq!(l.x.re.hi, 0.5);
        assert_eq!(l.x.im.hi, 1.0);
    }
}
