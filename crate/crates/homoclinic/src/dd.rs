//! Double-double arithmetic (about 32 significant digits) for orbits that
//! pass through strongly expanding directions.

use henon_core::{Complex64, HenonMap, Point2};
use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };

    pub fn new(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn is_finite(self) -> bool {
        self.hi.is_finite() && self.lo.is_finite()
    }
}

impl From<f64> for Dd {
    fn from(x: f64) -> Dd {
        Dd::new(x)
    }
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, o: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, o.hi);
        let (t, f) = two_sum(self.lo, o.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Dd { hi, lo }
    }
}

impl Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }
}

impl Sub for Dd {
    type Output = Dd;
    fn sub(self, o: Dd) -> Dd {
        self + (-o)
    }
}

impl Mul for Dd {
    type Output = Dd;
    fn mul(self, o: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, o.hi);
        let e = e + (self.hi * o.lo + self.lo * o.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, o: Dd) -> Dd {
        // Two correction steps of long division.
        let q1 = self.hi / o.hi;
        let r = self - o * Dd::new(q1);
        let q2 = r.hi / o.hi;
        let r = r - o * Dd::new(q2);
        let q3 = r.hi / o.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo } + Dd::new(q3)
    }
}

/// Complex double-double.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Cdd {
    pub re: Dd,
    pub im: Dd,
}

impl Cdd {
    pub fn to_c64(self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    pub fn is_finite(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    fn norm_sqr(self) -> Dd {
        self.re * self.re + self.im * self.im
    }
}

impl From<Complex64> for Cdd {
    fn from(z: Complex64) -> Cdd {
        Cdd { re: Dd::new(z.re), im: Dd::new(z.im) }
    }
}

impl Add for Cdd {
    type Output = Cdd;
    fn add(self, o: Cdd) -> Cdd {
        Cdd { re: self.re + o.re, im: self.im + o.im }
    }
}

impl Sub for Cdd {
    type Output = Cdd;
    fn sub(self, o: Cdd) -> Cdd {
        Cdd { re: self.re - o.re, im: self.im - o.im }
    }
}

impl Mul for Cdd {
    type Output = Cdd;
    fn mul(self, o: Cdd) -> Cdd {
        Cdd { re: self.re * o.re - self.im * o.im, im: self.re * o.im + self.im * o.re }
    }
}

impl Div for Cdd {
    type Output = Cdd;
    fn div(self, o: Cdd) -> Cdd {
        let n = o.norm_sqr();
        let num = self * Cdd { re: o.re, im: -o.im };
        Cdd { re: num.re / n, im: num.im / n }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct PointDd {
    pub x: Cdd,
    pub y: Cdd,
}

impl PointDd {
    pub fn to_point(self) -> Point2 {
        Point2::new(self.x.to_c64(), self.y.to_c64())
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl From<Point2> for PointDd {
    fn from(z: Point2) -> PointDd {
        PointDd { x: z.x.into(), y: z.y.into() }
    }
}

impl Add for PointDd {
    type Output = PointDd;
    fn add(self, o: PointDd) -> PointDd {
        PointDd { x: self.x + o.x, y: self.y + o.y }
    }
}

impl Sub for PointDd {
    type Output = PointDd;
    fn sub(self, o: PointDd) -> PointDd {
        PointDd { x: self.x - o.x, y: self.y - o.y }
    }
}

/// A Henon map with its coefficients held in double-double.
#[derive(Clone, Debug)]
pub struct HenonDd {
    coeffs: Vec<Cdd>,
    a: Cdd,
}

impl HenonDd {
    pub fn new(map: &HenonMap) -> HenonDd {
        HenonDd { coeffs: map.poly().coeffs.iter().map(|&c| c.into()).collect(), a: map.a().into() }
    }

    fn p(&self, x: Cdd) -> Cdd {
        let mut acc = Cdd::default();
        for &c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn apply(&self, z: PointDd) -> PointDd {
        PointDd { x: self.p(z.x) - self.a * z.y, y: z.x }
    }

    pub fn apply_inverse(&self, z: PointDd) -> PointDd {
        PointDd { x: z.y, y: (self.p(z.y) - z.x) / self.a }
    }

    /// `n`-fold iterate (negative `n` iterates the inverse).
    pub fn iterate(&self, mut z: PointDd, n: i64) -> Option<PointDd> {
        for _ in 0..n.unsigned_abs() {
            z = if n > 0 { self.apply(z) } else { self.apply_inverse(z) };
            if !z.is_finite() {
                return None;
            }
        }
        Some(z)
    }
}
