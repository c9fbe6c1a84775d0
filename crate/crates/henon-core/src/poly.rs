//! Complex univariate polynomials: point, rectangle and ball evaluation, roots.

use crate::interval::Interval;
use crate::rect::ComplexRect;
use num_complex::Complex64;

/// Coefficients stored lowest degree first.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly {
    pub coeffs: Vec<Complex64>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.norm() == 0.0) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(Complex64::new(0.0, 0.0));
        }
        Self { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> Complex64 {
        *self.coeffs.last().unwrap()
    }

    pub fn eval(&self, x: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * x + c)
    }

    /// `(p(x), p'(x))` in one Horner pass.
    pub fn eval_with_deriv(&self, x: Complex64) -> (Complex64, Complex64) {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            dp = dp * x + p;
            p = p * x + c;
        }
        (p, dp)
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::new(vec![Complex64::new(0.0, 0.0)]);
        }
        Poly::new(self.coeffs.iter().enumerate().skip(1).map(|(k, &c)| c * k as f64).collect())
    }

    /// Horner evaluation in rectangle arithmetic.
    pub fn eval_rect(&self, x: &ComplexRect) -> ComplexRect {
        let mut acc = ComplexRect::point(*self.coeffs.last().unwrap());
        for &c in self.coeffs.iter().rev().skip(1) {
            acc = acc * *x + ComplexRect::point(c);
        }
        acc
    }

    /// Enclosure of `p` over the closed disc `|x - m| <= rho` as a rectangle
    /// plus an extra radius: every value lies within `extra` of the rectangle.
    pub fn eval_ball(&self, m: Complex64, rho: f64) -> (ComplexRect, f64) {
        // Taylor coefficients at m by repeated synthetic division, in rectangle arithmetic.
        let mut b: Vec<ComplexRect> = self.coeffs.iter().map(|&c| ComplexRect::point(c)).collect();
        let mm = ComplexRect::point(m);
        let n = b.len();
        for k in 0..n {
            for j in (k..n - 1).rev() {
                b[j] = b[j] + b[j + 1] * mm;
            }
        }
        let r = Interval::point(rho);
        let mut pow = Interval::point(1.0);
        let mut extra = Interval::point(0.0);
        for bk in b.iter().skip(1) {
            pow = pow * r;
            extra = extra + Interval::point(bk.abs().hi) * pow;
        }
        (b[0], extra.hi)
    }

    /// Lower bound of `|p(x) - w|` over the disc `|x - m| <= rho`.
    pub fn dist_lower_ball(&self, m: Complex64, rho: f64, w: Complex64) -> f64 {
        let (center, extra) = self.eval_ball(m, rho);
        (center.dist_lower(w) - extra).next_down()
    }

    /// All complex roots of `p(x) = w`, by Aberth iteration with Newton polish.
    pub fn solve(&self, w: Complex64) -> Vec<Complex64> {
        let mut q = self.clone();
        q.coeffs[0] -= w;
        q.roots()
    }

    pub fn roots(&self) -> Vec<Complex64> {
        let d = self.degree();
        if d == 0 {
            return Vec::new();
        }
        let lead = self.leading();
        let monic: Vec<Complex64> = self.coeffs.iter().map(|&c| c / lead).collect();
        if d == 1 {
            return vec![-monic[0]];
        }
        if d == 2 {
            return quadratic_roots(monic[1], monic[0]);
        }
        let p = Poly { coeffs: monic.clone() };
        // Cauchy bound for the initial circle.
        let bound = 1.0 + monic[..d].iter().map(|c| c.norm()).fold(0.0, f64::max);
        let mut z: Vec<Complex64> = (0..d)
            .map(|k| Complex64::from_polar(bound, 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / d as f64))
            .collect();
        for _ in 0..500 {
            let mut moved = 0.0f64;
            for i in 0..d {
                let (pv, dv) = p.eval_with_deriv(z[i]);
                if pv.norm() == 0.0 {
                    continue;
                }
                let ratio = pv / dv;
                let s: Complex64 = (0..d).filter(|&j| j != i).map(|j| Complex64::new(1.0, 0.0) / (z[i] - z[j])).sum();
                let step = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
                if step.is_finite() {
                    z[i] -= step;
                    moved = moved.max(step.norm() / (1.0 + z[i].norm()));
                }
            }
            if moved < 1e-15 {
                break;
            }
        }
        for r in z.iter_mut() {
            for _ in 0..3 {
                let (pv, dv) = p.eval_with_deriv(*r);
                if dv.norm() == 0.0 {
                    break;
                }
                let step = pv / dv;
                if !step.is_finite() {
                    break;
                }
                *r -= step;
            }
        }
        z
    }
}

/// Roots of `x^2 + b x + c`, computed without cancellation.
fn quadratic_roots(b: Complex64, c: Complex64) -> Vec<Complex64> {
    let disc = (b * b - 4.0 * c).sqrt();
    let s = if (-b + disc).norm() >= (-b - disc).norm() { -b + disc } else { -b - disc };
    let r1 = s * 0.5;
    let r2 = if r1.norm() > 0.0 { c / r1 } else { Complex64::new(0.0, 0.0) };
    vec![r1, r2]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn horner_with_derivative() {
        let p = Poly::new(vec![c(-10.0), c(0.0), c(1.0)]);
        let (v, d) = p.eval_with_deriv(c(3.0));
        assert_eq!(v, c(-1.0));
        assert_eq!(d, c(6.0));
    }

    #[test]
    fn ball_contains_samples() {
        let p = Poly::new(vec![c(-10.0), Complex64::new(0.5, 1.0), c(0.0), c(1.0)]);
        let m = Complex64::new(0.7, -0.2);
        let rho = 0.3;
        let (center, extra) = p.eval_ball(m, rho);
        for k in 0..64 {
            let x = m + Complex64::from_polar(rho, k as f64 * 0.1);
            let v = p.eval(x);
            let d = center.dist_lower(v);
            assert!(d <= extra + 1e-12, "{d} > {extra}");
        }
    }

    #[test]
    fn cubic_roots_are_roots() {
        let p = Poly::new(vec![c(-30.0), c(0.0), c(0.0), c(1.0)]);
        let r = p.roots();
        assert_eq!(r.len(), 3);
        for z in r {
            assert!(p.eval(z).norm() < 1e-10);
        }
    }
}
