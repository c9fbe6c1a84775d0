use crate::point::Point2;
use crate::rect::{Box2, ComplexRect};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Disc {
    pub c: Complex64,
    pub r: f64,
}

impl Disc {
    pub fn new(c: Complex64, r: f64) -> Self {
        assert!(r > 0.0 && r.is_finite(), "disc radius must be positive");
        Self { c, r }
    }

    pub fn contains(&self, z: Complex64) -> bool {
        (z - self.c).norm() <= self.r
    }

    pub fn boundary_point(&self, theta: f64) -> Complex64 {
        self.c + Complex64::from_polar(self.r, theta)
    }

    pub fn bounding_rect(&self) -> ComplexRect {
        ComplexRect::around_disc(self.c, self.r)
    }
}

/// `D1 x D2`, round discs.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Bidisc {
    pub c1: Complex64,
    pub c2: Complex64,
    pub r1: f64,
    pub r2: f64,
}

/// Which coordinate is held fixed by a slice.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    /// `H_y = D1 x {y}`: the free coordinate is x.
    Horizontal,
    /// `V_x = {x} x D2`: the free coordinate is y.
    Vertical,
}

/// A one-variable disc slice of a bidisc.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Slice {
    pub axis: Axis,
    pub fixed: Complex64,
    pub disc: Disc,
}

impl Slice {
    /// Embeds the free coordinate `t` as a point of C^2.
    pub fn point(&self, t: Complex64) -> Point2 {
        match self.axis {
            Axis::Horizontal => Point2::new(t, self.fixed),
            Axis::Vertical => Point2::new(self.fixed, t),
        }
    }

    pub fn free(&self, z: Point2) -> Complex64 {
        match self.axis {
            Axis::Horizontal => z.x,
            Axis::Vertical => z.y,
        }
    }
}

impl Bidisc {
    pub fn new(c1: Complex64, c2: Complex64, r1: f64, r2: f64) -> Self {
        assert!(r1 > 0.0 && r2 > 0.0 && r1.is_finite() && r2.is_finite(), "bidisc radii must be positive");
        Self { c1, c2, r1, r2 }
    }

    /// `D_R x D_R` centered at the origin.
    pub fn centered(r: f64) -> Self {
        let z = Complex64::new(0.0, 0.0);
        Self::new(z, z, r, r)
    }

    pub fn d1(&self) -> Disc {
        Disc { c: self.c1, r: self.r1 }
    }

    pub fn d2(&self) -> Disc {
        Disc { c: self.c2, r: self.r2 }
    }

    pub fn center(&self) -> Point2 {
        Point2::new(self.c1, self.c2)
    }

    /// Closed bidisc membership.
    pub fn contains(&self, z: Point2) -> bool {
        self.d1().contains(z.x) && self.d2().contains(z.y)
    }

    /// Largest normalized coordinate distance: `<= 1` iff inside.
    pub fn gauge(&self, z: Point2) -> f64 {
        ((z.x - self.c1).norm() / self.r1).max((z.y - self.c2).norm() / self.r2)
    }

    pub fn horizontal_slice(&self, y: Complex64) -> Slice {
        Slice { axis: Axis::Horizontal, fixed: y, disc: self.d1() }
    }

    pub fn vertical_slice(&self, x: Complex64) -> Slice {
        Slice { axis: Axis::Vertical, fixed: x, disc: self.d2() }
    }

    pub fn bounding_box(&self) -> Box2 {
        Box2::new(self.d1().bounding_rect(), self.d2().bounding_rect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slices_embed_free_coordinate() {
        let b = Bidisc::centered(2.0);
        let y = Complex64::new(0.5, 0.0);
        let h = b.horizontal_slice(y);
        let z = h.point(Complex64::new(1.0, 1.0));
        assert_eq!(z.y, y);
        assert_eq!(h.free(z), Complex64::new(1.0, 1.0));
        assert!(b.contains(z));
        assert!(!b.contains(Point2::real(2.1, 0.0)));
    }
}
