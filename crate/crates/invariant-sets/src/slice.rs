//! Rasterized slices of phase space colored by escape times.

use crate::classify::{classify, EscapeTime, OrbitClass};
use henon_core::{format_complex, Complex64, HenonMap, Point2};
use rayon::prelude::*;
use serde::Serialize;
use std::fmt::Write as _;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Plane {
    /// Free coordinate `x`, fixed `y`.
    FixY(Complex64),
    /// Free coordinate `y`, fixed `x`.
    FixX(Complex64),
    /// Real `x` horizontally, real `y` vertically.
    RealPlane,
}

/// Axis-aligned window: `h` spans the horizontal pixel axis, `v` the vertical one.
///
/// For `FixY`/`FixX` these are the real and imaginary parts of the free
/// coordinate, for `RealPlane` they are `x` and `y`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Window {
    pub h: (f64, f64),
    pub v: (f64, f64),
}

impl Window {
    pub fn square(half: f64) -> Self {
        Window { h: (-half, half), v: (-half, half) }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SliceSpec {
    pub plane: Plane,
    pub window: Window,
    pub width: usize,
    pub height: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SliceError {
    Resolution { width: usize, height: usize },
    Window,
}

impl std::fmt::Display for SliceError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SliceError::Resolution { width, height } => {
                write!(f, "resolution {width}x{height} is below 2x2")
            }
            SliceError::Window => f.write_str("window bounds must be finite with lo < hi"),
        }
    }
}

impl std::error::Error for SliceError {}

impl SliceSpec {
    pub fn new(plane: Plane, window: Window, width: usize, height: usize) -> Result<Self, SliceError> {
        if width < 2 || height < 2 {
            return Err(SliceError::Resolution { width, height });
        }
        let ok = |(lo, hi): (f64, f64)| lo.is_finite() && hi.is_finite() && lo < hi;
        if !ok(window.h) || !ok(window.v) {
            return Err(SliceError::Window);
        }
        Ok(SliceSpec { plane, window, width, height })
    }

    /// Plane coordinates of the center of pixel `(i, j)`; row 0 is the top.
    pub fn pixel_coords(&self, i: usize, j: usize) -> (f64, f64) {
        let (h0, h1) = self.window.h;
        let (v0, v1) = self.window.v;
        let u = h0 + (i as f64 + 0.5) * (h1 - h0) / self.width as f64;
        let v = v1 - (j as f64 + 0.5) * (v1 - v0) / self.height as f64;
        (u, v)
    }

    pub fn pixel_point(&self, i: usize, j: usize) -> Point2 {
        let (u, v) = self.pixel_coords(i, j);
        match self.plane {
            Plane::FixY(y) => Point2::new(Complex64::new(u, v), y),
            Plane::FixX(x) => Point2::new(x, Complex64::new(u, v)),
            Plane::RealPlane => Point2::real(u, v),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SliceImage {
    pub spec: SliceSpec,
    /// Row-major, top row first.
    pub classes: Vec<OrbitClass>,
}

fn shade(t: EscapeTime) -> u8 {
    match t {
        EscapeTime::Bounded => 0,
        EscapeTime::Escaped(n) => 255 - (n.min(20) * 10) as u8,
    }
}

/// Red encodes backward escape, blue forward escape; K is black.
pub fn palette(c: &OrbitClass) -> [u8; 3] {
    let r = shade(c.backward_escape_time);
    let b = shade(c.forward_escape_time);
    let g = if r > 0 && b > 0 { r.min(b) / 3 } else { 0 };
    [r, g, b]
}

impl SliceImage {
    pub fn get(&self, i: usize, j: usize) -> &OrbitClass {
        &self.classes[j * self.spec.width + i]
    }

    pub fn pixels(&self) -> Vec<[u8; 3]> {
        self.classes.iter().map(palette).collect()
    }

    pub fn to_ppm(&self) -> Vec<u8> {
        let mut out = format!("P6\n{} {}\n255\n", self.spec.width, self.spec.height).into_bytes();
        for p in self.pixels() {
            out.extend_from_slice(&p);
        }
        out
    }

    /// One row per pixel: `re(x),im(x),re(y),im(y),fwd,bwd`.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("re(x),im(x),re(y),im(y),fwd,bwd\n");
        for j in 0..self.spec.height {
            for i in 0..self.spec.width {
                let z = self.spec.pixel_point(i, j);
                let c = self.get(i, j);
                let _ = writeln!(
                    s,
                    "{},{},{},{},{},{}",
                    z.x.re, z.x.im, z.y.re, z.y.im, c.forward_escape_time, c.backward_escape_time
                );
            }
        }
        s
    }

    pub fn forward_bounded_mask(&self) -> Vec<bool> {
        self.classes.iter().map(|c| c.forward_escape_time.is_bounded()).collect()
    }

    pub fn backward_bounded_mask(&self) -> Vec<bool> {
        self.classes.iter().map(|c| c.backward_escape_time.is_bounded()).collect()
    }

    /// Fraction of pixels bounded in the forward direction.
    pub fn forward_bounded_fraction(&self) -> f64 {
        let n = self.classes.iter().filter(|c| c.forward_escape_time.is_bounded()).count();
        n as f64 / self.classes.len() as f64
    }

    pub fn conditioning_warning(&self) -> bool {
        self.classes.iter().any(|c| c.conditioning_warning)
    }

    /// Pixels of `mask` with a 4-neighbour of the opposite class: the
    /// resolution-limited picture of the boundary of the masked set.
    pub fn boundary_mask(&self, mask: &[bool]) -> Vec<bool> {
        let (w, h) = (self.spec.width, self.spec.height);
        let mut out = vec![false; w * h];
        for j in 0..h {
            for i in 0..w {
                let k = j * w + i;
                let mut nb = Vec::with_capacity(4);
                if i > 0 {
                    nb.push(k - 1);
                }
                if i + 1 < w {
                    nb.push(k + 1);
                }
                if j > 0 {
                    nb.push(k - w);
                }
                if j + 1 < h {
                    nb.push(k + w);
                }
                out[k] = nb.into_iter().any(|n| mask[n] != mask[k]);
            }
        }
        out
    }

    /// Approximation of `J+` on the slice.
    pub fn j_plus_mask(&self) -> Vec<bool> {
        self.boundary_mask(&self.forward_bounded_mask())
    }

    pub fn j_minus_mask(&self) -> Vec<bool> {
        self.boundary_mask(&self.backward_bounded_mask())
    }

    /// `J = J+ ∩ J-` at pixel resolution.
    pub fn j_mask(&self) -> Vec<bool> {
        self.j_plus_mask().into_iter().zip(self.j_minus_mask()).map(|(p, m)| p && m).collect()
    }
}

/// Classifies every pixel center; rows are distributed across the rayon pool
/// and collected in order, so the result does not depend on the partition.
pub fn render_slice(map: &HenonMap, spec: &SliceSpec, r: f64, horizon: u32) -> SliceImage {
    let classes = (0..spec.height)
        .into_par_iter()
        .flat_map_iter(|j| (0..spec.width).map(move |i| classify(map, spec.pixel_point(i, j), r, horizon)))
        .collect();
    SliceImage { spec: *spec, classes }
}

impl std::fmt::Display for Plane {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Plane::FixY(y) => write!(f, "y={}", format_complex(*y)),
            Plane::FixX(x) => write!(f, "x={}", format_complex(*x)),
            Plane::RealPlane => f.write_str("real"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_by_two_is_four_classifications() {
        let f = HenonMap::quadratic(1.0, -10.0);
        let spec = SliceSpec::new(Plane::FixY(Complex64::new(0.0, 0.0)), Window::square(4.5), 2, 2).unwrap();
        let img = render_slice(&f, &spec, 4.4, 20);
        assert_eq!(img.classes.len(), 4);
        assert_eq!(img.to_ppm().len(), "P6\n2 2\n255\n".len() + 12);
        assert_eq!(img.to_csv().lines().count(), 5);
    }

    #[test]
    fn degenerate_resolution_is_rejected() {
        assert!(SliceSpec::new(Plane::RealPlane, Window::square(1.0), 1, 4).is_err());
    }

    #[test]
    fn pixel_centers() {
        let spec = SliceSpec::new(Plane::RealPlane, Window::square(1.0), 2, 2).unwrap();
        assert_eq!(spec.pixel_coords(0, 0), (-0.5, 0.5));
        assert_eq!(spec.pixel_coords(1, 1), (0.5, -0.5));
    }
}
