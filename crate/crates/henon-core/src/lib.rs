//! Complex generalized Henon maps `F(x, y) = (p(x) - a y, x)` on C^2.
//!
//! Point, rectangle and Jacobian evaluation, escape radii, and the boundary
//! disjointness / degree checks that make a bidisc Henon-like.

pub mod bidisc;
pub mod boundary;
pub mod escape;
pub mod interval;
pub mod map;
pub mod parse;
pub mod point;
pub mod poly;
pub mod rect;
pub mod verdict;

pub use bidisc::{Axis, Bidisc, Disc, Slice};
pub use boundary::{
    boundary_degree, check_quasi_henon_like, check_quasi_henon_like_sampled, slice_degree, winding_number,
    BoundaryCheck, DegreeError, Orientation, SampledCheck,
};
pub use escape::{escape_radius, escape_radius_normal, in_backward_escape_region, in_forward_escape_region};
pub use interval::Interval;
pub use map::{HenonMap, MapError, PlanarMap};
pub use num_complex::Complex64;
pub use parse::{format_complex, parse_complex, ParseError};
pub use point::{Mat2, Point2};
pub use poly::Poly;
pub use rect::{Box2, BoxBounds, ComplexRect};
pub use verdict::Verdict;

/// Shorthand for a real complex number.
pub fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}
