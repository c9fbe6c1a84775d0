//! Escape times in both directions relative to the bidisc `D_R x D_R`.

use henon_core::{in_backward_escape_region, in_forward_escape_region, HenonMap, Point2};
use serde::{Serialize, Serializer};

/// Iterates beyond this inverse-conditioning factor `1/|a|` carry a warning.
pub const CONDITIONING_LIMIT: f64 = 1e3;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EscapeTime {
    /// First iterate in the escape region (or overflowing).
    Escaped(u32),
    /// No certified escape within the horizon.
    Bounded,
}

impl EscapeTime {
    pub fn is_bounded(self) -> bool {
        self == EscapeTime::Bounded
    }

    pub fn time(self) -> Option<u32> {
        match self {
            EscapeTime::Escaped(n) => Some(n),
            EscapeTime::Bounded => None,
        }
    }
}

impl std::fmt::Display for EscapeTime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            EscapeTime::Escaped(n) => write!(f, "{n}"),
            EscapeTime::Bounded => f.write_str("bounded"),
        }
    }
}

impl Serialize for EscapeTime {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            EscapeTime::Escaped(n) => s.serialize_u32(*n),
            EscapeTime::Bounded => s.serialize_str("bounded"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitClass {
    pub forward_escape_time: EscapeTime,
    pub backward_escape_time: EscapeTime,
    pub horizon: u32,
    /// Backward iterates were amplified by `1/|a|` above [`CONDITIONING_LIMIT`].
    pub conditioning_warning: bool,
}

impl OrbitClass {
    /// Bounded both ways: a point of (the horizon approximation of) K.
    pub fn in_k(&self) -> bool {
        self.forward_escape_time.is_bounded() && self.backward_escape_time.is_bounded()
    }
}

/// First `n <= horizon` with `F^n(z)` in `V+ = {|x| > R, |y| <= |x|}`.
///
/// An orbit starting in the closed bidisc cannot reach `V-` going forward,
/// so `Bounded` means every iterate up to the horizon stayed in `D_R x D_R`.
pub fn forward_escape_time(map: &HenonMap, z: Point2, r: f64, horizon: u32) -> EscapeTime {
    let mut w = z;
    for n in 0..=horizon {
        if in_forward_escape_region(w, r) {
            return EscapeTime::Escaped(n);
        }
        if n == horizon {
            break;
        }
        w = match map.apply(w) {
            Ok(v) => v,
            Err(_) => return EscapeTime::Escaped(n + 1),
        };
    }
    EscapeTime::Bounded
}

/// Mirror image of [`forward_escape_time`] for `F^{-1}` and `V-`.
pub fn backward_escape_time(map: &HenonMap, z: Point2, r: f64, horizon: u32) -> EscapeTime {
    let mut w = z;
    for n in 0..=horizon {
        if in_backward_escape_region(w, r) {
            return EscapeTime::Escaped(n);
        }
        if n == horizon {
            break;
        }
        w = match map.apply_inverse(w) {
            Ok(v) => v,
            Err(_) => return EscapeTime::Escaped(n + 1),
        };
    }
    EscapeTime::Bounded
}

/// Classifies `z`; `r` must exceed the escape radius of `map`.
pub fn classify(map: &HenonMap, z: Point2, r: f64, horizon: u32) -> OrbitClass {
    let backward = backward_escape_time(map, z, r, horizon);
    OrbitClass {
        forward_escape_time: forward_escape_time(map, z, r, horizon),
        backward_escape_time: backward,
        horizon,
        conditioning_warning: 1.0 / map.a().norm() > CONDITIONING_LIMIT && backward.time() != Some(0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn origin_escapes_for_the_horseshoe_map() {
        let f = HenonMap::quadratic(1.0, -10.0);
        let c = classify(&f, Point2::real(0.0, 0.0), 4.4, 100);
        assert!(matches!(c.forward_escape_time, EscapeTime::Escaped(n) if n >= 1));
    }

    #[test]
    fn small_a_is_flagged() {
        let f = HenonMap::quadratic(1e-4, -2.0);
        assert!(classify(&f, Point2::real(0.0, 0.0), 3.0, 5).conditioning_warning);
    }
}
