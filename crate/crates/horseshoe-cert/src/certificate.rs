//! Outcome record shared by all certification methods.

use henon_core::Verdict;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Inequality,
    ConeSweep,
    ComponentCount,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::Inequality => "inequality",
            Method::ConeSweep => "cone_sweep",
            Method::ComponentCount => "component_count",
        })
    }
}

/// Serialized with the fixed key order
/// `method, map, R, alpha, gamma, margin, verdict, boxes, depth, wall_ms`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Certificate {
    pub method: Method,
    /// Canonical map descriptor.
    pub map: String,
    #[serde(rename = "R")]
    pub r: f64,
    pub alpha: f64,
    pub gamma: f64,
    /// Positive whenever the verdict is yes.
    pub margin: f64,
    pub verdict: Verdict,
    pub boxes: u64,
    pub depth: u32,
    pub wall_ms: u64,
    /// Cells left undecided when the depth budget ran out, as
    /// `[re_lo, re_hi, im_lo, im_hi]` in the swept coordinate.
    #[serde(skip)]
    pub undecided: Vec<[f64; 4]>,
}

impl Certificate {
    pub fn is_yes(&self) -> bool {
        self.verdict.is_yes()
    }
}
