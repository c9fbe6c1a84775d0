//! Horseshoes from transverse homoclinic points.
//!
//! A hyperbolic periodic point `p` is located, its local stable and unstable
//! manifolds are parametrized by Taylor polynomials, a transverse
//! intersection `q` of the two is found on the real slice, and an affine
//! chart around `p` is chosen in which an iterate `F^{kN}` is a horseshoe
//! of the requested degree.

pub mod build;
pub mod chart;
pub mod coding;
pub mod dd;
pub mod error;
pub mod manifold;
pub mod saddle;
pub mod search;

pub use build::{build_horseshoe, check_chart, intersection_heights, ChartCheck, Horseshoe};
pub use coding::{
    chart_labeling, check_equivariance, forward_words, itinerary_dd, periodic_orbit_dd, DdCycle, EquivarianceReport,
};
pub use chart::{ChartMap, EmbeddedBidiscChart};
pub use dd::{Cdd, Dd, HenonDd, PointDd};
pub use error::HomoclinicError;
pub use manifold::{parametrize_manifold, ManifoldParam, Which, RESIDUAL_TOL};
pub use saddle::{find_saddle, saddle_at, SaddleData};
pub use search::{find_homoclinic, find_homoclinic_with, HomoclinicPoint, ANGLE_FLOOR, MANIFOLD_ORDER};
