//! Certificates that a Henon-like map on a bidisc is a complex horseshoe.
//!
//! Three routes are offered: a closed-form inequality for the quadratic
//! normal form, an interval sweep proving that a constant cone field is
//! trapping, and a raster count of the components of `F^{±1}(B) ∩ B`.

pub mod certificate;
pub mod components;
pub mod cone;
pub mod critical;
pub mod decay;
pub mod inequality;
pub mod sweep;
pub mod zoom;

pub use certificate::{Certificate, Method};
pub use components::{
    certify_components, component_count, component_count_on, default_slices, member, raster_window, slice_raster, ComponentReport,
    Direction, SliceCount, SliceRaster,
};
pub use cone::ConeField;
pub use critical::{critical_value_clearance, critical_values_escape};
pub use decay::{fiber_diameter_decay, fiber_diameter_decay_on, fiber_samples, DecayReport};
pub use inequality::{
    certify_inequality, margin_interval, margin_value, optimize_aperture, threshold, threshold_curve,
    unit_cone_threshold, ApertureSearch, InequalityError, DEFAULT_ALPHA, MIN_ALPHA,
};
pub use sweep::certify_cone_sweep;
pub use zoom::{component_count_zoomed, slice_roots, zoom_window, zoomed_components, SliceRoot, ZoomWindow};
