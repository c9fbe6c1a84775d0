//! The filled sets `K+`, `K-`, `K` and their boundaries, computed by escape
//! time, plus slice rasters and raster component labeling.

pub mod classify;
pub mod raster;
pub mod slice;

pub use classify::{
    backward_escape_time, classify, forward_escape_time, EscapeTime, OrbitClass, CONDITIONING_LIMIT,
};
pub use raster::{label_components, Component, Labels};
pub use slice::{palette, render_slice, Plane, SliceError, SliceImage, SliceSpec, Window};
