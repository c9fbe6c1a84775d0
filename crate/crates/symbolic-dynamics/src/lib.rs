//! Finite-depth coding of a horseshoe by the full shift on `d` symbols.
//!
//! Points of `K` get itineraries through the labeled components of
//! `F^{-1}(B) ∩ B`; symbol words are turned back into points by iterating
//! the inverse branches along an orbit segment.

pub mod itinerary;
pub mod labeling;
pub mod refine;
pub mod word;

pub use itinerary::{itinerary, label_orbit, orbit, ItineraryError};
pub use labeling::{build_labeling, build_labeling_zoomed, continue_fiber, in_domain, ComponentLabeling, LabelError};
pub use refine::{newton_periodic, refine_point, RefineError, Refinement};
pub use word::{SymbolWord, WordError};
