//! Finite-depth itineraries.

use crate::labeling::{ComponentLabeling, LabelError};
use crate::word::SymbolWord;
use henon_core::{PlanarMap, Point2};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ItineraryError {
    #[error("not in K to requested depth: iterate {index} leaves the bidisc")]
    Escaped { index: i64 },
    #[error("unresolved symbol at index {index}: {source}")]
    Unresolved { index: i64, source: LabelError },
}

/// Orbit `F^k(z)` for `k = -n_back ..= n_fwd + 1`, or the first escaping index.
pub fn orbit<M: PlanarMap + ?Sized>(
    map: &M,
    labeling: &ComponentLabeling,
    z: Point2,
    n_back: usize,
    n_fwd: usize,
) -> Result<Vec<Point2>, ItineraryError> {
    let b = &labeling.b;
    if b.gauge(z) > 1.0 {
        return Err(ItineraryError::Escaped { index: 0 });
    }
    let mut back = Vec::with_capacity(n_back);
    let mut w = z;
    for k in 1..=n_back {
        w = map.eval_inverse(w).filter(|v| b.gauge(*v) <= 1.0).ok_or(ItineraryError::Escaped { index: -(k as i64) })?;
        back.push(w);
    }
    back.reverse();
    back.push(z);
    let mut w = z;
    for k in 1..=n_fwd + 1 {
        w = map.eval(w).filter(|v| b.gauge(*v) <= 1.0).ok_or(ItineraryError::Escaped { index: k as i64 })?;
        back.push(w);
    }
    Ok(back)
}

/// Symbols of `F^k(z)` for `-n_back <= k <= n_fwd`.
///
/// The symbol at `k` is the component of `F^{-1}(B) ∩ B` holding `F^k(z)`,
/// so `F^{n_fwd + 1}(z)` must also lie in `B`.
pub fn itinerary<M: PlanarMap + ?Sized>(
    map: &M,
    z: Point2,
    n_back: usize,
    n_fwd: usize,
    labeling: &ComponentLabeling,
) -> Result<SymbolWord, ItineraryError> {
    let pts = orbit(map, labeling, z, n_back, n_fwd)?;
    label_orbit(map, &pts[..n_back + n_fwd + 1], n_back, labeling)
}

/// Labels an orbit segment computed elsewhere; `pts[n_back]` is the point
/// at index 0. Every point must lie in `F^{-1}(B) ∩ B`.
pub fn label_orbit<M: PlanarMap + ?Sized>(
    map: &M,
    pts: &[Point2],
    n_back: usize,
    labeling: &ComponentLabeling,
) -> Result<SymbolWord, ItineraryError> {
    let mut symbols = Vec::with_capacity(pts.len());
    for (i, p) in pts.iter().enumerate() {
        let index = i as i64 - n_back as i64;
        let s = labeling.label(map, *p).map_err(|source| match source {
            LabelError::Outside => ItineraryError::Escaped { index },
            source => ItineraryError::Unresolved { index, source },
        })?;
        symbols.push(s);
    }
    Ok(SymbolWord { symbols, offset: n_back, cyclic: false })
}
