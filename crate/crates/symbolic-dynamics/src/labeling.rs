//! Labels for the `d` components `U_0, ..., U_{d-1}` of `F^{-1}(B) ∩ B`.
//!
//! Inside `U_i` the map `x -> π1 F(x, y)` is one-to-one onto `D1` for each
//! `y`. A point `(u, v)` is therefore labeled by following the fiber
//! `π1 F(·, v') = π1 F(u, v)` as `v'` moves to a reference height, where a
//! raster of the slice decides. Labels are ordered by the real part of the
//! component centroid on the reference slice, then the imaginary part.

use henon_core::{Bidisc, Complex64, PlanarMap, Point2};
use horseshoe_cert::{slice_raster, zoomed_components, Direction, SliceRaster};
use thiserror::Error;

const CONTINUATION_STEPS: usize = 24;
const NEWTON_STEPS: usize = 4;
const POLISH_STEPS: usize = 30;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LabelError {
    #[error("slice raster shows {found} components, expected {expected}")]
    ComponentCount { found: usize, expected: usize },
    #[error("point is not in F^-1(B) ∩ B")]
    Outside,
    #[error("fiber continuation failed")]
    Continuation,
    #[error("point falls in the guard band between components")]
    Unresolved,
}

/// A reference raster and its raster-label -> symbol map.
type Window = (SliceRaster, Vec<Option<u8>>);

#[derive(Clone, Debug)]
pub struct ComponentLabeling {
    pub b: Bidisc,
    pub d: usize,
    /// Height of the reference slice.
    pub v_ref: Complex64,
    /// Either one full-slice raster or one zoomed window per component.
    reference: Vec<Window>,
    /// Reference-slice centroids, indexed by symbol.
    pub centroids: Vec<Complex64>,
}

/// Solves `π1 G(u, v) = w` for `u` by Newton from `u0`.
fn newton_fiber<M: PlanarMap + ?Sized>(map: &M, mut u: Complex64, v: Complex64, w: Complex64, steps: usize) -> Option<Complex64> {
    for _ in 0..steps {
        let z = Point2::new(u, v);
        let g = map.eval(z)?.x - w;
        let j = map.jacobian_at(z)?.m[0][0];
        if j.norm() == 0.0 {
            return None;
        }
        let du = g / j;
        u -= du;
        if !u.is_finite() {
            return None;
        }
        if du.norm() <= 1e-15 * (1.0 + u.norm()) {
            break;
        }
    }
    Some(u)
}

/// Follows the fiber `π1 G(·, v) = w` from `(u, v_from)` to height `v_to`.
pub fn continue_fiber<M: PlanarMap + ?Sized>(
    map: &M,
    u: Complex64,
    v_from: Complex64,
    v_to: Complex64,
    w: Complex64,
) -> Option<Complex64> {
    let mut u = u;
    for k in 1..=CONTINUATION_STEPS {
        let t = k as f64 / CONTINUATION_STEPS as f64;
        let v = v_from + (v_to - v_from) * t;
        u = newton_fiber(map, u, v, w, NEWTON_STEPS)?;
    }
    newton_fiber(map, u, v_to, w, POLISH_STEPS)
}

pub fn in_domain<M: PlanarMap + ?Sized>(map: &M, b: &Bidisc, z: Point2) -> bool {
    b.gauge(z) <= 1.0 && map.eval(z).is_some_and(|w| b.gauge(w) <= 1.0)
}

/// Symbols in order of centroid real part, then imaginary part.
fn symbol_order(centroids: &[Complex64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..centroids.len()).collect();
    idx.sort_by(|&a, &b| centroids[a].re.total_cmp(&centroids[b].re).then(centroids[a].im.total_cmp(&centroids[b].im)));
    let mut sym = vec![0; centroids.len()];
    for (s, &k) in idx.iter().enumerate() {
        sym[k] = s;
    }
    sym
}

/// Rasters the reference slice `H_{c2}` and orders its components.
pub fn build_labeling<M: PlanarMap + ?Sized>(map: &M, b: &Bidisc, resolution: usize) -> Result<ComponentLabeling, LabelError> {
    let v_ref = b.c2;
    let reference = slice_raster(map, b, Direction::Bwd, v_ref, resolution);
    let d = map.slice_degree();
    if reference.count() != d {
        return Err(LabelError::ComponentCount { found: reference.count(), expected: d });
    }
    let cs: Vec<Complex64> = (0..d as u32).map(|l| reference.centroid(l)).collect();
    let sym = symbol_order(&cs);
    let mut centroids = vec![Complex64::new(0.0, 0.0); d];
    for (l, &s) in sym.iter().enumerate() {
        centroids[s] = cs[l];
    }
    let order = sym.iter().map(|&s| Some(s as u8)).collect();
    Ok(ComponentLabeling { b: *b, d, v_ref, reference: vec![(reference, order)], centroids })
}

/// Like [`build_labeling`], for components too thin for a full-slice raster:
/// each component of `H_{c2}` gets its own zoomed window.
pub fn build_labeling_zoomed<M: PlanarMap + ?Sized>(
    map: &M,
    b: &Bidisc,
    resolution: usize,
    seeds: usize,
) -> Result<ComponentLabeling, LabelError> {
    let v_ref = b.c2;
    let d = map.slice_degree();
    let windows = zoomed_components(map, b, Direction::Bwd, v_ref, resolution, seeds)
        .ok_or(LabelError::ComponentCount { found: 0, expected: d })?;
    if windows.len() != d {
        return Err(LabelError::ComponentCount { found: windows.len(), expected: d });
    }
    let cs: Vec<Complex64> = windows.iter().map(|w| w.centroid()).collect();
    let sym = symbol_order(&cs);
    let mut centroids = vec![Complex64::new(0.0, 0.0); d];
    let mut reference = Vec::with_capacity(d);
    for (k, w) in windows.into_iter().enumerate() {
        centroids[sym[k]] = cs[k];
        let mut order = vec![None; w.raster.labels.components.len()];
        order[w.label as usize] = Some(sym[k] as u8);
        reference.push((w.raster, order));
    }
    Ok(ComponentLabeling { b: *b, d, v_ref, reference, centroids })
}

/// Symbol at `u` in one window, with a one-pixel guard band.
/// `Ok(None)` when the window says nothing about `u`.
fn window_symbol((raster, order): &Window, u: Complex64) -> Result<Option<u8>, LabelError> {
    let Some((i, j)) = raster.pixel_of(u) else {
        return Ok(None);
    };
    if let Some(s) = raster.labels.at(i, j).and_then(|l| order[l as usize]) {
        return Ok(Some(s));
    }
    let n = raster.resolution as i64;
    let mut found = None;
    for dj in -1..=1i64 {
        for di in -1..=1i64 {
            let (a, c) = (i as i64 + di, j as i64 + dj);
            if a < 0 || c < 0 || a >= n || c >= n {
                continue;
            }
            if let Some(s) = raster.labels.at(a as usize, c as usize).and_then(|l| order[l as usize]) {
                match found {
                    None => found = Some(s),
                    Some(f) if f != s => return Err(LabelError::Unresolved),
                    _ => {}
                }
            }
        }
    }
    Ok(found)
}

impl ComponentLabeling {
    /// The same regions with symbols renamed by `perm` (symbol `s` becomes `perm[s]`).
    pub fn permuted(&self, perm: &[u8]) -> ComponentLabeling {
        let mut out = self.clone();
        for (_, order) in out.reference.iter_mut() {
            for o in order.iter_mut() {
                *o = o.map(|s| perm[s as usize]);
            }
        }
        for (s, c) in self.centroids.iter().enumerate() {
            out.centroids[perm[s] as usize] = *c;
        }
        out
    }

    /// Symbol of the reference-slice point `u`; windows must not disagree.
    fn reference_symbol(&self, u: Complex64) -> Result<u8, LabelError> {
        let mut found = None;
        for w in &self.reference {
            if let Some(s) = window_symbol(w, u)? {
                match found {
                    None => found = Some(s),
                    Some(f) if f != s => return Err(LabelError::Unresolved),
                    _ => {}
                }
            }
        }
        found.ok_or(LabelError::Unresolved)
    }

    /// Symbol of the component of `F^{-1}(B) ∩ B` containing `z`.
    pub fn label<M: PlanarMap + ?Sized>(&self, map: &M, z: Point2) -> Result<u8, LabelError> {
        if !in_domain(map, &self.b, z) {
            return Err(LabelError::Outside);
        }
        let w = map.eval(z).ok_or(LabelError::Outside)?.x;
        let u = continue_fiber(map, z.x, z.y, self.v_ref, w).ok_or(LabelError::Continuation)?;
        self.reference_symbol(u)
    }

    /// Label of `z` in `F(B) ∩ B`, matched so that `F(U_i) = V_i`.
    pub fn image_label<M: PlanarMap + ?Sized>(&self, map: &M, z: Point2) -> Result<u8, LabelError> {
        let w = map.eval_inverse(z).ok_or(LabelError::Outside)?;
        self.label(map, w)
    }

    /// The point `u` of `U_s` on the slice at height `v` with `π1 F(u, v) = w`.
    ///
    /// Seeds Newton on the reference slice from the pixels of component `s`,
    /// then follows the fiber to `v`.
    pub fn branch<M: PlanarMap + ?Sized>(&self, map: &M, s: u8, w: Complex64, v: Complex64) -> Option<Complex64> {
        let mut best: Option<(f64, Complex64)> = None;
        for (raster, order) in &self.reference {
            let n = raster.resolution;
            // A coarse pass over the component picks the starting pixel.
            let stride = (n / 64).max(1);
            for j in (0..n).step_by(stride) {
                for i in (0..n).step_by(stride) {
                    if raster.labels.at(i, j).and_then(|l| order[l as usize]) != Some(s) {
                        continue;
                    }
                    let u = raster.pixel_center(i, j);
                    if let Some(g) = map.eval(Point2::new(u, self.v_ref)) {
                        let e = (g.x - w).norm();
                        if best.map_or(true, |(b, _)| e < b) {
                            best = Some((e, u));
                        }
                    }
                }
            }
        }
        let u0 = newton_fiber(map, best?.1, self.v_ref, w, POLISH_STEPS)?;
        // `w` may lie outside D1 while a refinement is still settling, in
        // which case `u0` is off the raster; only a different label is fatal.
        if matches!(self.reference_symbol(u0), Ok(t) if t != s) {
            return None;
        }
        continue_fiber(map, u0, self.v_ref, v, w)
    }
}
