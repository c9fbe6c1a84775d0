//! Component counts for slices whose components are much smaller than a pixel
//! of a full-slice raster, as happens for high iterates.
//!
//! When the boundary conditions hold, each component of a slice of
//! `F^{-1}(B) ∩ B` is mapped properly onto `D1` by `π1 F`, so it contains a
//! root of `π1 F(t, y) = c1` (dually for `F(B) ∩ B`). The roots are found by
//! Newton from a seed grid, and each root gets a raster window scaled by the
//! local derivative. Roots sharing a window component are merged.

use crate::components::{raster_window, ComponentReport, Direction, SliceCount, SliceRaster};
use henon_core::{Bidisc, Complex64, PlanarMap, Point2};
use rayon::prelude::*;
use serde::Serialize;

const NEWTON_STEPS: usize = 80;
/// Window half-width in units of `r / |derivative|`.
const WINDOW_SCALE: f64 = 3.0;
const MAX_DOUBLINGS: usize = 10;

/// A member point of the slice where the free coordinate of the image hits the center.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct SliceRoot {
    pub t: Complex64,
    /// `F(z)` for `Bwd`, `F^{-1}(z)` for `Fwd`.
    pub image: Point2,
    /// Derivative of the relevant image coordinate in `t`.
    pub derivative: Complex64,
}

/// Value, derivative and image of the image coordinate that the slice direction tests.
fn slice_value<M: PlanarMap + ?Sized>(
    map: &M,
    b: &Bidisc,
    dir: Direction,
    fixed: Complex64,
    t: Complex64,
) -> Option<(Complex64, Complex64, Point2)> {
    let z = dir.point(fixed, t);
    match dir {
        Direction::Bwd => {
            let w = map.eval(z)?;
            let j = map.jacobian_at(z)?;
            Some((w.x - b.c1, j.m[0][0], w))
        }
        Direction::Fwd => {
            let w = map.eval_inverse(z)?;
            let j = map.jacobian_at(w)?.inverse()?;
            Some((w.y - b.c2, j.m[1][1], w))
        }
    }
}

fn newton<M: PlanarMap + ?Sized>(map: &M, b: &Bidisc, dir: Direction, fixed: Complex64, t0: Complex64) -> Option<SliceRoot> {
    match dir {
        Direction::Bwd => newton_bwd(map, b, fixed, t0),
        Direction::Fwd => newton_fwd(map, b, fixed, t0),
    }
}

/// Roots of `π1 F(t, fixed) = c1`.
fn newton_bwd<M: PlanarMap + ?Sized>(map: &M, b: &Bidisc, fixed: Complex64, mut t: Complex64) -> Option<SliceRoot> {
    let (c, r) = (b.c1, b.r1);
    for _ in 0..NEWTON_STEPS {
        let (g, dg, _) = slice_value(map, b, Direction::Bwd, fixed, t)?;
        if dg.norm() == 0.0 {
            return None;
        }
        let step = g / dg;
        t -= step;
        if !t.is_finite() || (t - c).norm() > 4.0 * r {
            return None;
        }
        if step.norm() <= 1e-14 * (r + t.norm()) {
            let (_, derivative, image) = slice_value(map, b, Direction::Bwd, fixed, t)?;
            return Some(SliceRoot { t, image, derivative });
        }
    }
    None
}

/// Roots of `π2 F^{-1}(fixed, t) = c2`, found as images `F(x, c2)` with
/// `π1 F(x, c2) = fixed`: the inverse of a high iterate overflows long before
/// Newton on it converges, while the forward map stays tame on `D1`.
fn newton_fwd<M: PlanarMap + ?Sized>(map: &M, b: &Bidisc, fixed: Complex64, x0: Complex64) -> Option<SliceRoot> {
    let (c, r) = (b.c1, b.r1);
    let mut x = x0;
    for _ in 0..NEWTON_STEPS {
        let z = Point2::new(x, b.c2);
        let g = map.eval(z)?.x - fixed;
        let dg = map.jacobian_at(z)?.m[0][0];
        if dg.norm() == 0.0 {
            return None;
        }
        let step = g / dg;
        x -= step;
        if !x.is_finite() || (x - c).norm() > 4.0 * r {
            return None;
        }
        if step.norm() <= 1e-14 * (r + x.norm()) {
            let image = Point2::new(x, b.c2);
            let w = map.eval(image)?;
            let derivative = map.jacobian_at(image)?.inverse()?.m[1][1];
            return Some(SliceRoot { t: w.y, image, derivative });
        }
    }
    None
}

/// Member roots on the slice through `fixed`, from a `seeds x seeds` grid.
pub fn slice_roots<M: PlanarMap + ?Sized>(
    map: &M,
    b: &Bidisc,
    dir: Direction,
    fixed: Complex64,
    seeds: usize,
) -> Vec<SliceRoot> {
    // Seeds live in the free disc for `Bwd` and in `D1` for `Fwd`.
    let (c, r) = match dir {
        Direction::Bwd => dir.free_disc(b),
        Direction::Fwd => (b.c1, b.r1),
    };
    let (_, r_free) = dir.free_disc(b);
    let n = seeds.max(2);
    let found: Vec<SliceRoot> = (0..n * n)
        .into_par_iter()
        .filter_map(|k| {
            let (i, j) = (k % n, k / n);
            let s = |i: usize| -1.0 + 2.0 * (i as f64 + 0.5) / n as f64;
            let t0 = c + Complex64::new(s(i), s(j)) * r;
            if (t0 - c).norm() > r {
                return None;
            }
            let root = newton(map, b, dir, fixed, t0)?;
            let z = dir.point(fixed, root.t);
            (b.gauge(z) <= 1.0 && b.gauge(root.image) <= 1.0).then_some(root)
        })
        .collect();
    let mut roots: Vec<SliceRoot> = Vec::new();
    for f in found {
        if roots.iter().all(|g| (g.t - f.t).norm() > 1e-9 * r_free) {
            roots.push(f);
        }
    }
    roots.sort_by(|a, b| a.t.re.total_cmp(&b.t.re).then(a.t.im.total_cmp(&b.t.im)));
    roots
}

/// A raster window around one root; `label` is the component holding the root.
#[derive(Clone, Debug)]
pub struct ZoomWindow {
    pub root: SliceRoot,
    pub raster: SliceRaster,
    pub label: u32,
}

impl ZoomWindow {
    /// Centroid of the root's component.
    pub fn centroid(&self) -> Complex64 {
        self.raster.centroid(self.label)
    }

    /// Centers of the pixels of the root's component.
    pub fn member_pixels(&self) -> Vec<Complex64> {
        let n = self.raster.resolution;
        let mut out = Vec::new();
        for j in 0..n {
            for i in 0..n {
                if self.raster.labels.at(i, j) == Some(self.label) {
                    out.push(self.raster.pixel_center(i, j));
                }
            }
        }
        out
    }
}

fn root_label(raster: &SliceRaster, t: Complex64) -> Option<u32> {
    let (i, j) = raster.pixel_of(t)?;
    if let Some(l) = raster.labels.at(i, j) {
        return Some(l);
    }
    // A root near a pixel corner may sit in an unset pixel of its own component.
    let n = raster.resolution as i64;
    for dj in -1..=1i64 {
        for di in -1..=1i64 {
            let (a, c) = (i as i64 + di, j as i64 + dj);
            if a >= 0 && c >= 0 && a < n && c < n {
                if let Some(l) = raster.labels.at(a as usize, c as usize) {
                    return Some(l);
                }
            }
        }
    }
    None
}

/// Rasters a window around `root`, growing it until the root's component
/// stays off the window border.
pub fn zoom_window<M: PlanarMap + ?Sized>(
    map: &M,
    b: &Bidisc,
    dir: Direction,
    fixed: Complex64,
    root: SliceRoot,
    resolution: usize,
) -> Option<ZoomWindow> {
    let (_, r_free) = dir.free_disc(b);
    let (_, r_image) = match dir {
        Direction::Bwd => (b.c1, b.r1),
        Direction::Fwd => (b.c2, b.r2),
    };
    let mut half = (WINDOW_SCALE * r_image / root.derivative.norm()).min(r_free);
    for _ in 0..=MAX_DOUBLINGS {
        let raster = raster_window(map, b, dir, fixed, root.t, half, resolution, &|_| true);
        let label = root_label(&raster, root.t);
        if let Some(label) = label {
            let (x0, y0, x1, y1) = raster.labels.components[label as usize].bbox;
            let last = raster.resolution - 1;
            let inside = x0 > 0 && y0 > 0 && x1 < last && y1 < last;
            if inside || half >= r_free {
                return Some(ZoomWindow { root, raster, label });
            }
        } else if half >= r_free {
            return None;
        }
        half = (2.0 * half).min(r_free);
    }
    None
}

/// One window per component of the slice; `None` when some root could not
/// be rastered.
pub fn zoomed_components<M: PlanarMap + ?Sized>(
    map: &M,
    b: &Bidisc,
    dir: Direction,
    fixed: Complex64,
    resolution: usize,
    seeds: usize,
) -> Option<Vec<ZoomWindow>> {
    let roots = slice_roots(map, b, dir, fixed, seeds);
    let mut windows: Vec<ZoomWindow> = Vec::new();
    for root in roots {
        if windows.iter().any(|w| w.raster.label_of(root.t) == Some(w.label)) {
            continue;
        }
        let w = zoom_window(map, b, dir, fixed, root, resolution)?;
        // An earlier root inside this window's component means one component.
        if windows.iter().any(|o| w.raster.label_of(o.root.t) == Some(w.label)) {
            continue;
        }
        windows.push(w);
    }
    Some(windows)
}

/// Component counts from zoomed windows on each slice; an unrasterable
/// slice counts as unresolved.
pub fn component_count_zoomed<M: PlanarMap + ?Sized>(
    map: &M,
    b: &Bidisc,
    dir: Direction,
    resolution: usize,
    seeds: usize,
    slices: &[Complex64],
) -> ComponentReport {
    let counts: Vec<Option<usize>> =
        slices.iter().map(|&f| zoomed_components(map, b, dir, f, resolution, seeds).map(|w| w.len())).collect();
    let first = counts.first().copied().flatten();
    let unresolved: Vec<usize> =
        counts.iter().enumerate().filter(|(_, c)| c.is_none() || **c != first).map(|(k, _)| k).collect();
    ComponentReport {
        direction: dir,
        resolution,
        count: if unresolved.is_empty() { first } else { None },
        slices: slices.iter().zip(&counts).map(|(&fixed, c)| SliceCount { fixed, count: c.unwrap_or(0) }).collect(),
        unresolved,
    }
}
