//! Diameters of the disc fibers of `H_y ∩ ⋂_{0<=m<=n} F^{-m}(B)`.
//!
//! Each component at depth `n - 1` is re-rastered on a zoomed window and the
//! depth-`n` components inside it are measured, so the resolution follows
//! the shrinking fibers.

use crate::components::{default_slices, Direction};
use henon_core::{Bidisc, Complex64, PlanarMap, Point2};
use invariant_sets::label_components;
use serde::Serialize;

const DIRECTIONS: usize = 16;

/// Largest `m <= n` with `F^k(z)` in the closed bidisc for all `k <= m`,
/// or `None` if `z` itself is outside.
fn survival<M: PlanarMap + ?Sized>(map: &M, b: &Bidisc, z: Point2, n: u32) -> Option<u32> {
    if b.gauge(z) > 1.0 {
        return None;
    }
    let mut w = z;
    for m in 1..=n {
        w = match map.eval(w) {
            Some(v) if b.gauge(v) <= 1.0 => v,
            _ => return Some(m - 1),
        };
    }
    Some(n)
}

#[derive(Clone, Debug)]
struct Region {
    center: Complex64,
    half: f64,
}

struct Child {
    region: Region,
    diameter: f64,
    /// Pixel center of the component closest to its centroid.
    sample: Complex64,
}

/// Depth-`n` components inside the largest depth-`(n-1)` component of a window.
/// `Err` when a child touches the window edge or none is found.
fn children<M: PlanarMap + ?Sized>(
    map: &M,
    b: &Bidisc,
    y: Complex64,
    win: &Region,
    n: u32,
    res: usize,
    whole_parent: bool,
) -> Result<Vec<Child>, String> {
    let step = 2.0 * win.half / res as f64;
    let corner = win.center + Complex64::new(-win.half, win.half);
    let at = |i: usize, j: usize| corner + Complex64::new((i as f64 + 0.5) * step, -(j as f64 + 0.5) * step);
    let surv: Vec<Option<u32>> = {
        use rayon::prelude::*;
        (0..res * res).into_par_iter().map(|k| survival(map, b, Direction::Bwd.point(y, at(k % res, k / res)), n)).collect()
    };
    let parent_mask: Vec<bool> = surv.iter().map(|s| s.is_some_and(|m| m + 1 >= n)).collect();
    let child_mask: Vec<bool> = surv.iter().map(|s| *s == Some(n)).collect();
    let parents = label_components(&parent_mask, res, res);
    let parent = if whole_parent {
        None
    } else {
        let big = (0..parents.count()).max_by_key(|&l| parents.components[l].pixels);
        Some(big.ok_or_else(|| format!("parent component lost at depth {n}"))? as u32)
    };
    let kids = label_components(&child_mask, res, res);
    let mut out = Vec::new();
    for (l, comp) in kids.components.iter().enumerate() {
        let pixels: Vec<(usize, usize)> = (0..res * res)
            .filter(|&k| kids.labels[k] == Some(l as u32))
            .map(|k| (k % res, k / res))
            .collect();
        if let Some(p) = parent {
            // Children of other parents may poke into the padded window.
            if pixels.iter().any(|&(i, j)| parents.at(i, j) != Some(p)) {
                return Err(format!("depth {n}: child escapes its parent component"));
            }
        }
        let (i0, j0, i1, j1) = comp.bbox;
        if !whole_parent && (i0 == 0 || j0 == 0 || i1 + 1 == res || j1 + 1 == res) {
            return Err(format!("depth {n}: component touches the zoom window"));
        }
        let pts: Vec<Complex64> = pixels.iter().map(|&(i, j)| at(i, j)).collect();
        let diameter = (0..DIRECTIONS)
            .map(|k| {
                let th = std::f64::consts::PI * k as f64 / DIRECTIONS as f64;
                let e = Complex64::new(th.cos(), th.sin());
                let proj = pts.iter().map(|p| p.re * e.re + p.im * e.im);
                let (lo, hi) = proj.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
                hi - lo + step
            })
            .fold(0.0, f64::max);
        let (ci, cj) = comp.centroid;
        let sample = pts
            .iter()
            .zip(&pixels)
            .min_by(|a, b| {
                let da = (a.1 .0 as f64 - ci).powi(2) + (a.1 .1 as f64 - cj).powi(2);
                let db = (b.1 .0 as f64 - ci).powi(2) + (b.1 .1 as f64 - cj).powi(2);
                da.total_cmp(&db)
            })
            .map(|(p, _)| *p)
            .unwrap_or(win.center);
        let lo = at(i0, j1);
        let hi = at(i1, j0);
        let center = 0.5 * (lo + hi);
        let half = 0.5 * (hi.re - lo.re).max(hi.im - lo.im) + 3.0 * step;
        out.push(Child { region: Region { center, half }, diameter, sample });
    }
    if out.is_empty() && parent.is_some() {
        return Err(format!("depth {n}: no component inside a parent"));
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct DecayReport {
    /// `diameters[n-1]`: largest fiber diameter at depth `n`.
    pub diameters: Vec<f64>,
    /// `counts[s][n-1]`: number of fibers at depth `n` on slice `s`.
    pub counts: Vec<Vec<usize>>,
    pub slices: Vec<Complex64>,
    /// Depth at which resolution failed, with the reason.
    pub truncated: Option<(u32, String)>,
}

impl DecayReport {
    pub fn ratios(&self) -> Vec<f64> {
        self.diameters.windows(2).map(|w| w[1] / w[0]).collect()
    }

    /// Largest measured ratio `diam(n+1)/diam(n)`.
    pub fn max_ratio(&self) -> Option<f64> {
        self.ratios().into_iter().reduce(f64::max)
    }
}

/// Measures fibers for `n = 1..=depth` on the given horizontal slices.
/// `resolution` is used for depth 1 and `zoom` for every zoomed window.
pub fn fiber_diameter_decay_on<M: PlanarMap + ?Sized>(
    map: &M,
    b: &Bidisc,
    depth: u32,
    slices: &[Complex64],
    resolution: usize,
    zoom: usize,
) -> DecayReport {
    let mut diameters = vec![0.0f64; depth as usize];
    let mut counts = vec![Vec::new(); slices.len()];
    let mut reached = depth;
    let mut reason = None;
    for (s, &y) in slices.iter().enumerate() {
        let first = Region { center: b.c1, half: b.r1 };
        let mut level = match children(map, b, y, &first, 1, resolution, true) {
            Ok(v) => v,
            Err(e) => {
                reached = 0;
                reason = Some(e);
                break;
            }
        };
        for n in 1..=depth.min(reached) {
            if n > 1 {
                let mut next = Vec::new();
                let mut failed = None;
                for p in &level {
                    match children(map, b, y, &p.region, n, zoom, false) {
                        Ok(v) => next.extend(v),
                        Err(e) => {
                            failed = Some(e);
                            break;
                        }
                    }
                }
                if let Some(e) = failed {
                    reached = n - 1;
                    reason = Some(e);
                    break;
                }
                level = next;
            }
            let d = level.iter().map(|c| c.diameter).fold(0.0, f64::max);
            diameters[n as usize - 1] = diameters[n as usize - 1].max(d);
            counts[s].push(level.len());
        }
    }
    diameters.truncate(reached as usize);
    for c in &mut counts {
        c.truncate(reached as usize);
    }
    DecayReport { diameters, counts, slices: slices.to_vec(), truncated: reason.map(|r| (reached + 1, r)) }
}

/// One point (pixel center) of each fiber of `H_y ∩ ⋂_{0<=m<=depth} F^{-m}(B)`.
pub fn fiber_samples<M: PlanarMap + ?Sized>(
    map: &M,
    b: &Bidisc,
    y: Complex64,
    depth: u32,
    resolution: usize,
    zoom: usize,
) -> Result<Vec<Complex64>, String> {
    let first = Region { center: b.c1, half: b.r1 };
    let mut level = children(map, b, y, &first, 1, resolution, true)?;
    for n in 2..=depth {
        let mut next = Vec::new();
        for p in &level {
            next.extend(children(map, b, y, &p.region, n, zoom, false)?);
        }
        level = next;
    }
    Ok(level.iter().map(|c| c.sample).collect())
}

pub fn fiber_diameter_decay<M: PlanarMap + ?Sized>(map: &M, b: &Bidisc, depth: u32) -> DecayReport {
    fiber_diameter_decay_on(map, b, depth, &default_slices(b, Direction::Bwd), 256, 64)
}
