//! Raster oracle for the number of components of `F^{-1}(B) ∩ B` and `F(B) ∩ B`.
//!
//! This is a floating-point check, not a proof: pixels are classified at
//! their centers and joined by 4-adjacency.

use crate::certificate::{Certificate, Method};
use henon_core::{Bidisc, Complex64, HenonMap, PlanarMap, Point2, Verdict};
use invariant_sets::{label_components, Labels};
use serde::Serialize;
use std::time::Instant;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// `F(B) ∩ B = {z in B : F^{-1}(z) in B}`, sliced by vertical lines `V_x`.
    Fwd,
    /// `F^{-1}(B) ∩ B = {z in B : F(z) in B}`, sliced by horizontal lines `H_y`.
    Bwd,
}

impl Direction {
    /// The point of the bidisc with fixed coordinate `fixed` and free `t`.
    pub fn point(self, fixed: Complex64, t: Complex64) -> Point2 {
        match self {
            Direction::Fwd => Point2::new(fixed, t),
            Direction::Bwd => Point2::new(t, fixed),
        }
    }

    /// (center, radius) of the disc the free coordinate ranges over.
    pub fn free_disc(self, b: &Bidisc) -> (Complex64, f64) {
        match self {
            Direction::Fwd => (b.c2, b.r2),
            Direction::Bwd => (b.c1, b.r1),
        }
    }

    pub fn fixed_disc(self, b: &Bidisc) -> (Complex64, f64) {
        match self {
            Direction::Fwd => (b.c1, b.r1),
            Direction::Bwd => (b.c2, b.r2),
        }
    }
}

pub fn member<M: PlanarMap + ?Sized>(map: &M, b: &Bidisc, dir: Direction, z: Point2) -> bool {
    if b.gauge(z) > 1.0 {
        return false;
    }
    let w = match dir {
        Direction::Fwd => map.eval_inverse(z),
        Direction::Bwd => map.eval(z),
    };
    w.is_some_and(|w| b.gauge(w) <= 1.0)
}

/// Square raster over an axis-aligned window of the free coordinate.
#[derive(Clone, Debug)]
pub struct SliceRaster {
    pub direction: Direction,
    pub fixed: Complex64,
    /// Top-left corner (min re, max im) of the window.
    pub corner: Complex64,
    pub step: f64,
    pub resolution: usize,
    pub labels: Labels,
}

impl SliceRaster {
    pub fn pixel_center(&self, i: usize, j: usize) -> Complex64 {
        self.corner + Complex64::new((i as f64 + 0.5) * self.step, -(j as f64 + 0.5) * self.step)
    }

    /// Pixel containing the free coordinate `t`, if inside the window.
    pub fn pixel_of(&self, t: Complex64) -> Option<(usize, usize)> {
        let u = (t.re - self.corner.re) / self.step;
        let v = (self.corner.im - t.im) / self.step;
        let n = self.resolution as f64;
        (u >= 0.0 && v >= 0.0 && u < n && v < n).then(|| (u as usize, v as usize))
    }

    pub fn label_of(&self, t: Complex64) -> Option<u32> {
        self.pixel_of(t).and_then(|(i, j)| self.labels.at(i, j))
    }

    pub fn count(&self) -> usize {
        self.labels.count()
    }

    /// Centroid of component `l` in the free coordinate.
    pub fn centroid(&self, l: u32) -> Complex64 {
        let (ci, cj) = self.labels.components[l as usize].centroid;
        self.corner + Complex64::new((ci + 0.5) * self.step, -(cj + 0.5) * self.step)
    }
}

/// Rasters `{t : point(fixed, t) in set}` over the window `center ± half`.
#[allow(clippy::too_many_arguments)]
pub fn raster_window<M: PlanarMap + ?Sized>(
    map: &M,
    b: &Bidisc,
    dir: Direction,
    fixed: Complex64,
    center: Complex64,
    half: f64,
    resolution: usize,
    extra: &(dyn Fn(Point2) -> bool + Sync),
) -> SliceRaster {
    let n = resolution.max(2);
    let step = 2.0 * half / n as f64;
    let corner = center + Complex64::new(-half, half);
    let mask: Vec<bool> = {
        use rayon::prelude::*;
        (0..n * n)
            .into_par_iter()
            .map(|k| {
                let (i, j) = (k % n, k / n);
                let t = corner + Complex64::new((i as f64 + 0.5) * step, -(j as f64 + 0.5) * step);
                let z = dir.point(fixed, t);
                member(map, b, dir, z) && extra(z)
            })
            .collect()
    };
    let labels = label_components(&mask, n, n);
    SliceRaster { direction: dir, fixed, corner, step, resolution: n, labels }
}

/// Raster of one full slice of the set.
pub fn slice_raster<M: PlanarMap + ?Sized>(
    map: &M,
    b: &Bidisc,
    dir: Direction,
    fixed: Complex64,
    resolution: usize,
) -> SliceRaster {
    let (c, r) = dir.free_disc(b);
    raster_window(map, b, dir, fixed, c, r, resolution, &|_| true)
}

/// Center slice plus four slices at 0.6 of the radius.
pub fn default_slices(b: &Bidisc, dir: Direction) -> Vec<Complex64> {
    let (c, r) = dir.fixed_disc(b);
    let s = 0.6 * r;
    vec![
        c,
        c + Complex64::new(s, 0.0),
        c + Complex64::new(-s, 0.0),
        c + Complex64::new(0.0, s),
        c + Complex64::new(0.0, -s),
    ]
}

#[derive(Clone, Debug, Serialize)]
pub struct SliceCount {
    pub fixed: Complex64,
    pub count: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComponentReport {
    pub direction: Direction,
    pub resolution: usize,
    pub slices: Vec<SliceCount>,
    /// Common count, or `None` when slices disagree.
    pub count: Option<usize>,
    /// Indices of slices whose count differs from the first slice.
    pub unresolved: Vec<usize>,
}

pub fn component_count_on<M: PlanarMap + ?Sized>(
    map: &M,
    b: &Bidisc,
    dir: Direction,
    resolution: usize,
    slices: &[Complex64],
) -> ComponentReport {
    let counts: Vec<SliceCount> = slices
        .iter()
        .map(|&f| SliceCount { fixed: f, count: slice_raster(map, b, dir, f, resolution).count() })
        .collect();
    let first = counts.first().map(|s| s.count);
    let unresolved: Vec<usize> =
        counts.iter().enumerate().filter(|(_, s)| Some(s.count) != first).map(|(k, _)| k).collect();
    ComponentReport {
        direction: dir,
        resolution,
        count: if unresolved.is_empty() { first } else { None },
        slices: counts,
        unresolved,
    }
}

pub fn component_count<M: PlanarMap + ?Sized>(map: &M, b: &Bidisc, dir: Direction, resolution: usize) -> ComponentReport {
    component_count_on(map, b, dir, resolution, &default_slices(b, dir))
}

/// Component counts in both directions as a certificate: yes when both
/// are `d` on every default slice, no when both resolve and one differs,
/// unknown otherwise. The margin carries only the sign of the verdict.
pub fn certify_components(map: &HenonMap, b: &Bidisc, resolution: usize) -> (Certificate, Vec<ComponentReport>) {
    let start = Instant::now();
    let reports: Vec<ComponentReport> =
        [Direction::Bwd, Direction::Fwd].into_iter().map(|dir| component_count(map, b, dir, resolution)).collect();
    let d = map.degree();
    let verdict = if reports.iter().all(|r| r.count == Some(d)) {
        Verdict::Yes
    } else if reports.iter().all(|r| r.count.is_some()) {
        Verdict::No
    } else {
        Verdict::Unknown
    };
    let margin = match verdict {
        Verdict::Yes => 1.0,
        Verdict::No => -1.0,
        Verdict::Unknown => 0.0,
    };
    let cert = Certificate {
        method: Method::ComponentCount,
        map: map.to_string(),
        r: b.r1.max(b.r2),
        alpha: 0.0,
        gamma: 0.0,
        margin,
        verdict,
        boxes: reports.iter().map(|r| (r.slices.len() * resolution * resolution) as u64).sum(),
        depth: 0,
        wall_ms: start.elapsed().as_millis() as u64,
        undecided: Vec::new(),
    };
    (cert, reports)
}

#[cfg(test)]
mod tests {
    use super::*;
    use henon_core::HenonMap;

    #[test]
    fn pixel_lookup_round_trips() {
        let f = HenonMap::quadratic(1.0, -10.0);
        let r = slice_raster(&f, &Bidisc::centered(4.4), Direction::Bwd, Complex64::new(0.0, 0.0), 64);
        for (i, j) in [(0, 0), (10, 40), (63, 63)] {
            assert_eq!(r.pixel_of(r.pixel_center(i, j)), Some((i, j)));
        }
    }
}
