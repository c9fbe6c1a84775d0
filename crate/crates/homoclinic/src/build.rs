//! A box and iterate count on which `F^{kN}` is a horseshoe of degree `d`.
//!
//! In the eigenvector chart around the saddle, `D_u` is the `u`-axis disc
//! and `D_s` the `v`-axis disc. The intersections of `F^{kn}(D_u)` with
//! `D_s` are the roots of `π1 G_n(u, 0) = 0` whose image has `|v| <= 1`,
//! where `G_n` is the chart conjugate of `F^{kn}`. The smallest `n` giving at
//! least `d` of them is taken and `D_s` is shrunk until exactly `d` remain.
//! Then `D_u` is shrunk by `|λ|^m` and the iterate count raised to
//! `N = n + m` until the chart map passes the sampled boundary, component and
//! cone checks.

use crate::chart::{ChartMap, EmbeddedBidiscChart};
use crate::error::HomoclinicError;
use crate::saddle::SaddleData;
use crate::search::HomoclinicPoint;
use henon_core::{check_quasi_henon_like_sampled, Bidisc, Complex64, HenonMap, Orientation, PlanarMap, Verdict};
use horseshoe_cert::{default_slices, slice_roots, zoomed_components, Certificate, ConeField, Direction, Method};
use serde::Serialize;
use std::time::Instant;

pub const MAX_N: u32 = 24;
pub const MAX_M: u32 = 6;
pub const MAX_HALVINGS: usize = 8;
/// Newton seeds per side of the grid used to find slice roots.
pub const ROOT_SEEDS: usize = 64;
/// Resolution of each zoomed component window.
pub const ZOOM_RESOLUTION: usize = 96;
const BOUNDARY_CIRCLE: usize = 256;
const BOUNDARY_DISC: usize = 16;
/// Pixels per component used for the cone check.
const CONE_SAMPLES: usize = 400;

/// Outcome of the checks on one chart.
#[derive(Clone, Debug, Serialize)]
pub struct ChartCheck {
    pub r_u: f64,
    pub r_s: f64,
    pub n_total: u32,
    /// `min gauge - 1` over images of the boundary samples.
    pub boundary_margin: f64,
    /// Components per default slice, `F^{-1}(B) ∩ B` then `F(B) ∩ B`.
    pub bwd_counts: Vec<usize>,
    pub fwd_counts: Vec<usize>,
    pub cone_margin: f64,
    pub samples: u64,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Horseshoe {
    pub d: usize,
    /// Iterate count with `d` intersections before `D_u` is shrunk.
    pub n: u32,
    pub m: u32,
    /// `N = n + m`; the horseshoe map is `F^{kN}`.
    #[serde(rename = "N")]
    pub big_n: u32,
    pub chart: EmbeddedBidiscChart,
    pub certificate: Certificate,
    pub check: ChartCheck,
    /// Every chart tried, in order.
    pub attempts: Vec<ChartCheck>,
    #[serde(skip)]
    pub map: ChartMap,
}

impl Horseshoe {
    pub fn unit_bidisc() -> Bidisc {
        Bidisc::centered(1.0)
    }
}

fn origin() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

/// `|v|` of the intersections of `F^{kn}(D_u)` with `D_s`, increasing.
pub fn intersection_heights(map: &HenonMap, saddle: &SaddleData, chart: &EmbeddedBidiscChart, n: u32) -> Vec<f64> {
    let Some(g) = ChartMap::new(map.clone(), *chart, saddle.period * n, map.degree()) else {
        return Vec::new();
    };
    let mut v: Vec<f64> = slice_roots(&g, &Horseshoe::unit_bidisc(), Direction::Bwd, origin(), ROOT_SEEDS)
        .iter()
        .map(|r| r.image.y.norm())
        .collect();
    v.sort_by(f64::total_cmp);
    v
}

/// Boundary, component and cone checks for `g` on the unit bidisc.
pub fn check_chart(g: &ChartMap, d: usize) -> ChartCheck {
    let b = Horseshoe::unit_bidisc();
    let sampled = check_quasi_henon_like_sampled(g, &b, Orientation::Horizontal, BOUNDARY_CIRCLE, BOUNDARY_DISC);
    let mut out = ChartCheck {
        r_u: g.chart.r_u,
        r_s: g.chart.r_s,
        n_total: g.iterates,
        boundary_margin: sampled.margin,
        bwd_counts: Vec::new(),
        fwd_counts: Vec::new(),
        cone_margin: f64::NAN,
        samples: sampled.samples as u64,
        passed: false,
    };
    if sampled.margin <= 0.0 {
        return out;
    }
    let cone = ConeField::unit();
    let mut cone_margin = f64::INFINITY;
    for dir in [Direction::Bwd, Direction::Fwd] {
        for fixed in default_slices(&b, dir) {
            let windows = zoomed_components(g, &b, dir, fixed, ZOOM_RESOLUTION, ROOT_SEEDS).unwrap_or_default();
            match dir {
                Direction::Bwd => out.bwd_counts.push(windows.len()),
                Direction::Fwd => out.fwd_counts.push(windows.len()),
            }
            for w in &windows {
                let pix = w.member_pixels();
                let stride = (pix.len() / CONE_SAMPLES).max(1);
                for &t in pix.iter().step_by(stride) {
                    let z = dir.point(fixed, t);
                    let m = match dir {
                        Direction::Bwd => g.jacobian_at(z).map(|j| cone.horizontal_margin(&j)),
                        Direction::Fwd => g
                            .eval_inverse(z)
                            .and_then(|w| g.jacobian_at(w))
                            .and_then(|j| j.inverse())
                            .map(|j| cone.vertical_margin(&j)),
                    };
                    cone_margin = cone_margin.min(m.unwrap_or(f64::NEG_INFINITY));
                    out.samples += 1;
                }
            }
        }
    }
    out.cone_margin = cone_margin;
    let counts_ok = out.bwd_counts.iter().chain(&out.fwd_counts).all(|&c| c == d);
    out.passed = counts_ok && cone_margin > 0.0;
    out
}

/// Horseshoe of degree `d` for an iterate of `map` near the saddle, seeded by
/// the transverse homoclinic point `q`.
pub fn build_horseshoe(
    map: &HenonMap,
    saddle: &SaddleData,
    q: &HomoclinicPoint,
    d: usize,
) -> Result<Horseshoe, HomoclinicError> {
    if d < 2 {
        return Err(HomoclinicError::Degree(d));
    }
    let start = Instant::now();
    // D_s must reach q; D_u starts at unit size in the manifold parameter.
    let mut r_s = (2.0 * q.t_s.norm()).min(q.stable.valid_radius);
    let mut r_u = q.unstable.valid_radius.min(1.0);
    let mut attempts = Vec::new();
    for halving in 0..=MAX_HALVINGS {
        if halving > 0 {
            r_u *= 0.5;
            r_s *= 0.5;
        }
        let base = EmbeddedBidiscChart::at_saddle(saddle, r_u, r_s);
        let Some((n, heights)) = (1..=MAX_N).find_map(|n| {
            let h = intersection_heights(map, saddle, &base, n);
            (h.len() >= d).then_some((n, h))
        }) else {
            continue;
        };
        let mut trimmed = r_s;
        if heights.len() > d {
            let (keep, drop) = (heights[d - 1], heights[d]);
            if drop < keep * (1.0 + 1e-6) {
                return Err(HomoclinicError::Tie { d, next: d + 1 });
            }
            trimmed *= (keep * drop).sqrt();
        }
        for m in 0..=MAX_M {
            let rho_u = r_u * saddle.lambda.norm().powi(-(m as i32));
            let chart = base.with_radii(rho_u, trimmed);
            let big_n = n + m;
            let Some(g) = ChartMap::new(map.clone(), chart, saddle.period * big_n, d) else { continue };
            let check = check_chart(&g, d);
            attempts.push(check.clone());
            if check.passed {
                let certificate = Certificate {
                    method: Method::ConeSweep,
                    map: format!("({map}) iterated {} times in chart", saddle.period * big_n),
                    r: 1.0,
                    alpha: 0.0,
                    gamma: 1.0,
                    margin: check.boundary_margin.min(check.cone_margin),
                    verdict: Verdict::Yes,
                    boxes: check.samples,
                    depth: big_n,
                    wall_ms: start.elapsed().as_millis() as u64,
                    undecided: Vec::new(),
                };
                return Ok(Horseshoe { d, n, m, big_n, chart, certificate, check, attempts, map: g });
            }
        }
    }
    let diagnostics = attempts
        .iter()
        .map(|a| {
            format!(
                "r_u={:.3e} r_s={:.3e} kN={} boundary={:.3e} bwd={:?} fwd={:?} cone={:.3e}",
                a.r_u, a.r_s, a.n_total, a.boundary_margin, a.bwd_counts, a.fwd_counts, a.cone_margin
            )
        })
        .collect::<Vec<_>>()
        .join("; ");
    if attempts.is_empty() {
        return Err(HomoclinicError::NoIntersections { d, n_max: MAX_N as usize });
    }
    Err(HomoclinicError::ChecksFailed { halvings: MAX_HALVINGS, diagnostics })
}

