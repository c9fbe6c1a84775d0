//! Boundary disjointness and degree of Henon-like maps on round bidiscs.
//!
//! For `F(x, y) = (p(x) - a y, x)` on `D1 x D2` the minimum over the free
//! variable is available in closed form, so every condition reduces to a
//! one-variable separation function on a circle or a disc. Those are bounded
//! below on adaptive arc / cell covers with ball enclosures of `p`.

use crate::bidisc::{Bidisc, Disc};
use crate::map::{HenonMap, PlanarMap};
use crate::point::Point2;
use crate::verdict::Verdict;
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;
use thiserror::Error;

/// Initial number of arcs covering a boundary circle.
pub const BOUNDARY_SAMPLES: usize = 4096;
const MAX_REFINE: u32 = 12;
const DISC_GRID: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    /// `F(dB_V)` and `F^{-1}(dB_H)` avoid the closed bidisc (x expands).
    Horizontal,
    /// `F^{-1}(dB_V)` and `F(dB_H)` avoid the closed bidisc (y expands).
    Vertical,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BoundaryCheck {
    pub verdict: Verdict,
    /// Lower bound on the separation when `Yes`; the witness value when `No`.
    pub margin: f64,
    /// Pieces evaluated.
    pub pieces: usize,
    /// Winding degree through the central slice, once the boundary is clear.
    pub degree: Option<i64>,
}

/// A piece of a circle or a disc, enclosed by a ball `|t - m| <= rho`.
#[derive(Clone, Copy)]
struct Piece {
    m: Complex64,
    rho: f64,
    /// A point of the piece itself, used as a witness.
    sample: Complex64,
    kind: PieceKind,
    level: u32,
}

#[derive(Clone, Copy)]
enum PieceKind {
    Arc { t0: f64, t1: f64 },
    Cell { half: f64 },
}

fn arc_piece(d: &Disc, t0: f64, t1: f64, level: u32) -> Piece {
    let tm = 0.5 * (t0 + t1);
    let m = d.boundary_point(tm);
    // |e^{it} - e^{itm}| <= |t - tm|
    let rho = (d.r * 0.5 * (t1 - t0)).next_up() * (1.0 + 1e-12);
    Piece { m, rho, sample: m, kind: PieceKind::Arc { t0, t1 }, level }
}

fn cell_piece(d: &Disc, m: Complex64, half: f64, level: u32) -> Option<Piece> {
    let rho = half * std::f64::consts::SQRT_2 * (1.0 + 1e-12);
    let off = m - d.c;
    if off.norm() - rho > d.r {
        return None;
    }
    let sample = if off.norm() <= d.r { m } else { d.c + off * (d.r / off.norm()) };
    Some(Piece { m, rho, sample, kind: PieceKind::Cell { half }, level })
}

fn split(d: &Disc, p: &Piece) -> Vec<Piece> {
    match p.kind {
        PieceKind::Arc { t0, t1 } => {
            let tm = 0.5 * (t0 + t1);
            vec![arc_piece(d, t0, tm, p.level + 1), arc_piece(d, tm, t1, p.level + 1)]
        }
        PieceKind::Cell { half } => {
            let h = 0.5 * half;
            let mut out = Vec::with_capacity(4);
            for (sx, sy) in [(-1.0, -1.0), (1.0, -1.0), (-1.0, 1.0), (1.0, 1.0)] {
                if let Some(c) = cell_piece(d, p.m + Complex64::new(sx * h, sy * h), h, p.level + 1) {
                    out.push(c);
                }
            }
            out
        }
    }
}

fn circle_cover(d: &Disc) -> Vec<Piece> {
    let n = BOUNDARY_SAMPLES;
    (0..n)
        .map(|k| arc_piece(d, 2.0 * PI * k as f64 / n as f64, 2.0 * PI * (k + 1) as f64 / n as f64, 0))
        .collect()
}

fn disc_cover(d: &Disc) -> Vec<Piece> {
    let n = DISC_GRID;
    let half = d.r / n as f64;
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let m = d.c + Complex64::new(-d.r + (2 * i + 1) as f64 * half, -d.r + (2 * j + 1) as f64 * half);
            if let Some(p) = cell_piece(d, m, half, 0) {
                out.push(p);
            }
        }
    }
    out
}

/// Minimizes a separation over a cover. `lower(m, rho)` must bound the
/// separation from below on the ball; `value(t)` evaluates it at a point.
fn minimize<L, V>(d: &Disc, start: Vec<Piece>, lower: L, value: V) -> BoundaryCheck
where
    L: Fn(Complex64, f64) -> f64,
    V: Fn(Complex64) -> f64,
{
    let mut stack = start;
    let mut pieces = 0usize;
    let mut margin = f64::INFINITY;
    let mut undecided = false;
    while let Some(p) = stack.pop() {
        pieces += 1;
        // Separation zero up to roundoff means the image touches the closed bidisc.
        let v = value(p.sample);
        if v <= 1e-12 * (1.0 + d.r) {
            return BoundaryCheck { verdict: Verdict::No, margin: v, pieces, degree: None };
        }
        let lb = lower(p.m, p.rho);
        if lb > 0.0 {
            margin = margin.min(lb);
        } else if p.level < MAX_REFINE {
            stack.extend(split(d, &p));
        } else {
            undecided = true;
            margin = margin.min(lb);
        }
    }
    let verdict = if undecided { Verdict::Unknown } else { Verdict::Yes };
    BoundaryCheck { verdict, margin, pieces, degree: None }
}

fn combine(a: BoundaryCheck, b: BoundaryCheck) -> BoundaryCheck {
    let verdict = a.verdict.meet(b.verdict);
    let margin = match verdict {
        Verdict::No => {
            if a.verdict == Verdict::No {
                a.margin
            } else {
                b.margin
            }
        }
        _ => a.margin.min(b.margin),
    };
    BoundaryCheck { verdict, margin, pieces: a.pieces + b.pieces, degree: None }
}

fn safe(x: f64) -> f64 {
    x - 1e-13 * (1.0 + x.abs())
}

/// Lower bound of `||w| - r|` from an enclosure `[lo, hi]` of `|w|`.
fn abs_gap(lo: f64, hi: f64, r: f64) -> f64 {
    if lo > r {
        lo - r
    } else if hi < r {
        r - hi
    } else {
        0.0
    }
}

/// Checks the boundary conditions of a (quasi-)Henon-like map on `B`.
///
/// Horizontal: `F(dB_V)` and `F^{-1}(dB_H)` miss the closed bidisc.
/// Vertical: `F^{-1}(dB_V)` and `F(dB_H)` miss it. The margin is the
/// smallest separation, the `epsilon` of the perturbation statement.
/// A clear boundary with slice degree other than `d` (for instance a bidisc
/// that `F` maps completely off itself) is reported as `No`.
pub fn check_quasi_henon_like(map: &HenonMap, b: &Bidisc, orientation: Orientation) -> BoundaryCheck {
    let mut chk = boundary_separation(map, b, orientation);
    if chk.verdict == Verdict::Yes {
        let deg = match orientation {
            Orientation::Horizontal => boundary_degree(map, b, b.c2),
            Orientation::Vertical => {
                let (p, a) = (map.poly(), map.a());
                winding_number(|y| Some((p.eval(y) - b.c1) / a - b.c2), &b.d2(), BOUNDARY_SAMPLES)
            }
        };
        chk.degree = deg.as_ref().ok().copied();
        if chk.degree != Some(map.degree() as i64) {
            chk.verdict = if deg.is_ok() { Verdict::No } else { Verdict::Unknown };
        }
    }
    chk
}

fn boundary_separation(map: &HenonMap, b: &Bidisc, orientation: Orientation) -> BoundaryCheck {
    let p = map.poly();
    let a = map.a();
    let aa = a.norm();
    let w = b.c1 + a * b.c2;
    match orientation {
        Orientation::Horizontal => {
            // x on dD1, y over D2: F(x, y) in B iff |p(x) - a y - c1| <= r1, |x - c2| <= r2.
            let d1 = b.d1();
            let fwd = minimize(
                &d1,
                circle_cover(&d1),
                |m, rho| {
                    let q = p.dist_lower_ball(m, rho, w) - b.r1 - aa * b.r2;
                    let s = (m - b.c2).norm() - rho - b.r2;
                    safe(q.max(s))
                },
                |x| ((p.eval(x) - w).norm() - b.r1 - aa * b.r2).max((x - b.c2).norm() - b.r2),
            );
            // y on dD2, x over D1: F^{-1}(x, y) in B iff |y - c1| <= r1, |p(y) - x - a c2| <= |a| r2.
            let d2 = b.d2();
            let bwd = minimize(
                &d2,
                circle_cover(&d2),
                |m, rho| {
                    let q = (p.dist_lower_ball(m, rho, w) - b.r1 - aa * b.r2) / aa;
                    let s = (m - b.c1).norm() - rho - b.r1;
                    safe(q.max(s))
                },
                |y| ((y - b.c1).norm() - b.r1).max(((p.eval(y) - w).norm() - b.r1 - aa * b.r2) / aa),
            );
            combine(fwd, bwd)
        }
        Orientation::Vertical => {
            // y over D2, x on dD1: F^{-1}(x, y) in B.
            let d2 = b.d2();
            let bwd = minimize(
                &d2,
                disc_cover(&d2),
                |m, rho| {
                    let (center, extra) = p.eval_ball(m, rho);
                    let lo = center.dist_lower(w) - extra;
                    let hi = center.dist_upper(w) + extra;
                    let q = (abs_gap(lo, hi, b.r1) - aa * b.r2) / aa;
                    let s = (m - b.c1).norm() - rho - b.r1;
                    safe(q.max(s))
                },
                |y| ((y - b.c1).norm() - b.r1).max((((p.eval(y) - w).norm() - b.r1).abs() - aa * b.r2) / aa),
            );
            // x over D1, y on dD2: F(x, y) in B.
            let d1 = b.d1();
            let fwd = minimize(
                &d1,
                disc_cover(&d1),
                |m, rho| {
                    let (center, extra) = p.eval_ball(m, rho);
                    let lo = center.dist_lower(w) - extra;
                    let hi = center.dist_upper(w) + extra;
                    let q = abs_gap(lo, hi, aa * b.r2) - b.r1;
                    let s = (m - b.c2).norm() - rho - b.r2;
                    safe(q.max(s))
                },
                |x| ((x - b.c2).norm() - b.r2).max(((p.eval(x) - w).norm() - aa * b.r2).abs() - b.r1),
            );
            combine(bwd, fwd)
        }
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum DegreeError {
    #[error("boundary curve passes within {0:e} of the base point")]
    PassesNear(f64),
    #[error("map undefined on the boundary")]
    Undefined,
}

/// Winding number of `f` along the circle `d` (counterclockwise), from
/// `samples` points, refining any step whose argument jump exceeds pi/2.
pub fn winding_number<F>(f: F, d: &Disc, samples: usize) -> Result<i64, DegreeError>
where
    F: Fn(Complex64) -> Option<Complex64>,
{
    let eval = |t: f64| -> Result<Complex64, DegreeError> { f(d.boundary_point(t)).ok_or(DegreeError::Undefined) };
    let mut scale = 0.0f64;
    let vals: Vec<Complex64> =
        (0..=samples).map(|k| eval(2.0 * PI * k as f64 / samples as f64)).collect::<Result<_, _>>()?;
    for v in &vals {
        scale = scale.max(v.norm());
    }
    let floor = 1e-12 * scale.max(1e-300);
    fn step<G: Fn(f64) -> Result<Complex64, DegreeError>>(
        g: &G,
        t0: f64,
        t1: f64,
        v0: Complex64,
        v1: Complex64,
        depth: u32,
        floor: f64,
    ) -> Result<f64, DegreeError> {
        if v0.norm() < floor || v1.norm() < floor {
            return Err(DegreeError::PassesNear(v0.norm().min(v1.norm())));
        }
        let da = (v1 / v0).arg();
        if da.abs() <= PI / 2.0 || depth >= 30 {
            return Ok(da);
        }
        let tm = 0.5 * (t0 + t1);
        let vm = g(tm)?;
        Ok(step(g, t0, tm, v0, vm, depth + 1, floor)? + step(g, tm, t1, vm, v1, depth + 1, floor)?)
    }
    let mut total = 0.0;
    for k in 0..samples {
        let t0 = 2.0 * PI * k as f64 / samples as f64;
        let t1 = 2.0 * PI * (k + 1) as f64 / samples as f64;
        total += step(&eval, t0, t1, vals[k], vals[k + 1], 0, floor)?;
    }
    Ok((total / (2.0 * PI)).round() as i64)
}

/// Winding number of `x -> pi_1 F(x, y) - w` over `dD1`, with `w = c1`.
pub fn boundary_degree(map: &HenonMap, b: &Bidisc, y: Complex64) -> Result<i64, DegreeError> {
    boundary_degree_about(map, b, y, b.c1)
}

/// Same as [`boundary_degree`] about an arbitrary base point `w`.
pub fn boundary_degree_about(map: &HenonMap, b: &Bidisc, y: Complex64, w: Complex64) -> Result<i64, DegreeError> {
    let shift = map.a() * y + w;
    winding_number(|x| Some(map.poly().eval(x) - shift), &b.d1(), BOUNDARY_SAMPLES)
}

/// Winding-number degree for an arbitrary planar map.
pub fn slice_degree<M: PlanarMap + ?Sized>(map: &M, b: &Bidisc, y: Complex64) -> Result<i64, DegreeError> {
    winding_number(|x| map.eval(Point2::new(x, y)).map(|z| z.x - b.c1), &b.d1(), BOUNDARY_SAMPLES)
}

/// Boundary conditions evaluated only at sample points, for maps without
/// enclosures. The margin is `min(gauge) - 1` over images of boundary samples.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SampledCheck {
    pub passed: bool,
    pub margin: f64,
    pub samples: usize,
    pub degree: Option<i64>,
}

pub fn check_quasi_henon_like_sampled<M: PlanarMap + ?Sized>(
    map: &M,
    b: &Bidisc,
    orientation: Orientation,
    n_circle: usize,
    n_disc: usize,
) -> SampledCheck {
    let circle = |d: &Disc| -> Vec<Complex64> {
        (0..n_circle).map(|k| d.boundary_point(2.0 * PI * k as f64 / n_circle as f64)).collect()
    };
    let disc = |d: &Disc| -> Vec<Complex64> {
        let mut v = vec![d.c];
        for i in 1..=n_disc {
            let r = d.r * i as f64 / n_disc as f64;
            let m = (4 * i).max(8);
            for k in 0..m {
                v.push(d.c + Complex64::from_polar(r, 2.0 * PI * (k as f64 + 0.5 * (i % 2) as f64) / m as f64));
            }
        }
        v
    };
    let (vx, vy) = (circle(&b.d1()), disc(&b.d2()));
    let (hx, hy) = (disc(&b.d1()), circle(&b.d2()));
    let (fwd_on_v, fwd_on_h) = match orientation {
        Orientation::Horizontal => (true, false),
        Orientation::Vertical => (false, true),
    };
    let mut margin = f64::INFINITY;
    let mut samples = 0;
    let mut visit = |xs: &[Complex64], ys: &[Complex64], forward: bool| {
        for &x in xs {
            for &y in ys {
                samples += 1;
                let z = Point2::new(x, y);
                let img = if forward { map.eval(z) } else { map.eval_inverse(z) };
                let g = img.map_or(f64::INFINITY, |w| b.gauge(w));
                margin = margin.min(g - 1.0);
            }
        }
    };
    visit(&vx, &vy, fwd_on_v);
    visit(&hx, &hy, fwd_on_h);
    let degree = match orientation {
        Orientation::Horizontal => slice_degree(map, b, b.c2).ok(),
        Orientation::Vertical => winding_number(
            |y| map.eval_inverse(Point2::new(b.c1, y)).map(|z| z.y - b.c2),
            &b.d2(),
            BOUNDARY_SAMPLES,
        )
        .ok(),
    };
    let passed = margin > 0.0 && degree == Some(map.slice_degree() as i64);
    SampledCheck { passed, margin, samples, degree }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn winding_of_z_squared() {
        let d = Disc::new(Complex64::new(0.0, 0.0), 1.0);
        assert_eq!(winding_number(|z| Some(z * z), &d, 16), Ok(2));
        assert_eq!(winding_number(|z| Some(z.conj()), &d, 16), Ok(-1));
        assert_eq!(winding_number(|z| Some(z + 3.0), &d, 16), Ok(0));
    }

    #[test]
    fn abs_gap_cases() {
        assert_eq!(abs_gap(3.0, 4.0, 1.0), 2.0);
        assert_eq!(abs_gap(0.0, 0.5, 1.0), 0.5);
        assert_eq!(abs_gap(0.5, 1.5, 1.0), 0.0);
    }
}
