//! Transverse homoclinic points on the real slice.
//!
//! A fundamental segment of the local unstable curve is pushed forward one
//! generation at a time, resampled so consecutive points stay close, and
//! tested against the local stable curve written as a graph over the stable
//! eigen-coordinate. Sign changes of the signed distance are bisected, then
//! polished by Newton on `F^{jK}(σ_u(τ)) = σ_s(s)`.

use crate::error::HomoclinicError;
use crate::manifold::{parametrize_manifold, ManifoldParam, Which};
use crate::saddle::SaddleData;
use henon_core::{escape_radius, in_forward_escape_region, re, Complex64, HenonMap, Mat2, Point2};
use serde::Serialize;

/// Angles below this (radians) count as tangencies.
pub const ANGLE_FLOOR: f64 = 1e-3;
pub const MAX_GENERATIONS: usize = 30;
pub const MANIFOLD_ORDER: usize = 30;
const SAMPLE_BUDGET: usize = 2_000_000;
const INITIAL_SAMPLES: usize = 64;

#[derive(Clone, Debug, Serialize)]
pub struct HomoclinicPoint {
    /// On the local stable manifold: `q = σ_s(t_s)`.
    pub q: Point2,
    /// `q = F^iterates(σ_u(t_u))`.
    pub t_u: Complex64,
    pub t_s: Complex64,
    pub iterates: u32,
    pub transversality_angle: f64,
    #[serde(skip)]
    pub unstable: ManifoldParam,
    #[serde(skip)]
    pub stable: ManifoldParam,
}

fn hermitian_angle(u: Point2, v: Point2) -> f64 {
    let c = u.dot(&v).norm() / (u.norm() * v.norm());
    c.min(1.0).acos()
}

impl HomoclinicPoint {
    /// `F^i(q)` for `i = -n ..= n`, read off the manifold parametrizations
    /// so that no step iterates across the hyperbolic splitting.
    ///
    /// Plain iteration of `q` drifts off `W^s` (or `W^u` backwards) at rate
    /// `|λ|` per step and never returns to `p`.
    pub fn orbit(&self, map: &HenonMap, n: usize) -> Option<Vec<Point2>> {
        let k = self.stable.period as usize;
        let (lambda, mu) = (self.unstable.eigenvalue, self.stable.eigenvalue);
        let mut out = Vec::with_capacity(2 * n + 1);
        for e in (1..=n).rev() {
            let w = if e <= self.iterates as usize {
                map.iterate(self.unstable.eval(self.t_u), self.iterates as i64 - e as i64).ok()?
            } else {
                let e = e - self.iterates as usize;
                let m = e.div_ceil(k);
                let t = self.t_u * lambda.powi(-(m as i32));
                map.iterate(self.unstable.eval(t), (m * k - e) as i64).ok()?
            };
            out.push(w);
        }
        for i in 0..=n {
            let (m, r) = (i / k, i % k);
            let t = self.t_s * mu.powu(m as u32);
            out.push(map.iterate(self.stable.eval(t), r as i64).ok()?);
        }
        Some(out)
    }
}

/// The local stable curve as a graph `ξ_u = h(ξ_s)` in eigen-coordinates.
struct StableGraph<'a> {
    ws: &'a ManifoldParam,
    p: Point2,
    einv: Mat2,
}

impl StableGraph<'_> {
    fn coords(&self, z: Point2) -> (f64, f64) {
        let xi = self.einv.apply(z - self.p);
        (xi.x.re, xi.y.re)
    }

    /// Signed distance `ξ_u(z) - h(ξ_s(z))` and the stable parameter `s`.
    fn signed_distance(&self, z: Point2) -> Option<(f64, f64)> {
        let (xu, xs) = self.coords(z);
        let r = self.ws.valid_radius;
        let mut s = xs;
        for _ in 0..40 {
            if !s.is_finite() || s.abs() > 1.5 * r {
                return None;
            }
            let (_, h) = self.coords(self.ws.eval(re(s)));
            let dh = self.einv.apply(self.ws.derivative(re(s))).y.re;
            if dh <= 0.1 {
                return None;
            }
            let step = (h - xs) / dh;
            s -= step;
            if step.abs() <= 1e-15 * (1.0 + s.abs()) {
                break;
            }
        }
        if s.abs() > r {
            return None;
        }
        let (hu, _) = self.coords(self.ws.eval(re(s)));
        Some((xu - hu, s))
    }
}

#[derive(Clone, Copy)]
struct Sample {
    tau: f64,
    z: Point2,
    dead: bool,
}

struct Curve<'a> {
    map: &'a HenonMap,
    wu: &'a ManifoldParam,
    escape: f64,
}

impl Curve<'_> {
    /// `F^steps(σ_u(τ))`, or dead once the orbit enters the forward escape region.
    fn sample(&self, tau: f64, steps: usize) -> Sample {
        let mut z = self.wu.eval(re(tau));
        for _ in 0..steps {
            match self.map.apply(z) {
                Ok(w) if !in_forward_escape_region(w, self.escape) => z = w,
                _ => return Sample { tau, z, dead: true },
            }
        }
        Sample { tau, z, dead: false }
    }
}

/// Real-slice homoclinic search. `real_slice = false` (a search in all of
/// `C^2`) is not supported.
pub fn find_homoclinic(map: &HenonMap, saddle: &SaddleData, real_slice: bool) -> Result<HomoclinicPoint, HomoclinicError> {
    if !real_slice || !map.is_real() || !saddle.is_real() {
        return Err(HomoclinicError::NotReal);
    }
    let wu = parametrize_manifold(map, saddle, Which::Unstable, MANIFOLD_ORDER)?;
    let ws = parametrize_manifold(map, saddle, Which::Stable, MANIFOLD_ORDER)?;
    find_homoclinic_with(map, saddle, wu, ws)
}

struct Crossing {
    tau: f64,
    s: f64,
    angle: f64,
}

/// Newton on `(τ, s)` for `F^steps(σ_u(τ)) = σ_s(s)` over the reals.
fn polish(map: &HenonMap, wu: &ManifoldParam, ws: &ManifoldParam, steps: usize, mut tau: f64, mut s: f64) -> Option<Crossing> {
    for it in 0..30 {
        let (z, j) = map.iterate_with_jacobian(wu.eval(re(tau)), steps).ok()?;
        let tu = j.apply(wu.derivative(re(tau)));
        let ts = ws.derivative(re(s));
        let r = z - ws.eval(re(s));
        let m = Mat2::new(tu.x, -ts.x, tu.y, -ts.y);
        let d = m.inverse()?.apply(r);
        tau -= d.x.re;
        s -= d.y.re;
        if !tau.is_finite() || !s.is_finite() {
            return None;
        }
        if d.x.norm() <= 1e-15 * (1.0 + tau.abs()) && d.y.norm() <= 1e-15 * (1.0 + s.abs()) || it == 29 {
            break;
        }
    }
    let (z, j) = map.iterate_with_jacobian(wu.eval(re(tau)), steps).ok()?;
    if z.dist(&ws.eval(re(s))) > 1e-10 || s.abs() > ws.valid_radius {
        return None;
    }
    let angle = hermitian_angle(j.apply(wu.derivative(re(tau))), ws.derivative(re(s)));
    Some(Crossing { tau, s, angle })
}

/// The search with given manifold parametrizations.
pub fn find_homoclinic_with(
    map: &HenonMap,
    saddle: &SaddleData,
    wu: ManifoldParam,
    ws: ManifoldParam,
) -> Result<HomoclinicPoint, HomoclinicError> {
    let k = saddle.period as usize;
    // Negative multipliers flip the branches; two periods keep each branch.
    let (kk, lam) = if saddle.lambda.re < 0.0 { (2 * k, saddle.lambda.re.powi(2)) } else { (k, saddle.lambda.re) };
    let graph = StableGraph { ws: &ws, p: saddle.p, einv: saddle.frame().inverse().ok_or(HomoclinicError::NotReal)? };
    let curve = Curve { map, wu: &wu, escape: escape_radius(map) };
    let ru = wu.valid_radius;
    let h = ru.min(ws.valid_radius) / 8.0;
    let mut samples: Vec<Sample> = Vec::new();
    for sign in [-1.0, 1.0] {
        for i in 0..=INITIAL_SAMPLES {
            let tau = sign * ru * lam.powf(-1.0 + i as f64 / INITIAL_SAMPLES as f64);
            samples.push(curve.sample(tau, 0));
        }
    }
    let mut best_tangent = 0.0f64;
    let mut any_crossing = false;
    for gen in 0..=MAX_GENERATIONS {
        let steps = gen * kk;
        if gen > 0 {
            for s in samples.iter_mut().filter(|s| !s.dead) {
                *s = curve.sample(s.tau, steps);
            }
        }
        // Resample until neighbours are within h (pairs of dead points are left alone).
        let mut refined = Vec::with_capacity(samples.len());
        for w in samples.windows(2) {
            refined.push(w[0]);
            if w[0].tau.signum() != w[1].tau.signum() {
                continue;
            }
            let mut stack = vec![(w[0], w[1])];
            let mut inner = Vec::new();
            while let Some((a, b)) = stack.pop() {
                let close = a.dead && b.dead || (!a.dead && !b.dead && a.z.dist(&b.z) <= h);
                if close || (b.tau - a.tau).abs() <= 1e-13 * ru {
                    continue;
                }
                let m = curve.sample(0.5 * (a.tau + b.tau), steps);
                inner.push(m);
                stack.push((m, b));
                stack.push((a, m));
            }
            inner.sort_by(|a, b| a.tau.total_cmp(&b.tau));
            refined.extend(inner);
            if refined.len() > SAMPLE_BUDGET {
                return Err(HomoclinicError::Budget { budget: SAMPLE_BUDGET, generation: gen });
            }
        }
        refined.push(*samples.last().expect("samples"));
        samples = refined;

        let mut crossings = Vec::new();
        let g: Vec<Option<(f64, f64)>> =
            samples.iter().map(|s| if s.dead { None } else { graph.signed_distance(s.z) }).collect();
        for i in 0..samples.len() - 1 {
            let (Some((ga, _)), Some((gb, sb))) = (g[i], g[i + 1]) else { continue };
            if ga.signum() == gb.signum() || samples[i].tau.signum() != samples[i + 1].tau.signum() {
                continue;
            }
            let (mut lo, mut hi, mut glo) = (samples[i].tau, samples[i + 1].tau, ga);
            let mut s_guess = sb;
            let mut ok = true;
            for _ in 0..80 {
                let mid = 0.5 * (lo + hi);
                let Some((gm, sm)) = graph.signed_distance(curve.sample(mid, steps).z) else {
                    ok = false;
                    break;
                };
                s_guess = sm;
                if gm.signum() == glo.signum() {
                    (lo, glo) = (mid, gm);
                } else {
                    hi = mid;
                }
            }
            if !ok {
                continue;
            }
            if let Some(c) = polish(map, &wu, &ws, steps, 0.5 * (lo + hi), s_guess) {
                if ws.eval(re(c.s)).dist(&saddle.p) > 1e-8 {
                    crossings.push(c);
                }
            }
        }
        any_crossing |= !crossings.is_empty();
        let chosen = crossings.into_iter().filter(|c| {
            best_tangent = best_tangent.max(c.angle);
            c.angle > ANGLE_FLOOR
        });
        if let Some(c) = chosen.max_by(|a, b| a.angle.total_cmp(&b.angle)) {
            return Ok(HomoclinicPoint {
                q: ws.eval(re(c.s)),
                t_u: re(c.tau),
                t_s: re(c.s),
                iterates: steps as u32,
                transversality_angle: c.angle,
                unstable: wu,
                stable: ws,
            });
        }
    }
    if any_crossing {
        Err(HomoclinicError::Tangency { angle: best_tangent })
    } else {
        Err(HomoclinicError::NoCrossing { generations: MAX_GENERATIONS })
    }
}
