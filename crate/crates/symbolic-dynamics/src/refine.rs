//! From symbol words to points: the nested pullbacks realized as a
//! Gauss-Seidel iteration on orbit segments.
//!
//! An orbit `z_k = (u_k, v_k)` with `z_{k+1} = F(z_k)` and `z_k ∈ U_{s_k}` is a
//! fixed point of two sweeps: `u_k = g_{s_k}(u_{k+1}, v_k)` (the inverse
//! branch of `π1 F(·, v_k)` on `U_{s_k}`, contracting backward in time) and
//! `v_{k+1} = π2 F(u_k, v_k)` (contracting forward). For the Henon family the
//! first sweep is `x_k = p_{s_k}^{-1}(x_{k+1} + a x_{k-1})`.

use crate::labeling::ComponentLabeling;
use crate::word::SymbolWord;
use henon_core::{Complex64, Mat2, PlanarMap, Point2};
use serde::Serialize;
use thiserror::Error;

/// Boundary values tried on each end circle of a finite word.
const BOUNDARY_ANGLES: usize = 4;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RefineError {
    #[error("no inverse branch for symbol {symbol} at index {index}")]
    Branch { index: i64, symbol: u8 },
    #[error("symbol {0} outside the alphabet")]
    Symbol(u8),
    #[error("enclosure did not shrink below {radius} after {sweeps} sweeps")]
    NoContraction { radius: f64, sweeps: usize },
}

#[derive(Clone, Debug, Serialize)]
pub struct Refinement {
    /// The point at position 0.
    pub z: Point2,
    /// Spread of `z` over boundary conditions (finite words) or the final
    /// Newton correction (cyclic words).
    pub radius: f64,
    pub sweeps: usize,
}

struct Segment<'a, M: ?Sized> {
    map: &'a M,
    lab: &'a ComponentLabeling,
    symbols: Vec<u8>,
    /// Index of position 0 in `symbols`.
    offset: usize,
    cyclic: bool,
    u: Vec<Complex64>,
    v: Vec<Complex64>,
    /// Fixed `v` at the left end and `u` past the right end (finite words).
    v_left: Complex64,
    u_right: Complex64,
    separation: f64,
}

impl<M: PlanarMap + ?Sized> Segment<'_, M> {
    fn index(&self, i: usize) -> i64 {
        i as i64 - self.offset as i64
    }

    fn solve_u(&self, i: usize, w: Complex64, v: Complex64, warm: bool) -> Result<Complex64, RefineError> {
        let s = self.symbols[i];
        if warm {
            // Newton from the previous value; fall back if it jumps branches.
            let mut u = self.u[i];
            let mut ok = true;
            for _ in 0..30 {
                let z = Point2::new(u, v);
                let (Some(g), Some(j)) = (self.map.eval(z), self.map.jacobian_at(z)) else {
                    ok = false;
                    break;
                };
                let du = (g.x - w) / j.m[0][0];
                u -= du;
                if !u.is_finite() {
                    ok = false;
                    break;
                }
                if du.norm() <= 1e-15 * (1.0 + u.norm()) {
                    break;
                }
            }
            if ok && (u - self.u[i]).norm() < 0.25 * self.separation {
                return Ok(u);
            }
        }
        self.lab.branch(self.map, s, w, v).ok_or(RefineError::Branch { index: self.index(i), symbol: s })
    }

    /// One backward sweep on `u` and one forward sweep on `v`; returns the
    /// largest change.
    fn sweep(&mut self, warm: bool) -> Result<f64, RefineError> {
        let n = self.symbols.len();
        let mut change: f64 = 0.0;
        for i in (0..n).rev() {
            let w = if i + 1 < n {
                self.u[i + 1]
            } else if self.cyclic {
                self.u[0]
            } else {
                self.u_right
            };
            let u = self.solve_u(i, w, self.v[i], warm)?;
            change = change.max((u - self.u[i]).norm());
            self.u[i] = u;
        }
        let start = if self.cyclic { 0 } else { 1 };
        for i in start..n {
            let prev = if i == 0 { n - 1 } else { i - 1 };
            let z = Point2::new(self.u[prev], self.v[prev]);
            let v = match self.map.eval(z) {
                Some(w) => w.y,
                None => return Err(RefineError::Branch { index: self.index(i), symbol: self.symbols[i] }),
            };
            change = change.max((v - self.v[i]).norm());
            self.v[i] = v;
        }
        if !self.cyclic {
            self.v[0] = self.v_left;
        }
        Ok(change)
    }

    fn run(&mut self, iterations: usize) -> Result<(Point2, usize, f64), RefineError> {
        let mut last = f64::INFINITY;
        let mut sweeps = 0;
        for k in 0..iterations.max(1) {
            last = self.sweep(k > 0)?;
            sweeps = k + 1;
            let scale = 1.0 + self.lab.b.r1.max(self.lab.b.r2);
            if last <= 1e-14 * scale {
                break;
            }
        }
        Ok((Point2::new(self.u[self.offset], self.v[self.offset]), sweeps, last))
    }
}

fn segment<'a, M: PlanarMap + ?Sized>(
    map: &'a M,
    lab: &'a ComponentLabeling,
    word: &SymbolWord,
    v_left: Complex64,
    u_right: Complex64,
) -> Result<Segment<'a, M>, RefineError> {
    if let Some(&s) = word.symbols.iter().find(|&&s| s as usize >= lab.d) {
        return Err(RefineError::Symbol(s));
    }
    let n = word.symbols.len();
    let u: Vec<Complex64> = word.symbols.iter().map(|&s| lab.centroids[s as usize]).collect();
    let mut v = vec![lab.v_ref; n];
    v[0] = if word.cyclic { lab.v_ref } else { v_left };
    let mut separation = f64::INFINITY;
    for i in 0..lab.d {
        for j in 0..i {
            separation = separation.min((lab.centroids[i] - lab.centroids[j]).norm());
        }
    }
    Ok(Segment {
        map,
        lab,
        symbols: word.symbols.clone(),
        offset: word.offset,
        cyclic: word.cyclic,
        u,
        v,
        v_left,
        u_right,
        separation,
    })
}

/// Newton on `G^p(z) = z` from `z`; returns the polished point and last step.
pub fn newton_periodic<M: PlanarMap + ?Sized>(map: &M, mut z: Point2, p: usize) -> Option<(Point2, f64)> {
    let mut step = f64::INFINITY;
    for _ in 0..20 {
        let mut w = z;
        let mut j = Mat2::identity();
        for _ in 0..p {
            j = map.jacobian_at(w)? * j;
            w = map.eval(w)?;
        }
        let g = w - z;
        let one = Complex64::new(1.0, 0.0);
        let dg = Mat2::new(j.m[0][0] - one, j.m[0][1], j.m[1][0], j.m[1][1] - one);
        let dz = dg.inverse()?.apply(g);
        z = z - dz;
        let s = dz.norm();
        if s >= step && s < 1e-12 {
            break;
        }
        step = s;
        if s == 0.0 {
            break;
        }
    }
    Some((z, step))
}

/// The point whose itinerary is `word`.
///
/// Finite words are refined from several boundary conditions at both ends;
/// the radius adds the largest deviations at position 0 caused by each end,
/// which measures how well the word pins the point down. Cyclic words are solved with periodic
/// boundary conditions and polished by Newton on `F^period`.
pub fn refine_point<M: PlanarMap + ?Sized>(
    map: &M,
    lab: &ComponentLabeling,
    word: &SymbolWord,
    iterations: usize,
) -> Result<Refinement, RefineError> {
    let b = lab.b;
    if word.cyclic {
        let mut seg = segment(map, lab, word, b.c2, b.c1)?;
        let (z, sweeps, last) = seg.run(iterations)?;
        let p = word.symbols.len();
        let (z, step) = newton_periodic(map, z, p).unwrap_or((z, last));
        return Ok(Refinement { z, radius: step.max(last), sweeps });
    }
    // The point depends holomorphically (and, at these scales, almost
    // linearly) on the two boundary values. Each end is moved around its full
    // circle separately and the largest deviations are added.
    let mut sweeps = 0;
    let mut run = |vl: Complex64, ur: Complex64| -> Result<Point2, RefineError> {
        let mut seg = segment(map, lab, word, vl, ur)?;
        let (z, s, _) = seg.run(iterations)?;
        sweeps = sweeps.max(s);
        Ok(z)
    };
    let z = run(b.c2, b.c1)?;
    let mut dv: f64 = 0.0;
    let mut du: f64 = 0.0;
    for k in 0..BOUNDARY_ANGLES {
        let e = Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / BOUNDARY_ANGLES as f64);
        dv = dv.max(run(b.c2 + e * b.r2, b.c1)?.dist(&z));
        du = du.max(run(b.c2, b.c1 + e * b.r1)?.dist(&z));
    }
    let radius = dv + du;
    if !radius.is_finite() {
        return Err(RefineError::NoContraction { radius, sweeps });
    }
    Ok(Refinement { z, radius, sweeps })
}
