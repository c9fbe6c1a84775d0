//! Symbolic coding of a constructed horseshoe.
//!
//! `G = F^{kN}` expands by roughly `|λ|^N` per step, so orbits of a few
//! `G`-steps are out of reach of plain doubles. Periodic orbits are seeded
//! from the chart labeling, polished by multiple shooting with residuals in
//! double-double, and iterated in double-double before labeling.

use crate::build::{Horseshoe, ROOT_SEEDS};
use crate::dd::{HenonDd, PointDd};
use crate::error::HomoclinicError;
use henon_core::{Complex64, Point2};
use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::HashSet;
use symbolic_dynamics::{build_labeling_zoomed, label_orbit, refine_point, ComponentLabeling, ItineraryError, SymbolWord};

pub const LABEL_RESOLUTION: usize = 128;
const REFINE_ITERATIONS: usize = 200;
const SHOOTING_STEPS: usize = 8;
/// Relative residual at which shooting stops.
const SHOOTING_TOL: f64 = 1e-28;

pub fn chart_labeling(h: &Horseshoe) -> Result<ComponentLabeling, HomoclinicError> {
    build_labeling_zoomed(&h.map, &Horseshoe::unit_bidisc(), LABEL_RESOLUTION, ROOT_SEEDS)
        .map_err(|e| HomoclinicError::Shooting(format!("labeling: {e}")))
}

/// A `G`-periodic orbit in ambient coordinates.
#[derive(Clone, Debug)]
pub struct DdCycle {
    pub word: Vec<u8>,
    /// `points[i + 1] = G(points[i])`, cyclically.
    pub points: Vec<PointDd>,
    /// Largest `‖G(w_i) - w_{i+1}‖`.
    pub residual: f64,
}

fn steps(h: &Horseshoe) -> i64 {
    h.map.iterates as i64
}

/// Ambient seeds for the cycle, one refinement per rotation of `word`.
///
/// Cyclic refinement ends with Newton on `G^p` in doubles, which can land
/// off the orbit for longer words; `finite` instead refines three periods
/// with position 0 in the middle.
fn seeds(h: &Horseshoe, lab: &ComponentLabeling, word: &[u8], finite: bool) -> Result<Vec<PointDd>, HomoclinicError> {
    let p = word.len();
    (0..p)
        .map(|i| {
            let sw = if finite {
                SymbolWord::new((0..3 * p).map(|j| word[(i + j) % p]).collect(), p)
            } else {
                SymbolWord::periodic((0..p).map(|j| word[(i + j) % p]).collect())
            };
            let sw = sw.map_err(|e| HomoclinicError::Shooting(e.to_string()))?;
            let r = refine_point(&h.map, lab, &sw, REFINE_ITERATIONS)
                .map_err(|e| HomoclinicError::Shooting(format!("seed for {word:?}: {e}")))?;
            Ok(h.chart.to_ambient(r.z).into())
        })
        .collect()
}

/// The periodic orbit of `G` with itinerary `... word word ...`.
pub fn periodic_orbit_dd(h: &Horseshoe, lab: &ComponentLabeling, word: &[u8]) -> Result<DdCycle, HomoclinicError> {
    if word.is_empty() {
        return Err(HomoclinicError::Shooting("empty word".into()));
    }
    shoot(h, word, seeds(h, lab, word, false)?).or_else(|_| shoot(h, word, seeds(h, lab, word, true)?))
}

/// Multiple shooting on `w_{i+1} = G(w_i)`: residuals in double-double,
/// corrections from the linearization in doubles.
fn shoot(h: &Horseshoe, word: &[u8], mut w: Vec<PointDd>) -> Result<DdCycle, HomoclinicError> {
    let p = word.len();
    let f = &h.map.map;
    let fdd = HenonDd::new(f);
    let k = steps(h);
    let scale = 1.0 + w.iter().map(|z| z.to_point().norm()).fold(0.0, f64::max);
    for _ in 0..SHOOTING_STEPS {
        let mut r = Vec::with_capacity(p);
        for i in 0..p {
            let g = fdd.iterate(w[i], k).ok_or_else(|| HomoclinicError::Shooting("orbit overflow".into()))?;
            r.push((g - w[(i + 1) % p]).to_point());
        }
        let residual = r.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if residual <= SHOOTING_TOL * scale {
            return Ok(DdCycle { word: word.to_vec(), points: w, residual });
        }
        // J_i δ_i - δ_{i+1} = -r_i
        let n = 2 * p;
        let mut a = DMatrix::<Complex64>::zeros(n, n);
        let mut b = DVector::<Complex64>::zeros(n);
        for i in 0..p {
            let (_, j) = f
                .iterate_with_jacobian(w[i].to_point(), k as usize)
                .map_err(|e| HomoclinicError::Shooting(e.to_string()))?;
            let next = (i + 1) % p;
            for row in 0..2 {
                for col in 0..2 {
                    a[(2 * i + row, 2 * i + col)] += j.m[row][col];
                }
                a[(2 * i + row, 2 * next + row)] -= Complex64::new(1.0, 0.0);
            }
            b[2 * i] = -r[i].x;
            b[2 * i + 1] = -r[i].y;
        }
        let delta = a.lu().solve(&b).ok_or_else(|| HomoclinicError::Shooting("singular shooting matrix".into()))?;
        for (i, wi) in w.iter_mut().enumerate() {
            *wi = *wi + Point2::new(delta[2 * i], delta[2 * i + 1]).into();
        }
    }
    Err(HomoclinicError::Shooting(format!("no convergence for {word:?}")))
}

/// Symbols of `G^j(w)` for `-n_back <= j <= n_fwd`, from an orbit computed
/// in double-double. `G^{n_fwd + 1}(w)` must lie in the bidisc as well.
pub fn itinerary_dd(
    h: &Horseshoe,
    lab: &ComponentLabeling,
    w: PointDd,
    n_back: usize,
    n_fwd: usize,
) -> Result<SymbolWord, ItineraryError> {
    let fdd = HenonDd::new(&h.map.map);
    let k = steps(h);
    let center = PointDd::from(h.chart.center);
    let chart_point = |z: PointDd, index: i64| {
        h.chart
            .from_offset((z - center).to_point())
            .filter(|u| u.is_finite() && lab.b.gauge(*u) <= 1.0)
            .ok_or(ItineraryError::Escaped { index })
    };
    let mut pts = Vec::with_capacity(n_back + n_fwd + 1);
    let mut z = w;
    for j in 1..=n_back as i64 {
        z = fdd.iterate(z, -k).ok_or(ItineraryError::Escaped { index: -j })?;
        pts.push(chart_point(z, -j)?);
    }
    pts.reverse();
    pts.push(chart_point(w, 0)?);
    let mut z = w;
    for j in 1..=n_fwd as i64 + 1 {
        z = fdd.iterate(z, k).ok_or(ItineraryError::Escaped { index: j })?;
        let u = chart_point(z, j)?;
        if j <= n_fwd as i64 {
            pts.push(u);
        }
    }
    label_orbit(&h.map, &pts, n_back, lab)
}

#[derive(Clone, Debug, Serialize)]
pub struct EquivarianceReport {
    pub samples: usize,
    pub depth: usize,
    /// Samples whose shifted itinerary disagrees with the itinerary of `G(w)`.
    pub shift_failures: usize,
    /// Samples whose itinerary is not the prescribed periodic word.
    pub word_failures: usize,
    /// Samples with no itinerary to the requested depth.
    pub undefined: usize,
    pub max_residual: f64,
    pub first_failure: Option<String>,
}

impl EquivarianceReport {
    pub fn passed(&self) -> bool {
        self.shift_failures == 0 && self.word_failures == 0 && self.undefined == 0
    }
}

/// Shift equivariance at `depth` on periodic orbits of random words of
/// length 2 to 6, started at a random point of the cycle.
pub fn check_equivariance(
    h: &Horseshoe,
    lab: &ComponentLabeling,
    samples: usize,
    depth: usize,
    seed: u64,
) -> EquivarianceReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep = EquivarianceReport {
        samples,
        depth,
        shift_failures: 0,
        word_failures: 0,
        undefined: 0,
        max_residual: 0.0,
        first_failure: None,
    };
    let fdd = HenonDd::new(&h.map.map);
    for _ in 0..samples {
        let p = rng.gen_range(2..=6);
        let word: Vec<u8> = (0..p).map(|_| rng.gen_range(0..h.d) as u8).collect();
        let start = rng.gen_range(0..p);
        let note = |rep: &mut EquivarianceReport, msg: String| {
            rep.first_failure.get_or_insert(msg);
        };
        let cyc = match periodic_orbit_dd(h, lab, &word) {
            Ok(c) => c,
            Err(e) => {
                rep.undefined += 1;
                note(&mut rep, format!("{word:?}: {e}"));
                continue;
            }
        };
        rep.max_residual = rep.max_residual.max(cyc.residual);
        let w = cyc.points[start];
        let image = fdd.iterate(w, steps(h));
        let (a, b) = match (itinerary_dd(h, lab, w, depth, depth), image.map(|g| itinerary_dd(h, lab, g, depth, depth))) {
            (Ok(a), Some(Ok(b))) => (a, b),
            (a, b) => {
                rep.undefined += 1;
                note(&mut rep, format!("{word:?} from {start}: {a:?} / {b:?}"));
                continue;
            }
        };
        let d = depth as i64;
        if (-d..=d).any(|j| a.get(j) != Some(word[(start as i64 + j).rem_euclid(p as i64) as usize])) {
            rep.word_failures += 1;
            note(&mut rep, format!("{word:?} from {start}: itinerary {a}"));
        }
        if (-d..d).any(|j| a.get(j + 1) != b.get(j)) {
            rep.shift_failures += 1;
            note(&mut rep, format!("{word:?} from {start}: {a} then {b}"));
        }
    }
    rep
}

/// Distinct forward words `s_0 ... s_{n-1}` read off the periodic orbits of
/// every word of length `n`.
pub fn forward_words(h: &Horseshoe, lab: &ComponentLabeling, n: usize) -> Result<HashSet<Vec<u8>>, HomoclinicError> {
    let total = h.d.pow(n as u32);
    let mut out = HashSet::new();
    for code in 0..total {
        let word: Vec<u8> = (0..n).map(|i| ((code / h.d.pow(i as u32)) % h.d) as u8).collect();
        let cyc = periodic_orbit_dd(h, lab, &word)?;
        let it = itinerary_dd(h, lab, cyc.points[0], 0, n - 1).map_err(|e| HomoclinicError::Shooting(e.to_string()))?;
        out.insert(it.symbols);
    }
    Ok(out)
}
