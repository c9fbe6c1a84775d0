//! PPM output, and the real-slice picture of a homoclinic construction.

use henon_core::{re, HenonMap, Point2};
use homoclinic::{EmbeddedBidiscChart, HomoclinicPoint, SaddleData};

/// Binary PPM with the run configuration as a header comment.
pub fn ppm(comment: &str, width: usize, height: usize, pixels: &[[u8; 3]]) -> Vec<u8> {
    let comment = comment.replace(['\n', '\r'], " ");
    let mut out = format!("P6\n# {comment}\n{width} {height}\n255\n").into_bytes();
    for p in pixels {
        out.extend_from_slice(p);
    }
    out
}

const UNSTABLE: [u8; 3] = [200, 0, 0];
const STABLE: [u8; 3] = [0, 0, 200];
const CHART: [u8; 3] = [0, 0, 0];
const POINT: [u8; 3] = [0, 150, 0];
const CURVE_SAMPLES: usize = 4000;

struct Canvas {
    n: usize,
    lo: (f64, f64),
    span: f64,
    px: Vec<[u8; 3]>,
}

impl Canvas {
    fn put(&mut self, x: f64, y: f64, c: [u8; 3], radius: i64) {
        let i = ((x - self.lo.0) / self.span * self.n as f64).floor() as i64;
        let j = ((self.lo.1 + self.span - y) / self.span * self.n as f64).floor() as i64;
        for di in -radius..=radius {
            for dj in -radius..=radius {
                let (a, b) = (i + di, j + dj);
                if a >= 0 && b >= 0 && (a as usize) < self.n && (b as usize) < self.n {
                    self.px[b as usize * self.n + a as usize] = c;
                }
            }
        }
    }

    fn dot(&mut self, z: Point2, c: [u8; 3]) {
        self.put(z.x.re, z.y.re, c, 0);
    }
}

/// `W^u` (red) pushed forward and `W^s` (blue) pulled back as far as the
/// homoclinic orbit needs, `q` and `p` (green), and the real chart (black).
pub fn homoclinic_overlay(
    map: &HenonMap,
    saddle: &SaddleData,
    q: &HomoclinicPoint,
    chart: &EmbeddedBidiscChart,
    n: usize,
) -> Vec<[u8; 3]> {
    let corners: Vec<Point2> =
        [(-1.0, -1.0), (1.0, -1.0), (1.0, 1.0), (-1.0, 1.0)].iter().map(|&(u, v)| chart.to_ambient(Point2::real(u, v))).collect();
    let mut xs = vec![saddle.p.x.re, q.q.x.re];
    let mut ys = vec![saddle.p.y.re, q.q.y.re];
    for c in &corners {
        xs.push(c.x.re);
        ys.push(c.y.re);
    }
    let (x0, x1) = (xs.iter().cloned().fold(f64::INFINITY, f64::min), xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max));
    let (y0, y1) = (ys.iter().cloned().fold(f64::INFINITY, f64::min), ys.iter().cloned().fold(f64::NEG_INFINITY, f64::max));
    let span = 1.5 * (x1 - x0).max(y1 - y0).max(1e-3);
    let lo = (0.5 * (x0 + x1) - 0.5 * span, 0.5 * (y0 + y1) - 0.5 * span);
    let mut cv = Canvas { n, lo, span, px: vec![[255, 255, 255]; n * n] };
    let steps = q.iterates as usize + 1;
    for (m, forward, color) in [(&q.unstable, true, UNSTABLE), (&q.stable, false, STABLE)] {
        let r = m.valid_radius;
        for i in 0..=CURVE_SAMPLES {
            let t = -r + 2.0 * r * i as f64 / CURVE_SAMPLES as f64;
            let mut z = m.eval(re(t));
            for _ in 0..=steps {
                cv.dot(z, color);
                let next = if forward { map.apply(z) } else { map.apply_inverse(z) };
                match next {
                    Ok(w) if w.norm() < 1e3 => z = w,
                    _ => break,
                }
            }
        }
    }
    for k in 0..4 {
        let (a, b) = (corners[k], corners[(k + 1) % 4]);
        for i in 0..=CURVE_SAMPLES {
            let s = i as f64 / CURVE_SAMPLES as f64;
            cv.put(a.x.re + s * (b.x.re - a.x.re), a.y.re + s * (b.y.re - a.y.re), CHART, 0);
        }
    }
    cv.put(q.q.x.re, q.q.y.re, POINT, 3);
    cv.put(saddle.p.x.re, saddle.p.y.re, POINT, 2);
    cv.px
}
