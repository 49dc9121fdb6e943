//! Closed planar parametric curves, arc-length tables and self-intersection
//! detection.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::f64::consts::TAU;

use crate::math;

/// Parameter tolerance used to merge self-intersections found from
/// neighboring polyline segments.
pub const CROSSING_RESOLUTION: f64 = 1e-6;

/// A closed planar curve parameterized over `[0, 2π)`.
#[derive(Debug, Clone, PartialEq)]
pub enum Curve {
    Circle {
        center: [f64; 2],
        radius: f64,
    },
    /// Lemniscate of Bernoulli with half-width `a`, crossing at the origin.
    Lemniscate {
        a: f64,
    },
    /// `(ax sin(fx t + phase), ay sin(fy t))`.
    Lissajous {
        ax: f64,
        ay: f64,
        fx: u32,
        fy: u32,
        phase: f64,
    },
}

impl Curve {
    pub fn position(&self, t: f64) -> [f64; 2] {
        match *self {
            Curve::Circle { center, radius } => [center[0] + radius * libm::cos(t), center[1] + radius * libm::sin(t)],
            Curve::Lemniscate { a } => {
                let (s, c) = (libm::sin(t), libm::cos(t));
                let d = 1.0 + s * s;
                [a * c / d, a * s * c / d]
            }
            Curve::Lissajous { ax, ay, fx, fy, phase } => {
                [ax * libm::sin(fx as f64 * t + phase), ay * libm::sin(fy as f64 * t)]
            }
        }
    }

    pub fn velocity(&self, t: f64) -> [f64; 2] {
        match *self {
            Curve::Circle { radius, .. } => [-radius * libm::sin(t), radius * libm::cos(t)],
            Curve::Lemniscate { a } => {
                let (s, c) = (libm::sin(t), libm::cos(t));
                let d = 1.0 + s * s;
                let d2 = d * d;
                [
                    -a * s * (3.0 - s * s) / d2,
                    a * ((c * c - s * s) * d - 2.0 * s * s * c * c) / d2,
                ]
            }
            Curve::Lissajous { ax, ay, fx, fy, phase } => {
                let (fx, fy) = (fx as f64, fy as f64);
                [ax * fx * libm::cos(fx * t + phase), ay * fy * libm::cos(fy * t)]
            }
        }
    }

    pub fn speed(&self, t: f64) -> f64 {
        let v = self.velocity(t);
        math::sqrt(v[0] * v[0] + v[1] * v[1])
    }

    pub fn period(&self) -> f64 {
        TAU
    }
}

// 5-point Gauss-Legendre nodes and weights on [-1, 1].
const GL_NODES: [f64; 5] = [
    0.0,
    -0.538_469_310_105_683_1,
    0.538_469_310_105_683_1,
    -0.906_179_845_938_664,
    0.906_179_845_938_664,
];
const GL_WEIGHTS: [f64; 5] = [
    0.568_888_888_888_888_9,
    0.478_628_670_499_366_5,
    0.478_628_670_499_366_5,
    0.236_926_885_056_189_1,
    0.236_926_885_056_189_1,
];

fn integrate_speed(curve: &Curve, t0: f64, t1: f64) -> f64 {
    let half = 0.5 * (t1 - t0);
    let mid = 0.5 * (t1 + t0);
    GL_NODES
        .iter()
        .zip(GL_WEIGHTS)
        .map(|(x, w)| w * curve.speed(mid + half * x))
        .sum::<f64>()
        * half
}

/// Cumulative arc length of a curve on a uniform parameter grid, with
/// inversion from arc length back to parameter.
#[derive(Debug, Clone)]
pub struct ArcTable {
    curve: Curve,
    params: Vec<f64>,
    cumulative: Vec<f64>,
}

impl ArcTable {
    pub const DEFAULT_SEGMENTS: usize = 16_384;

    pub fn new(curve: Curve, segments: usize) -> Self {
        let period = curve.period();
        let params: Vec<f64> = (0..=segments).map(|i| period * i as f64 / segments as f64).collect();
        let mut cumulative = Vec::with_capacity(segments + 1);
        cumulative.push(0.0);
        let mut acc = 0.0;
        for w in params.windows(2) {
            acc += integrate_speed(&curve, w[0], w[1]);
            cumulative.push(acc);
        }
        ArcTable {
            curve,
            params,
            cumulative,
        }
    }

    pub fn curve(&self) -> &Curve {
        &self.curve
    }

    pub fn length(&self) -> f64 {
        *self.cumulative.last().unwrap()
    }

    pub fn segments(&self) -> usize {
        self.params.len() - 1
    }

    /// Grid parameter `i` and its polyline vertex.
    pub fn grid_point(&self, i: usize) -> (f64, [f64; 2]) {
        let t = self.params[i];
        (t, self.curve.position(t))
    }

    /// Arc length from parameter 0 to `t` (`t` is reduced into one period).
    pub fn arc_at(&self, t: f64) -> f64 {
        let period = self.curve.period();
        let t = math::rem_euclid(t, period);
        let step = period / self.segments() as f64;
        let i = ((t / step) as usize).min(self.segments() - 1);
        self.cumulative[i] + integrate_speed(&self.curve, self.params[i], t)
    }

    /// Parameter at arc length `s` (reduced into `[0, length)`).
    pub fn param_at(&self, s: f64) -> f64 {
        let s = math::rem_euclid(s, self.length());
        let i = match self.cumulative.binary_search_by(|c| c.total_cmp(&s)) {
            Ok(i) => return self.params[i.min(self.segments())],
            Err(i) => i.saturating_sub(1).min(self.segments() - 1),
        };
        let (t0, t1) = (self.params[i], self.params[i + 1]);
        let (s0, s1) = (self.cumulative[i], self.cumulative[i + 1]);
        let mut t = t0 + (t1 - t0) * (s - s0) / (s1 - s0);
        for _ in 0..6 {
            let err = s0 + integrate_speed(&self.curve, t0, t) - s;
            let speed = self.curve.speed(t);
            if speed <= 0.0 {
                break;
            }
            let next = (t - err / speed).clamp(t0, t1);
            if (next - t).abs() < 1e-15 {
                t = next;
                break;
            }
            t = next;
        }
        t
    }

    pub fn point_at_arc(&self, s: f64) -> [f64; 2] {
        self.curve.position(self.param_at(s))
    }

    /// Parameter of the curve point closest to `x`, with its distance.
    pub fn project(&self, x: &[f64]) -> (f64, f64) {
        let mut best_i = 0;
        let mut best_d = f64::INFINITY;
        for i in 0..self.segments() {
            let p = self.curve.position(self.params[i]);
            let d = (p[0] - x[0]) * (p[0] - x[0]) + (p[1] - x[1]) * (p[1] - x[1]);
            if d < best_d {
                best_d = d;
                best_i = i;
            }
        }
        let step = self.curve.period() / self.segments() as f64;
        let mut best_t = self.params[best_i];
        let mut best = math::sqrt(best_d);
        // Refine from the best grid point and its two neighbors.
        for start in [best_t - step, best_t, best_t + step] {
            let t = self.refine(x, start, step);
            let p = self.curve.position(t);
            let d = math::dist(&p, x);
            if d < best {
                best = d;
                best_t = t;
            }
        }
        (math::rem_euclid(best_t, self.curve.period()), best)
    }

    fn refine(&self, x: &[f64], mut t: f64, step: f64) -> f64 {
        let lo = t - 2.0 * step;
        let hi = t + 2.0 * step;
        for _ in 0..40 {
            let p = self.curve.position(t);
            let v = self.curve.velocity(t);
            let vv = v[0] * v[0] + v[1] * v[1];
            if vv <= 0.0 {
                break;
            }
            let g = (p[0] - x[0]) * v[0] + (p[1] - x[1]) * v[1];
            let next = (t - g / vv).clamp(lo, hi);
            if (next - t).abs() < 1e-16 {
                break;
            }
            t = next;
        }
        t
    }
}

fn segments_intersect(a: [f64; 2], b: [f64; 2], c: [f64; 2], d: [f64; 2]) -> bool {
    let orient = |p: [f64; 2], q: [f64; 2], r: [f64; 2]| (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0]);
    let d1 = orient(c, d, a);
    let d2 = orient(c, d, b);
    let d3 = orient(a, b, c);
    let d4 = orient(a, b, d);
    ((d1 > 0.0) != (d2 > 0.0)) && ((d3 > 0.0) != (d4 > 0.0))
}

/// Newton iteration on `γ(t1) = γ(t2)`.
fn refine_crossing(curve: &Curve, mut t1: f64, mut t2: f64) -> Option<(f64, f64)> {
    for _ in 0..60 {
        let p = curve.position(t1);
        let q = curve.position(t2);
        let f = [p[0] - q[0], p[1] - q[1]];
        if f[0].abs() + f[1].abs() < 1e-15 {
            break;
        }
        let u = curve.velocity(t1);
        let v = curve.velocity(t2);
        // Jacobian [u, -v].
        let det = -u[0] * v[1] + v[0] * u[1];
        if det.abs() < 1e-300 {
            return None;
        }
        let dt1 = (-v[1] * f[0] + v[0] * f[1]) / det;
        let dt2 = (-u[1] * f[0] + u[0] * f[1]) / det;
        t1 -= dt1;
        t2 -= dt2;
    }
    let p = curve.position(t1);
    let q = curve.position(t2);
    (math::dist(&p, &q) < 1e-9).then_some((t1, t2))
}

/// Transverse self-intersections of the curve as parameter pairs
/// `(t1, t2)` with `0 <= t1 < t2 < 2π`, sorted by `t1`.
///
/// Crossings are located on the table's polyline and refined by Newton's
/// method; pairs closer than [`CROSSING_RESOLUTION`] are merged.
pub fn self_intersections(table: &ArcTable) -> Vec<(f64, f64)> {
    let curve = table.curve();
    let period = curve.period();
    let m = table.segments();
    let pts: Vec<[f64; 2]> = (0..=m).map(|i| table.grid_point(i).1).collect();
    let cell = 4.0 * table.length() / m as f64;
    let mut buckets: BTreeMap<(i64, i64), Vec<usize>> = BTreeMap::new();
    for i in 0..m {
        let (a, b) = (pts[i], pts[i + 1]);
        let x0 = libm::floor(a[0].min(b[0]) / cell) as i64;
        let x1 = libm::floor(a[0].max(b[0]) / cell) as i64;
        let y0 = libm::floor(a[1].min(b[1]) / cell) as i64;
        let y1 = libm::floor(a[1].max(b[1]) / cell) as i64;
        for cx in x0..=x1 {
            for cy in y0..=y1 {
                buckets.entry((cx, cy)).or_default().push(i);
            }
        }
    }
    let mut found: Vec<(f64, f64)> = Vec::new();
    let mut seen_pairs: BTreeMap<(usize, usize), ()> = BTreeMap::new();
    for ids in buckets.values() {
        for (k, &i) in ids.iter().enumerate() {
            for &j in &ids[k + 1..] {
                let (i, j) = (i.min(j), i.max(j));
                let gap = j - i;
                if gap <= 1 || gap >= m - 1 {
                    continue;
                }
                if seen_pairs.insert((i, j), ()).is_some() {
                    continue;
                }
                if !segments_intersect(pts[i], pts[i + 1], pts[j], pts[j + 1]) {
                    continue;
                }
                let (ti, _) = table.grid_point(i);
                let (tj, _) = table.grid_point(j);
                let step = period / m as f64;
                if let Some((a, b)) = refine_crossing(curve, ti + 0.5 * step, tj + 0.5 * step) {
                    let (a, b) = (math::rem_euclid(a, period), math::rem_euclid(b, period));
                    let pair = (a.min(b), a.max(b));
                    let close = |x: f64, y: f64| {
                        let d = (x - y).abs();
                        d.min(period - d) < CROSSING_RESOLUTION
                    };
                    if (pair.1 - pair.0).min(period - (pair.1 - pair.0)) < CROSSING_RESOLUTION {
                        continue;
                    }
                    if !found.iter().any(|f| close(f.0, pair.0) && close(f.1, pair.1)) {
                        found.push(pair);
                    }
                }
            }
        }
    }
    found.sort_by(|a, b| a.0.total_cmp(&b.0));
    found
}
