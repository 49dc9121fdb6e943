//! Planar primitives (points, segments, triangles) and a uniform bucket grid
//! for nearest-distance and box-overlap queries.

use alloc::vec::Vec;

use crate::math;

/// A closed planar cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Primitive {
    Point([f64; 2]),
    Segment([f64; 2], [f64; 2]),
    /// Filled triangle; degenerate (collinear) triangles are allowed.
    Triangle([f64; 2], [f64; 2], [f64; 2]),
}

fn sub(a: [f64; 2], b: [f64; 2]) -> [f64; 2] {
    [a[0] - b[0], a[1] - b[1]]
}

fn cross(a: [f64; 2], b: [f64; 2]) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

/// Distance from `p` to the segment `ab`.
pub fn segment_distance(p: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    let ab = sub(b, a);
    let ap = sub(p, a);
    let len2 = ab[0] * ab[0] + ab[1] * ab[1];
    let t = if len2 > 0.0 {
        ((ap[0] * ab[0] + ap[1] * ab[1]) / len2).clamp(0.0, 1.0)
    } else {
        0.0
    };
    math::dist(&p, &[a[0] + t * ab[0], a[1] + t * ab[1]])
}

impl Primitive {
    pub fn distance(&self, p: [f64; 2]) -> f64 {
        match *self {
            Primitive::Point(a) => math::dist(&p, &a),
            Primitive::Segment(a, b) => segment_distance(p, a, b),
            Primitive::Triangle(a, b, c) => {
                let area = cross(sub(b, a), sub(c, a));
                if area != 0.0 {
                    let d1 = cross(sub(b, a), sub(p, a));
                    let d2 = cross(sub(c, b), sub(p, b));
                    let d3 = cross(sub(a, c), sub(p, c));
                    let inside = if area > 0.0 {
                        d1 >= 0.0 && d2 >= 0.0 && d3 >= 0.0
                    } else {
                        d1 <= 0.0 && d2 <= 0.0 && d3 <= 0.0
                    };
                    if inside {
                        return 0.0;
                    }
                }
                segment_distance(p, a, b)
                    .min(segment_distance(p, b, c))
                    .min(segment_distance(p, c, a))
            }
        }
    }

    fn vertices(&self) -> ([[f64; 2]; 3], usize) {
        match *self {
            Primitive::Point(a) => ([a, a, a], 1),
            Primitive::Segment(a, b) => ([a, b, b], 2),
            Primitive::Triangle(a, b, c) => ([a, b, c], 3),
        }
    }

    /// Axis-aligned bounding box `(lo, hi)`.
    pub fn bbox(&self) -> ([f64; 2], [f64; 2]) {
        let (v, k) = self.vertices();
        let mut lo = v[0];
        let mut hi = v[0];
        for p in &v[1..k] {
            for d in 0..2 {
                lo[d] = lo[d].min(p[d]);
                hi[d] = hi[d].max(p[d]);
            }
        }
        (lo, hi)
    }

    /// Whether the cell meets the closed box `[lo, hi]` (separating axes).
    pub fn intersects_box(&self, lo: [f64; 2], hi: [f64; 2]) -> bool {
        let (blo, bhi) = self.bbox();
        if blo[0] > hi[0] || bhi[0] < lo[0] || blo[1] > hi[1] || bhi[1] < lo[1] {
            return false;
        }
        let (v, k) = self.vertices();
        let corners = [lo, [hi[0], lo[1]], hi, [lo[0], hi[1]]];
        let edges = match k {
            1 => 0,
            2 => 1,
            _ => 3,
        };
        for e in 0..edges {
            let (a, b) = (v[e], v[(e + 1) % k]);
            let n = [a[1] - b[1], b[0] - a[0]];
            if n == [0.0, 0.0] {
                continue;
            }
            let proj = |p: [f64; 2]| n[0] * p[0] + n[1] * p[1];
            let (mut plo, mut phi) = (f64::INFINITY, f64::NEG_INFINITY);
            for p in &v[..k] {
                plo = plo.min(proj(*p));
                phi = phi.max(proj(*p));
            }
            let (mut qlo, mut qhi) = (f64::INFINITY, f64::NEG_INFINITY);
            for c in corners {
                qlo = qlo.min(proj(c));
                qhi = qhi.max(proj(c));
            }
            if phi < qlo || qhi < plo {
                return false;
            }
        }
        true
    }
}

/// Uniform grid of buckets; each primitive is listed in every bucket its
/// bounding box overlaps.
#[derive(Debug, Clone)]
pub struct PrimitiveGrid {
    prims: Vec<Primitive>,
    origin: [f64; 2],
    cell: f64,
    nx: usize,
    ny: usize,
    buckets: Vec<Vec<u32>>,
}

const MAX_BUCKETS: usize = 1 << 22;

impl PrimitiveGrid {
    /// Builds the grid with buckets of side about `cell` (enlarged if the
    /// grid would be too large).
    pub fn new(prims: Vec<Primitive>, cell: f64) -> Self {
        let mut lo = [f64::INFINITY; 2];
        let mut hi = [f64::NEG_INFINITY; 2];
        for p in &prims {
            let (a, b) = p.bbox();
            for d in 0..2 {
                lo[d] = lo[d].min(a[d]);
                hi[d] = hi[d].max(b[d]);
            }
        }
        if prims.is_empty() {
            lo = [0.0; 2];
            hi = [0.0; 2];
        }
        let extent = (hi[0] - lo[0]).max(hi[1] - lo[1]).max(1e-12);
        let mut cell = if cell > 0.0 { cell } else { extent };
        loop {
            let nx = ((hi[0] - lo[0]) / cell) as usize + 1;
            let ny = ((hi[1] - lo[1]) / cell) as usize + 1;
            if nx * ny <= MAX_BUCKETS {
                break;
            }
            cell *= 2.0;
        }
        let nx = ((hi[0] - lo[0]) / cell) as usize + 1;
        let ny = ((hi[1] - lo[1]) / cell) as usize + 1;
        let mut grid = PrimitiveGrid {
            prims: Vec::new(),
            origin: lo,
            cell,
            nx,
            ny,
            buckets: alloc::vec![Vec::new(); nx * ny],
        };
        for (k, p) in prims.iter().enumerate() {
            let (a, b) = p.bbox();
            let (i0, j0) = grid.cell_of(a);
            let (i1, j1) = grid.cell_of(b);
            for j in j0..=j1 {
                for i in i0..=i1 {
                    grid.buckets[j * nx + i].push(k as u32);
                }
            }
        }
        grid.prims = prims;
        grid
    }

    pub fn len(&self) -> usize {
        self.prims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.prims.is_empty()
    }

    pub fn primitives(&self) -> &[Primitive] {
        &self.prims
    }

    fn coord(&self, x: f64, d: usize, n: usize) -> usize {
        let c = libm::floor((x - self.origin[d]) / self.cell);
        if c <= 0.0 {
            0
        } else {
            (c as usize).min(n - 1)
        }
    }

    fn cell_of(&self, p: [f64; 2]) -> (usize, usize) {
        (self.coord(p[0], 0, self.nx), self.coord(p[1], 1, self.ny))
    }

    /// Distance from `p` to the union of the primitives (`∞` if empty).
    pub fn nearest_distance(&self, p: [f64; 2]) -> f64 {
        if self.prims.is_empty() {
            return f64::INFINITY;
        }
        let (ci, cj) = self.cell_of(p);
        let mut best = f64::INFINITY;
        let mut r = 0usize;
        loop {
            let (i0, i1) = (ci.saturating_sub(r), (ci + r).min(self.nx - 1));
            let (j0, j1) = (cj.saturating_sub(r), (cj + r).min(self.ny - 1));
            for j in j0..=j1 {
                for i in i0..=i1 {
                    let on_ring = i == i0 || i == i1 || j == j0 || j == j1;
                    if !on_ring {
                        continue;
                    }
                    for &k in &self.buckets[j * self.nx + i] {
                        best = best.min(self.prims[k as usize].distance(p));
                    }
                }
            }
            if best == 0.0 {
                return 0.0;
            }
            let whole = i0 == 0 && j0 == 0 && i1 == self.nx - 1 && j1 == self.ny - 1;
            if whole {
                return best;
            }
            // Everything not yet scanned lies outside the scanned block.
            let x0 = self.origin[0] + i0 as f64 * self.cell;
            let x1 = self.origin[0] + (i1 + 1) as f64 * self.cell;
            let y0 = self.origin[1] + j0 as f64 * self.cell;
            let y1 = self.origin[1] + (j1 + 1) as f64 * self.cell;
            let mut reach = f64::INFINITY;
            if i0 > 0 {
                reach = reach.min(p[0] - x0);
            }
            if i1 < self.nx - 1 {
                reach = reach.min(x1 - p[0]);
            }
            if j0 > 0 {
                reach = reach.min(p[1] - y0);
            }
            if j1 < self.ny - 1 {
                reach = reach.min(y1 - p[1]);
            }
            if best <= reach {
                return best;
            }
            r += 1;
        }
    }

    /// Whether any primitive meets the closed box `[lo, hi]`.
    pub fn intersects_box(&self, lo: [f64; 2], hi: [f64; 2]) -> bool {
        if self.prims.is_empty() {
            return false;
        }
        let (i0, j0) = self.cell_of(lo);
        let (i1, j1) = self.cell_of(hi);
        for j in j0..=j1 {
            for i in i0..=i1 {
                for &k in &self.buckets[j * self.nx + i] {
                    if self.prims[k as usize].intersects_box(lo, hi) {
                        return true;
                    }
                }
            }
        }
        false
    }
}
