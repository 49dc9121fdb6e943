//! Shadow-based reconstruction of planar embedded graphs.
//!
//! From a sample `S` and scale `ε`, the shadow is the union of the convex
//! hulls of all vertices, pairs and triples of `S` whose pairwise `d_ε`
//! distances are below `5δε`.

use alloc::collections::BinaryHeap;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::complex::{expand_cliques, upper_neighbors, Simplex, SimplicialComplex};
use crate::geometry::{PointCloud, ShapeSpec};
use crate::homology::betti_numbers;
use crate::intrinsic::{build_eps_graph, compute_d_eps, IntrinsicMetric};
use crate::spatial::{Primitive, PrimitiveGrid};
use crate::{Error, Result};

/// Cells of the reconstructed region in the plane.
#[derive(Debug, Clone, PartialEq)]
pub struct ShadowComplex {
    pub points: PointCloud,
    /// Pairs `i < j`, sorted.
    pub segments: Vec<[usize; 2]>,
    /// Triples `i < j < k`, sorted.
    pub triangles: Vec<[usize; 3]>,
    pub eps: f64,
    pub delta: f64,
}

impl ShadowComplex {
    /// The strict cell threshold `5δε`.
    pub fn threshold(&self) -> f64 {
        5.0 * self.delta * self.eps
    }

    /// Upper bound `(5δ + 1/3)ε` on `d_H(G, shadow)` under the sampling
    /// condition of the graph theorem.
    pub fn hausdorff_bound(&self) -> f64 {
        (5.0 * self.delta + 1.0 / 3.0) * self.eps
    }

    /// The cells as an abstract simplicial complex on the sample.
    pub fn complex(&self) -> SimplicialComplex {
        let mut simplices: Vec<Simplex> = (0..self.points.len()).map(Simplex::vertex).collect();
        simplices.extend(self.segments.iter().map(|s| Simplex::from(&s[..])));
        simplices.extend(self.triangles.iter().map(|t| Simplex::from(&t[..])));
        SimplicialComplex::from_closed(simplices)
    }

    fn xy(&self, i: usize) -> [f64; 2] {
        let p = self.points.point(i);
        [p[0], p[1]]
    }

    /// The cells as planar primitives.
    pub fn primitives(&self) -> Vec<Primitive> {
        let mut out: Vec<Primitive> = (0..self.points.len()).map(|i| Primitive::Point(self.xy(i))).collect();
        out.extend(
            self.segments
                .iter()
                .map(|&[a, b]| Primitive::Segment(self.xy(a), self.xy(b))),
        );
        out.extend(
            self.triangles
                .iter()
                .map(|&[a, b, c]| Primitive::Triangle(self.xy(a), self.xy(b), self.xy(c))),
        );
        out
    }
}

fn check_inputs(cloud: &PointCloud, eps: f64, delta: f64) -> Result<()> {
    if cloud.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: cloud.dim(),
        });
    }
    if !(eps > 0.0) {
        return Err(Error::InvalidArgument(alloc::format!(
            "eps must be positive, got {eps}"
        )));
    }
    if !(delta >= 1.0) || !delta.is_finite() {
        return Err(Error::InvalidArgument(alloc::format!(
            "delta must be >= 1, got {delta}"
        )));
    }
    Ok(())
}

/// Shadow cells from a precomputed `d_ε`.
pub fn shadow_from_metric(cloud: &PointCloud, metric: &IntrinsicMetric, eps: f64, delta: f64) -> Result<ShadowComplex> {
    check_inputs(cloud, eps, delta)?;
    if metric.len() != cloud.len() {
        return Err(Error::DimensionMismatch {
            expected: cloud.len(),
            found: metric.len(),
        });
    }
    let threshold = 5.0 * delta * eps;
    let nbrs = upper_neighbors(cloud.len(), |i, j| metric.get(i, j) < threshold);
    let mut segments = Vec::new();
    let mut triangles = Vec::new();
    expand_cliques(
        &nbrs,
        2,
        |_, _, _| Some(0.0),
        |clique, _| match *clique {
            [a, b] => segments.push([a, b]),
            [a, b, c] => triangles.push([a, b, c]),
            _ => {}
        },
    );
    segments.sort_unstable();
    triangles.sort_unstable();
    Ok(ShadowComplex {
        points: cloud.clone(),
        segments,
        triangles,
        eps,
        delta,
    })
}

/// Builds `G_ε`, computes `d_ε`, and emits every vertex, every pair with
/// `d_ε < 5δε` and every triple whose three pairs pass the same test.
pub fn reconstruct_graph(cloud: &PointCloud, eps: f64, delta: f64) -> Result<ShadowComplex> {
    check_inputs(cloud, eps, delta)?;
    let metric = compute_d_eps(&build_eps_graph(cloud, eps)?);
    shadow_from_metric(cloud, &metric, eps, delta)
}

/// `(β0, β1)` of the shadow's cell complex.
pub fn shadow_complex_betti(shadow: &ShadowComplex) -> (usize, usize) {
    let b = betti_numbers(&shadow.complex());
    (b.first().copied().unwrap_or(0), b.get(1).copied().unwrap_or(0))
}

/// `(β0, β1)` of the shadow reconstructed from `cloud`.
pub fn shadow_betti(cloud: &PointCloud, eps: f64, delta: f64) -> Result<(usize, usize)> {
    Ok(shadow_complex_betti(&reconstruct_graph(cloud, eps, delta)?))
}

#[derive(Clone, Copy, PartialEq)]
struct Cell {
    upper: f64,
    center: [f64; 2],
    half: f64,
    to_graph: f64,
}

impl Eq for Cell {}

impl Ord for Cell {
    fn cmp(&self, other: &Self) -> Ordering {
        self.upper.total_cmp(&other.upper)
    }
}

impl PartialOrd for Cell {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Estimate of `sup_{x ∈ region} d(x, target)` within `resolution`, by
/// best-first subdivision of squares covering the region.
fn directed_region_distance(region: &PrimitiveGrid, target: &PrimitiveGrid, resolution: f64) -> f64 {
    let mut lo = [f64::INFINITY; 2];
    let mut hi = [f64::NEG_INFINITY; 2];
    for p in region.primitives() {
        let (a, b) = p.bbox();
        for d in 0..2 {
            lo[d] = lo[d].min(a[d]);
            hi[d] = hi[d].max(b[d]);
        }
    }
    if region.is_empty() {
        return 0.0;
    }
    let sqrt2 = core::f64::consts::SQRT_2;
    let make = |center: [f64; 2], half: f64| {
        let to_graph = target.nearest_distance(center);
        Cell {
            upper: to_graph + half * sqrt2,
            center,
            half,
            to_graph,
        }
    };
    let half = 0.5 * (hi[0] - lo[0]).max(hi[1] - lo[1]).max(resolution);
    let mut heap = BinaryHeap::new();
    heap.push(make([0.5 * (lo[0] + hi[0]), 0.5 * (lo[1] + hi[1])], half));
    let mut best = 0.0f64;
    while let Some(cell) = heap.pop() {
        if cell.upper <= best {
            break;
        }
        let (c, h) = (cell.center, cell.half);
        if !region.intersects_box([c[0] - h, c[1] - h], [c[0] + h, c[1] + h]) {
            continue;
        }
        if region.nearest_distance(c) == 0.0 {
            best = best.max(cell.to_graph);
        }
        if h * sqrt2 <= resolution {
            best = best.max(cell.to_graph);
            continue;
        }
        let q = 0.5 * h;
        for (dx, dy) in [(-q, -q), (q, -q), (-q, q), (q, q)] {
            let child = make([c[0] + dx, c[1] + dy], q);
            if child.upper > best {
                heap.push(child);
            }
        }
    }
    best
}

/// Hausdorff distance between the shadow region and the shape, accurate to
/// within `resolution`.
///
/// The shape is replaced by a polyline with arc-length step `resolution`
/// (exact for straight-edge graphs). The shadow-to-shape direction is found
/// by subdividing squares over the shadow; the shape-to-shadow direction by
/// measuring from shape points spaced `resolution` apart in arc length.
pub fn shadow_hausdorff(shadow: &ShadowComplex, spec: &ShapeSpec, resolution: f64) -> Result<f64> {
    if !(resolution > 0.0) {
        return Err(Error::InvalidArgument(alloc::format!(
            "resolution must be positive, got {resolution}"
        )));
    }
    if !spec.is_planar() {
        return Err(Error::UnsupportedShape("shadow comparison needs a planar shape".into()));
    }
    let graph = spec.metric_graph();
    let segments: Vec<Primitive> = graph
        .polyline_segments(resolution)
        .into_iter()
        .map(|(a, b)| Primitive::Segment(a, b))
        .collect();
    let target = PrimitiveGrid::new(segments, 4.0 * resolution);
    let cell = (0.5 * shadow.threshold()).max(4.0 * resolution);
    let region = PrimitiveGrid::new(shadow.primitives(), cell);
    let forward = directed_region_distance(&region, &target, resolution);
    let backward = graph
        .dense_locations(resolution)
        .into_iter()
        .map(|loc| {
            let p = graph.point_at(loc);
            region.nearest_distance([p[0], p[1]])
        })
        .fold(0.0, f64::max);
    Ok(forward.max(backward))
}

/// Summary of a reconstruction against the theorem's guarantees.
#[derive(Debug, Clone, PartialEq)]
pub struct ReconstructionReport {
    pub beta0: usize,
    pub beta1: usize,
    /// Components of `G_ε`.
    pub components: usize,
    pub eps: f64,
    pub delta: f64,
    pub threshold: f64,
    pub segments: usize,
    pub triangles: usize,
    /// `(5δ + 1/3)ε`.
    pub hausdorff_bound: f64,
    /// Present when a ground-truth shape was supplied.
    pub hausdorff_estimate: Option<f64>,
    pub resolution: f64,
    pub expected_beta1: Option<usize>,
    pub beta1_ok: Option<bool>,
    pub hausdorff_ok: Option<bool>,
}

/// Betti numbers of the shadow and, given the true shape, the comparison
/// with its first Betti number and with the Hausdorff bound.
pub fn reconstruction_report(
    shadow: &ShadowComplex,
    spec: Option<&ShapeSpec>,
    resolution: f64,
) -> Result<ReconstructionReport> {
    let (beta0, beta1) = shadow_complex_betti(shadow);
    let components = build_eps_graph(&shadow.points, shadow.eps)?.components();
    let hausdorff_estimate = spec.map(|s| shadow_hausdorff(shadow, s, resolution)).transpose()?;
    let expected_beta1 = spec.map(ShapeSpec::betti1);
    let bound = shadow.hausdorff_bound();
    Ok(ReconstructionReport {
        beta0,
        beta1,
        components,
        eps: shadow.eps,
        delta: shadow.delta,
        threshold: shadow.threshold(),
        segments: shadow.segments.len(),
        triangles: shadow.triangles.len(),
        hausdorff_bound: bound,
        hausdorff_estimate,
        resolution,
        expected_beta1,
        beta1_ok: expected_beta1.map(|b| b == beta1 && beta0 == 1),
        hausdorff_ok: hausdorff_estimate.map(|h| h < bound),
    })
}
