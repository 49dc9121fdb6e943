//! Ground-truth shapes: parameters, the length metric, and the registry of
//! built-in instances.
//!
//! Every supported shape is a one-dimensional geodesic subspace, so its
//! length metric is the shortest-path metric of a graph whose edges are
//! straight segments or arcs of a closed curve. Closed curves are cut at
//! their self-intersections, which become the graph's nodes.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::PI;

use rand::Rng;

use super::curve::{self, ArcTable, Curve};
use crate::math;
use crate::{Error, Result};

/// Distance from a query point to the shape below which the point counts
/// as lying on it.
pub const ON_SHAPE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub enum ShapeKind {
    Circle {
        center: [f64; 2],
        radius: f64,
    },
    Lemniscate {
        a: f64,
    },
    Lissajous {
        ax: f64,
        ay: f64,
        fx: u32,
        fy: u32,
        phase: f64,
    },
    /// Straight-line embedding of a finite graph in `R^N`.
    EmbeddedGraph {
        vertices: Vec<Vec<f64>>,
        edges: Vec<(usize, usize)>,
    },
}

impl ShapeKind {
    pub fn name(&self) -> &'static str {
        match self {
            ShapeKind::Circle { .. } => "circle",
            ShapeKind::Lemniscate { .. } => "lemniscate",
            ShapeKind::Lissajous { .. } => "lissajous",
            ShapeKind::EmbeddedGraph { .. } => "embedded_graph",
        }
    }

    fn curve(&self) -> Option<Curve> {
        match *self {
            ShapeKind::Circle { center, radius } => Some(Curve::Circle { center, radius }),
            ShapeKind::Lemniscate { a } => Some(Curve::Lemniscate { a }),
            ShapeKind::Lissajous { ax, ay, fx, fy, phase } => Some(Curve::Lissajous { ax, ay, fx, fy, phase }),
            ShapeKind::EmbeddedGraph { .. } => None,
        }
    }
}

/// A ground-truth shape together with its sampling parameters: an upper
/// bound on the distortion, a lower bound on the convexity radius and,
/// for shapes that are embedded graphs, the length of the shortest simple
/// cycle.
#[derive(Debug, Clone, PartialEq)]
pub struct ShapeSpec {
    pub kind: ShapeKind,
    pub distortion: f64,
    pub convexity_radius: f64,
    pub shortest_cycle: Option<f64>,
}

// Distortion upper bounds for the curve shapes. Each is the maximum of
// d_L / |x - y| over pairs of a dense arc-length sample, refined locally
// around the worst pair and rounded up (see `registry_distortion_bounds`).
// The values do not depend on the scale of the curve.
const LEMNISCATE_DISTORTION: f64 = 1.8820;
const LISSAJOUS_DISTORTION: f64 = 2.2200;

/// Frequencies, amplitudes and phase of the built-in Lissajous figure.
pub const LISSAJOUS_PARAMS: (f64, f64, u32, u32, f64) = (1.0, 1.7, 3, 2, 0.01);

impl ShapeSpec {
    /// Checks the parameter invariants.
    pub fn validate(&self) -> Result<()> {
        if !(self.distortion >= 1.0) || !self.distortion.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "distortion must be a finite value >= 1, got {}",
                self.distortion
            )));
        }
        if !(self.convexity_radius > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "convexity radius must be positive, got {}",
                self.convexity_radius
            )));
        }
        if let Some(b) = self.shortest_cycle {
            if !(b > 0.0) {
                return Err(Error::InvalidArgument(format!(
                    "shortest cycle length must be positive, got {b}"
                )));
            }
        }
        match &self.kind {
            ShapeKind::Circle { radius, .. } if !(*radius > 0.0) => {
                Err(Error::InvalidArgument("circle radius must be positive".into()))
            }
            ShapeKind::Lemniscate { a } if !(*a > 0.0) => {
                Err(Error::InvalidArgument("lemniscate size must be positive".into()))
            }
            ShapeKind::Lissajous { fx, fy, ax, ay, .. } => {
                if *fx == 0 || *fy == 0 || gcd(*fx, *fy) != 1 {
                    return Err(Error::InvalidArgument(
                        "Lissajous frequencies must be positive and coprime".into(),
                    ));
                }
                if !(*ax > 0.0 && *ay > 0.0) {
                    return Err(Error::InvalidArgument("Lissajous amplitudes must be positive".into()));
                }
                Ok(())
            }
            ShapeKind::EmbeddedGraph { vertices, edges } => {
                let dim = vertices
                    .first()
                    .map(Vec::len)
                    .ok_or(Error::EmptyInput("graph vertices"))?;
                if dim < 2 || vertices.iter().any(|v| v.len() != dim) {
                    return Err(Error::InvalidArgument(
                        "graph vertices must share a dimension >= 2".into(),
                    ));
                }
                if edges.is_empty() {
                    return Err(Error::EmptyInput("graph edges"));
                }
                for &(i, j) in edges {
                    if i >= vertices.len() || j >= vertices.len() || i == j {
                        return Err(Error::InvalidArgument(format!("bad edge ({i}, {j})")));
                    }
                    if math::dist(&vertices[i], &vertices[j]) == 0.0 {
                        return Err(Error::InvalidArgument(format!("zero-length edge ({i}, {j})")));
                    }
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    pub fn dim(&self) -> usize {
        match &self.kind {
            ShapeKind::EmbeddedGraph { vertices, .. } => vertices.first().map_or(2, Vec::len),
            _ => 2,
        }
    }

    pub fn is_planar(&self) -> bool {
        self.dim() == 2
    }

    /// Unit-free circle: distortion π/2 (antipodal pairs), convexity radius
    /// a quarter of the perimeter.
    pub fn circle(radius: f64) -> Self {
        let perimeter = 2.0 * PI * radius;
        ShapeSpec {
            kind: ShapeKind::Circle {
                center: [0.0, 0.0],
                radius,
            },
            distortion: PI / 2.0,
            convexity_radius: perimeter / 4.0,
            shortest_cycle: Some(perimeter),
        }
    }

    pub fn lemniscate(a: f64) -> Self {
        Self::curve_graph_spec(ShapeKind::Lemniscate { a }, LEMNISCATE_DISTORTION)
    }

    /// The built-in Lissajous figure scaled by `scale`.
    pub fn lissajous(scale: f64) -> Self {
        let (ax, ay, fx, fy, phase) = LISSAJOUS_PARAMS;
        Self::curve_graph_spec(
            ShapeKind::Lissajous {
                ax: ax * scale,
                ay: ay * scale,
                fx,
                fy,
                phase,
            },
            LISSAJOUS_DISTORTION,
        )
    }

    /// Boundary of the square `[0, side]^2`.
    pub fn square(side: f64) -> Self {
        Self::graph(
            alloc::vec![[0.0, 0.0], [side, 0.0], [side, side], [0.0, side]],
            alloc::vec![(0, 1), (1, 2), (2, 3), (3, 0)],
            2.0,
        )
    }

    /// Two squares of the given side sharing one corner.
    pub fn figure_eight(side: f64) -> Self {
        let s = side;
        Self::graph(
            alloc::vec![
                [0.0, 0.0],
                [s, 0.0],
                [s, s],
                [0.0, s],
                [2.0 * s, s],
                [2.0 * s, 2.0 * s],
                [s, 2.0 * s],
            ],
            alloc::vec![(0, 1), (1, 2), (2, 3), (3, 0), (2, 4), (4, 5), (5, 6), (6, 2)],
            2.0,
        )
    }

    /// A `2 side x side` rectangle split by a middle edge.
    pub fn theta(side: f64) -> Self {
        let s = side;
        Self::graph(
            alloc::vec![[0.0, 0.0], [s, 0.0], [2.0 * s, 0.0], [2.0 * s, s], [s, s], [0.0, s]],
            alloc::vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (1, 4)],
            2.0,
        )
    }

    /// Planar straight-line graph with a caller-supplied distortion bound;
    /// the shortest cycle is computed and the convexity radius set to a
    /// quarter of it.
    pub fn graph(vertices: Vec<[f64; 2]>, edges: Vec<(usize, usize)>, distortion: f64) -> Self {
        let kind = ShapeKind::EmbeddedGraph {
            vertices: vertices.iter().map(|v| v.to_vec()).collect(),
            edges,
        };
        let graph = ShapeGraph::build(&kind);
        let b = graph.shortest_cycle();
        ShapeSpec {
            kind,
            distortion,
            convexity_radius: b.map_or(f64::INFINITY, |b| b / 4.0),
            shortest_cycle: b,
        }
    }

    fn curve_graph_spec(kind: ShapeKind, distortion: f64) -> Self {
        let graph = ShapeGraph::build(&kind);
        let b = graph.shortest_cycle().expect("closed curves always contain a cycle");
        ShapeSpec {
            kind,
            distortion,
            convexity_radius: b / 4.0,
            shortest_cycle: Some(b),
        }
    }

    /// Built-in shape by name, scaled by `size` (radius, half-width, or edge
    /// length depending on the kind).
    pub fn builtin(name: &str, size: f64) -> Result<Self> {
        let spec = match name {
            "circle" => Self::circle(size),
            "lemniscate" => Self::lemniscate(size),
            "lissajous" => Self::lissajous(size),
            "square" => Self::square(size),
            "figure-eight" | "figure_eight" => Self::figure_eight(size),
            "theta" => Self::theta(size),
            other => return Err(Error::UnsupportedShape(String::from(other))),
        };
        spec.validate()?;
        Ok(spec)
    }

    /// First Betti number of the shape, from its graph structure.
    pub fn betti1(&self) -> usize {
        ShapeGraph::build(&self.kind).betti1()
    }

    pub fn metric_graph(&self) -> ShapeGraph {
        ShapeGraph::build(&self.kind)
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum EdgeGeometry {
    Segment {
        a: Vec<f64>,
        b: Vec<f64>,
    },
    /// Arc of the shape's curve starting at arc position `start`.
    Arc {
        start: f64,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ShapeEdge {
    pub from: usize,
    pub to: usize,
    pub length: f64,
    geometry: EdgeGeometry,
}

/// A point of the shape given by an edge and the arc length from the
/// edge's `from` node.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Location {
    pub edge: usize,
    pub offset: f64,
}

/// The shape as a metric graph.
#[derive(Debug, Clone)]
pub struct ShapeGraph {
    dim: usize,
    nodes: Vec<Vec<f64>>,
    edges: Vec<ShapeEdge>,
    table: Option<ArcTable>,
    node_distance: Vec<f64>,
}

impl ShapeGraph {
    pub fn build(kind: &ShapeKind) -> Self {
        let (dim, nodes, edges, table): (usize, Vec<Vec<f64>>, Vec<ShapeEdge>, Option<ArcTable>) = match kind {
            ShapeKind::EmbeddedGraph { vertices, edges } => {
                let dim = vertices.first().map_or(2, Vec::len);
                let edges = edges
                    .iter()
                    .map(|&(i, j)| ShapeEdge {
                        from: i,
                        to: j,
                        length: math::dist(&vertices[i], &vertices[j]),
                        geometry: EdgeGeometry::Segment {
                            a: vertices[i].clone(),
                            b: vertices[j].clone(),
                        },
                    })
                    .collect();
                (dim, vertices.clone(), edges, None)
            }
            _ => {
                let curve = kind.curve().expect("curve kinds");
                let table = ArcTable::new(curve, ArcTable::DEFAULT_SEGMENTS);
                let crossings = curve::self_intersections(&table);
                let length = table.length();
                // (arc position, node id) for both passes through each crossing.
                let mut cuts: Vec<(f64, usize)> = Vec::new();
                let mut nodes = Vec::new();
                for (id, &(t1, t2)) in crossings.iter().enumerate() {
                    cuts.push((table.arc_at(t1), id));
                    cuts.push((table.arc_at(t2), id));
                    nodes.push(table.curve().position(t1).to_vec());
                }
                if cuts.is_empty() {
                    cuts.push((0.0, 0));
                    nodes.push(table.curve().position(0.0).to_vec());
                }
                cuts.sort_by(|a, b| a.0.total_cmp(&b.0));
                let m = cuts.len();
                let edges = (0..m)
                    .map(|k| {
                        let (s0, from) = cuts[k];
                        let (s1, to) = cuts[(k + 1) % m];
                        let span = if k + 1 == m { s1 + length - s0 } else { s1 - s0 };
                        ShapeEdge {
                            from,
                            to,
                            length: span,
                            geometry: EdgeGeometry::Arc { start: s0 },
                        }
                    })
                    .collect();
                (2, nodes, edges, Some(table))
            }
        };
        let node_distance = node_apsp(nodes.len(), &edges);
        ShapeGraph {
            dim,
            nodes,
            edges,
            table,
            node_distance,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nodes(&self) -> &[Vec<f64>] {
        &self.nodes
    }

    pub fn edges(&self) -> &[ShapeEdge] {
        &self.edges
    }

    pub fn total_length(&self) -> f64 {
        self.edges.iter().map(|e| e.length).sum()
    }

    /// Whether the shape is a single closed curve (sampled by arc length
    /// along the whole curve rather than per edge).
    pub fn is_closed_curve(&self) -> bool {
        self.table.is_some()
    }

    pub fn betti1(&self) -> usize {
        let components = self.node_components();
        self.edges.len() + components - self.nodes.len()
    }

    fn node_components(&self) -> usize {
        let n = self.nodes.len();
        (0..n)
            .filter(|&i| (0..i).all(|j| !self.node_distance[j * n + i].is_finite()))
            .count()
    }

    /// Length of the shortest simple cycle, if any.
    pub fn shortest_cycle(&self) -> Option<f64> {
        let n = self.nodes.len();
        let mut best = f64::INFINITY;
        for (k, e) in self.edges.iter().enumerate() {
            if e.from == e.to {
                best = best.min(e.length);
                continue;
            }
            // Shortest path between the endpoints avoiding edge k.
            let others: Vec<ShapeEdge> = self
                .edges
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != k)
                .map(|(_, e)| e.clone())
                .collect();
            let d = node_apsp(n, &others);
            best = best.min(e.length + d[e.from * n + e.to]);
        }
        best.is_finite().then_some(best)
    }

    pub fn point_at(&self, loc: Location) -> Vec<f64> {
        let e = &self.edges[loc.edge];
        match &e.geometry {
            EdgeGeometry::Segment { a, b } => {
                let t = if e.length > 0.0 { loc.offset / e.length } else { 0.0 };
                a.iter().zip(b).map(|(x, y)| x + t * (y - x)).collect()
            }
            EdgeGeometry::Arc { start } => {
                let table = self.table.as_ref().expect("arc edges have a table");
                table.point_at_arc(start + loc.offset).to_vec()
            }
        }
    }

    /// Finds the location of a point lying on the shape.
    pub fn locate(&self, x: &[f64]) -> Result<Location> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: x.len(),
            });
        }
        let (loc, distance) = match &self.table {
            Some(table) => {
                let (t, distance) = table.project(x);
                (self.location_of_arc(table.arc_at(t)), distance)
            }
            None => self
                .edges
                .iter()
                .enumerate()
                .map(|(k, e)| {
                    let EdgeGeometry::Segment { a, b } = &e.geometry else {
                        unreachable!()
                    };
                    let (t, d) = project_to_segment(x, a, b);
                    (
                        Location {
                            edge: k,
                            offset: t * e.length,
                        },
                        d,
                    )
                })
                .min_by(|p, q| p.1.total_cmp(&q.1))
                .expect("graphs have edges"),
        };
        if distance > ON_SHAPE_TOLERANCE {
            return Err(Error::NotOnShape { distance });
        }
        Ok(loc)
    }

    fn location_of_arc(&self, s: f64) -> Location {
        let length = self.total_length();
        let s = math::rem_euclid(s, length);
        for (k, e) in self.edges.iter().enumerate() {
            let EdgeGeometry::Arc { start } = e.geometry else {
                unreachable!()
            };
            let mut offset = s - start;
            if offset < 0.0 {
                offset += length;
            }
            if offset <= e.length {
                return Location { edge: k, offset };
            }
        }
        Location {
            edge: self.edges.len() - 1,
            offset: self.edges.last().unwrap().length,
        }
    }

    /// Length-metric distance between two located points.
    pub fn distance_between(&self, p: Location, q: Location) -> f64 {
        let n = self.nodes.len();
        let (ep, eq) = (&self.edges[p.edge], &self.edges[q.edge]);
        let mut best = f64::INFINITY;
        if p.edge == q.edge {
            best = (p.offset - q.offset).abs();
        }
        let ends = |e: &ShapeEdge, offset: f64| [(e.from, offset), (e.to, e.length - offset)];
        for (a, da) in ends(ep, p.offset) {
            for (b, db) in ends(eq, q.offset) {
                best = best.min(da + self.node_distance[a * n + b] + db);
            }
        }
        best
    }

    /// Length-metric distance between two points on the shape.
    pub fn distance(&self, x: &[f64], y: &[f64]) -> Result<f64> {
        Ok(self.distance_between(self.locate(x)?, self.locate(y)?))
    }

    /// Location at arc length `s` along the concatenation of all edges.
    pub fn location_at_length(&self, s: f64) -> Location {
        let mut s = s.clamp(0.0, self.total_length());
        for (k, e) in self.edges.iter().enumerate() {
            if s <= e.length {
                return Location { edge: k, offset: s };
            }
            s -= e.length;
        }
        let k = self.edges.len() - 1;
        Location {
            edge: k,
            offset: self.edges[k].length,
        }
    }

    /// Uniformly random point with respect to arc length.
    pub fn random_location<R: Rng>(&self, rng: &mut R) -> Location {
        self.location_at_length(rng.gen::<f64>() * self.total_length())
    }

    /// Samples spaced at most `step` apart along every edge, edge
    /// endpoints included.
    pub fn dense_locations(&self, step: f64) -> Vec<Location> {
        let mut out = Vec::new();
        for (k, e) in self.edges.iter().enumerate() {
            let pieces = libm::ceil(e.length / step).max(1.0) as usize;
            for i in 0..=pieces {
                out.push(Location {
                    edge: k,
                    offset: e.length * i as f64 / pieces as f64,
                });
            }
        }
        out
    }

    /// Polyline approximation of every edge with chords at most `step`
    /// long, as 2D segments.
    pub fn polyline_segments(&self, step: f64) -> Vec<([f64; 2], [f64; 2])> {
        let mut out = Vec::new();
        for (k, e) in self.edges.iter().enumerate() {
            let pieces = match e.geometry {
                EdgeGeometry::Segment { .. } => 1,
                EdgeGeometry::Arc { .. } => libm::ceil(e.length / step).max(1.0) as usize,
            };
            let mut prev = self.point_at(Location { edge: k, offset: 0.0 });
            for i in 1..=pieces {
                let next = self.point_at(Location {
                    edge: k,
                    offset: e.length * i as f64 / pieces as f64,
                });
                out.push(([prev[0], prev[1]], [next[0], next[1]]));
                prev = next;
            }
        }
        out
    }
}

fn node_apsp(n: usize, edges: &[ShapeEdge]) -> Vec<f64> {
    let mut d = alloc::vec![f64::INFINITY; n * n];
    for i in 0..n {
        d[i * n + i] = 0.0;
    }
    for e in edges {
        let (i, j) = (e.from, e.to);
        if e.length < d[i * n + j] {
            d[i * n + j] = e.length;
            d[j * n + i] = e.length;
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i * n + k] + d[k * n + j];
                if via < d[i * n + j] {
                    d[i * n + j] = via;
                }
            }
        }
    }
    d
}

/// Parameter in `[0, 1]` of the closest point of segment `ab` and the
/// distance to it.
pub(crate) fn project_to_segment(x: &[f64], a: &[f64], b: &[f64]) -> (f64, f64) {
    let ab2: f64 = a.iter().zip(b).map(|(p, q)| (q - p) * (q - p)).sum();
    let t = if ab2 > 0.0 {
        (x.iter().zip(a).zip(b).map(|((x, p), q)| (x - p) * (q - p)).sum::<f64>() / ab2).clamp(0.0, 1.0)
    } else {
        0.0
    };
    let d2: f64 = x
        .iter()
        .zip(a)
        .zip(b)
        .map(|((x, p), q)| {
            let c = p + t * (q - p);
            (x - c) * (x - c)
        })
        .sum();
    (t, math::sqrt(d2))
}

/// Length-metric distance between two points on the shape.
pub fn geodesic_distance(spec: &ShapeSpec, x: &[f64], y: &[f64]) -> Result<f64> {
    spec.metric_graph().distance(x, y)
}

/// Diagnostic lower bound on the distortion: the largest ratio of length
/// metric to Euclidean distance over all pairs of a sample spaced `step`
/// apart along the shape.
pub fn estimate_distortion(graph: &ShapeGraph, step: f64) -> f64 {
    let locs = graph.dense_locations(step);
    let pts: Vec<Vec<f64>> = locs.iter().map(|&l| graph.point_at(l)).collect();
    let mut best = 1.0f64;
    for i in 0..locs.len() {
        for j in i + 1..locs.len() {
            let e = math::dist(&pts[i], &pts[j]);
            if e > 1e-9 * step {
                best = best.max(graph.distance_between(locs[i], locs[j]) / e);
            }
        }
    }
    best
}
