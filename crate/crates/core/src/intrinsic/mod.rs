//! The neighborhood graph `G_ε` of a sample, its shortest-path metric `d_ε`
//! and the Rips complex built on it.

use alloc::collections::BinaryHeap;
use alloc::vec::Vec;
use core::cmp::Ordering;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::complex::{rips_complex, MetricMatrix, SimplicialComplex};
use crate::geometry::{PointCloud, ShapeSpec};
use crate::{Error, Result};

/// Shortest-path distances in `G_ε`; `f64::INFINITY` between components.
pub type IntrinsicMetric = MetricMatrix;

/// One-skeleton of `Ri_ε(S)` weighted by Euclidean edge length.
#[derive(Debug, Clone, PartialEq)]
pub struct EpsGraph {
    eps: f64,
    adjacency: Vec<Vec<(usize, f64)>>,
}

impl EpsGraph {
    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn len(&self) -> usize {
        self.adjacency.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adjacency.is_empty()
    }

    /// Neighbors of `i` with edge weights, by increasing vertex id.
    pub fn neighbors(&self, i: usize) -> &[(usize, f64)] {
        &self.adjacency[i]
    }

    /// Edges `(i, j, weight)` with `i < j`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(i, nb)| nb.iter().filter(move |e| e.0 > i).map(move |&(j, w)| (i, j, w)))
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Number of connected components.
    pub fn components(&self) -> usize {
        let n = self.len();
        let mut seen = alloc::vec![false; n];
        let mut count = 0;
        let mut stack = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            count += 1;
            seen[s] = true;
            stack.push(s);
            while let Some(u) = stack.pop() {
                for &(v, _) in &self.adjacency[u] {
                    if !seen[v] {
                        seen[v] = true;
                        stack.push(v);
                    }
                }
            }
        }
        count
    }
}

/// Connects every pair of distinct points at Euclidean distance `<= eps`.
pub fn build_eps_graph(cloud: &PointCloud, eps: f64) -> Result<EpsGraph> {
    if !(eps > 0.0) {
        return Err(Error::InvalidArgument(alloc::format!(
            "eps must be positive, got {eps}"
        )));
    }
    let n = cloud.len();
    let mut adjacency = alloc::vec![Vec::new(); n];
    for i in 0..n {
        for j in i + 1..n {
            let d = cloud.distance(i, j);
            if d <= eps {
                adjacency[i].push((j, d));
                adjacency[j].push((i, d));
            }
        }
    }
    for nb in adjacency.iter_mut() {
        nb.sort_by_key(|e| e.0);
    }
    Ok(EpsGraph { eps, adjacency })
}

#[derive(Clone, Copy, PartialEq)]
struct Entry {
    dist: f64,
    vertex: usize,
}

impl Eq for Entry {}

impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        // Reversed for a min-heap.
        other
            .dist
            .total_cmp(&self.dist)
            .then_with(|| other.vertex.cmp(&self.vertex))
    }
}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Distances from one source, with the predecessor of each vertex on a
/// shortest path.
pub type ShortestPaths = (Vec<f64>, Vec<Option<usize>>);

/// Single-source distances and shortest-path predecessors.
pub fn dijkstra(g: &EpsGraph, source: usize) -> ShortestPaths {
    let n = g.len();
    let mut dist = alloc::vec![f64::INFINITY; n];
    let mut pred = alloc::vec![None; n];
    let mut heap = BinaryHeap::new();
    dist[source] = 0.0;
    heap.push(Entry {
        dist: 0.0,
        vertex: source,
    });
    while let Some(Entry { dist: d, vertex: u }) = heap.pop() {
        if d > dist[u] {
            continue;
        }
        for &(v, w) in g.neighbors(u) {
            let nd = d + w;
            if nd < dist[v] {
                dist[v] = nd;
                pred[v] = Some(u);
                heap.push(Entry { dist: nd, vertex: v });
            }
        }
    }
    (dist, pred)
}

/// Vertices of a shortest path from `from` to `to`, both included.
pub fn shortest_path(g: &EpsGraph, from: usize, to: usize) -> Option<Vec<usize>> {
    let (dist, pred) = dijkstra(g, from);
    if dist[to] == f64::INFINITY {
        return None;
    }
    let mut path = alloc::vec![to];
    let mut v = to;
    while let Some(p) = pred[v] {
        path.push(p);
        v = p;
    }
    path.reverse();
    Some(path)
}

/// Makes a matrix of per-source distances symmetric. Sums accumulated from
/// either endpoint may differ in the last bit; the smaller one is kept.
fn symmetrize(n: usize, rows: &mut [f64]) {
    for i in 0..n {
        for j in i + 1..n {
            let d = rows[i * n + j].min(rows[j * n + i]);
            rows[i * n + j] = d;
            rows[j * n + i] = d;
        }
    }
}

/// All-pairs `d_ε` by Dijkstra from every vertex.
pub fn compute_d_eps(g: &EpsGraph) -> IntrinsicMetric {
    let n = g.len();
    let mut data = Vec::with_capacity(n * n);
    for s in 0..n {
        data.extend(dijkstra(g, s).0);
    }
    symmetrize(n, &mut data);
    MetricMatrix::from_raw(n, data)
}

/// Reference all-pairs computation by repeated dense relaxation
/// `D[i][j] = min(D[i][j], D[i][k] + w(k, j))` until nothing changes.
/// Cubic per round; intended for checking [`compute_d_eps`] on small graphs.
pub fn apsp_by_relaxation(g: &EpsGraph) -> IntrinsicMetric {
    let n = g.len();
    let mut w = alloc::vec![f64::INFINITY; n * n];
    for (i, j, d) in g.edges() {
        w[i * n + j] = d;
        w[j * n + i] = d;
    }
    let mut dist = alloc::vec![f64::INFINITY; n * n];
    for i in 0..n {
        dist[i * n + i] = 0.0;
    }
    loop {
        let mut changed = false;
        for i in 0..n {
            for k in 0..n {
                let dik = dist[i * n + k];
                if dik == f64::INFINITY {
                    continue;
                }
                for j in 0..n {
                    let via = dik + w[k * n + j];
                    if via < dist[i * n + j] {
                        dist[i * n + j] = via;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    symmetrize(n, &mut dist);
    MetricMatrix::from_raw(n, dist)
}

/// `Ri^ε_α(S)`: the Rips complex of the sample under `d_ε`.
pub fn intrinsic_rips(
    cloud: &PointCloud,
    metric: &IntrinsicMetric,
    alpha: f64,
    dim_cap: usize,
) -> Result<SimplicialComplex> {
    if metric.len() != cloud.len() {
        return Err(Error::DimensionMismatch {
            expected: cloud.len(),
            found: metric.len(),
        });
    }
    rips_complex(metric, alpha, dim_cap)
}

/// Outcome of [`path_covering_check`].
#[derive(Debug, Clone, PartialEq)]
pub struct PathCoverReport {
    pub trials: usize,
    /// Pairs with `d_L >= ε`, over which `worst_ratio` is taken.
    pub long_pairs: usize,
    /// Largest `d_ε(a, b) / d_L(x, y)` over long pairs.
    pub worst_ratio: f64,
    /// Largest `d_ε(a, b) - 3 d_L(x, y)` over all pairs.
    pub worst_excess: f64,
    /// Longest hop on any shortest path used.
    pub max_hop: f64,
    /// Set when `worst_ratio > 2.99`.
    pub flagged: bool,
    pub passed: bool,
}

/// Empirical check of the path-covering bound: for random pairs `x, y` on the
/// shape with nearest sample points `a, b`, the `G_ε` path from `a` to `b`
/// has hops shorter than `ε` and length `d_ε(a, b) < 3 d_L(x, y) + ε`, and
/// the ratio `d_ε / d_L` stays below 3 once `d_L >= ε`.
///
/// `hausdorff_bound` is a certified bound on `d_H(shape, S)` and must be
/// below `ε/3`.
pub fn path_covering_check(
    spec: &ShapeSpec,
    cloud: &PointCloud,
    hausdorff_bound: f64,
    eps: f64,
    trials: usize,
    seed: u64,
) -> Result<PathCoverReport> {
    if !(hausdorff_bound < eps / 3.0) {
        return Err(Error::Precondition(alloc::format!(
            "d_H bound {hausdorff_bound} is not below eps/3 = {}",
            eps / 3.0
        )));
    }
    if cloud.dim() != spec.dim() {
        return Err(Error::DimensionMismatch {
            expected: spec.dim(),
            found: cloud.dim(),
        });
    }
    let g = build_eps_graph(cloud, eps)?;
    let shape = spec.metric_graph();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = PathCoverReport {
        trials,
        long_pairs: 0,
        worst_ratio: 0.0,
        worst_excess: f64::NEG_INFINITY,
        max_hop: 0.0,
        flagged: false,
        passed: true,
    };
    let mut cache: Vec<Option<ShortestPaths>> = alloc::vec![None; g.len()];
    for _ in 0..trials {
        let (p, q) = (shape.random_location(&mut rng), shape.random_location(&mut rng));
        let length = shape.distance_between(p, q);
        let a = cloud.nearest(&shape.point_at(p));
        let b = cloud.nearest(&shape.point_at(q));
        let (dist, pred) = cache[a].get_or_insert_with(|| dijkstra(&g, a));
        let d = dist[b];
        if d == f64::INFINITY {
            report.passed = false;
            report.worst_excess = f64::INFINITY;
            continue;
        }
        let mut v = b;
        while let Some(u) = pred[v] {
            report.max_hop = report.max_hop.max(cloud.distance(u, v));
            v = u;
        }
        report.worst_excess = report.worst_excess.max(d - 3.0 * length);
        if length >= eps {
            report.long_pairs += 1;
            report.worst_ratio = report.worst_ratio.max(d / length);
        }
    }
    report.flagged = report.worst_ratio > 2.99;
    report.passed &= report.worst_excess < eps && report.worst_ratio < 3.0 && report.max_hop < eps;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::is_subcomplex;
    use crate::geometry::{sample_shape, NoiseModel};
    use alloc::vec;
    use proptest::prelude::*;

    fn collinear() -> PointCloud {
        PointCloud::from_rows(&[[0.0, 0.0], [0.5, 0.0], [1.0, 0.0]]).unwrap()
    }

    #[test]
    fn eps_graph_examples() {
        let two = PointCloud::from_rows(&[[0.0, 0.0], [3.0, 0.0]]).unwrap();
        let g = build_eps_graph(&two, 3.0).unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1, 3.0)]);
        assert_eq!(build_eps_graph(&two, 2.9).unwrap().edge_count(), 0);
        let g = build_eps_graph(&collinear(), 0.6).unwrap();
        assert_eq!(g.edges().map(|e| (e.0, e.1)).collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
        assert!(build_eps_graph(&two, 0.0).is_err());
    }

    #[test]
    fn d_eps_examples() {
        let m = compute_d_eps(&build_eps_graph(&collinear(), 0.6).unwrap());
        assert_eq!(m.get(0, 2), 1.0);
        let m = compute_d_eps(&build_eps_graph(&collinear(), 1.1).unwrap());
        assert_eq!(m.get(0, 2), 1.0);
        let apart = PointCloud::from_rows(&[[0.0, 0.0], [0.1, 0.0], [5.0, 0.0]]).unwrap();
        let g = build_eps_graph(&apart, 0.5).unwrap();
        assert_eq!(g.components(), 2);
        let m = compute_d_eps(&g);
        assert_eq!(m.get(0, 2), f64::INFINITY);
        assert_eq!(m.get(2, 1), f64::INFINITY);
        assert_eq!(shortest_path(&g, 0, 2), None);
        assert_eq!(shortest_path(&g, 1, 0), Some(vec![1, 0]));
    }

    #[test]
    fn intrinsic_rips_examples() {
        let cloud = collinear();
        let m = compute_d_eps(&build_eps_graph(&cloud, 0.6).unwrap());
        assert_eq!(intrinsic_rips(&cloud, &m, 0.4, 2).unwrap().len(), 3);
        let k = intrinsic_rips(&cloud, &m, 1.0, 2).unwrap();
        assert_eq!((k.count(1), k.count(2)), (3, 1));
        let k = intrinsic_rips(&cloud, &m, 0.9, 2).unwrap();
        assert_eq!((k.count(1), k.count(2)), (2, 0));
    }

    #[test]
    fn path_cover_on_circle() {
        let spec = ShapeSpec::circle(1.0);
        let s = sample_shape(&spec, 200, NoiseModel::none()).unwrap();
        let r = path_covering_check(&spec, &s.cloud, s.hausdorff_bound, 0.1, 300, 5).unwrap();
        assert!(r.passed, "{r:?}");
        assert!(r.worst_ratio < 1.5 && r.long_pairs > 200);
        assert!(r.max_hop < 0.1);
        assert!(path_covering_check(&spec, &s.cloud, 0.04, 0.1, 10, 5).is_err());
        // Antipodal sample points: d_ε stays far below 3π.
        let g = build_eps_graph(&s.cloud, 0.1).unwrap();
        assert!(compute_d_eps(&g).get(0, 100) < 3.0 * core::f64::consts::PI);
    }

    fn cloud_strategy(max: usize) -> impl Strategy<Value = PointCloud> {
        proptest::collection::vec((0.0f64..3.0, 0.0f64..3.0), 1..=max)
            .prop_map(|v| PointCloud::from_rows(&v.iter().map(|&(x, y)| [x, y]).collect::<Vec<_>>()).unwrap())
    }

    proptest! {
        #[test]
        fn d_eps_is_a_metric_above_chords(cloud in cloud_strategy(25), eps in 0.2f64..1.5) {
            let g = build_eps_graph(&cloud, eps).unwrap();
            let m = compute_d_eps(&g);
            let n = cloud.len();
            for i in 0..n {
                prop_assert_eq!(m.get(i, i), 0.0);
                for j in 0..n {
                    prop_assert_eq!(m.get(i, j), m.get(j, i));
                    prop_assert!(m.get(i, j) >= cloud.distance(i, j));
                    let edge = i == j || cloud.distance(i, j) <= eps;
                    prop_assert_eq!(m.get(i, j) <= eps, edge);
                }
            }
            prop_assert!(m.triangle_defect() <= 1e-12);
        }

        #[test]
        fn dijkstra_matches_relaxation(cloud in cloud_strategy(30), eps in 0.2f64..1.5) {
            let g = build_eps_graph(&cloud, eps).unwrap();
            prop_assert_eq!(compute_d_eps(&g), apsp_by_relaxation(&g));
        }

        #[test]
        fn intrinsic_rips_inside_euclidean(cloud in cloud_strategy(15), eps in 0.2f64..1.5, alpha in 0.0f64..3.0) {
            let m = compute_d_eps(&build_eps_graph(&cloud, eps).unwrap());
            let intrinsic = intrinsic_rips(&cloud, &m, alpha, 2).unwrap();
            let euclid = rips_complex(&MetricMatrix::euclidean(&cloud), alpha, 2).unwrap();
            prop_assert!(is_subcomplex(&intrinsic, &euclid));
        }
    }
}
