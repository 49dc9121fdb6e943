use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::filtration::{entry_order, Filtration};
use super::metric::MetricMatrix;
use super::simplex::{Simplex, SimplicialComplex};
use crate::geometry::{enclosing_radius, Location, PointCloud, ShapeSpec};
use crate::{Error, Result};

/// Default dimension cap: enough for H0 and H1.
pub const DEFAULT_DIM_CAP: usize = 2;

/// Higher-indexed neighbors of every vertex.
pub(crate) fn upper_neighbors(n: usize, mut adjacent: impl FnMut(usize, usize) -> bool) -> Vec<Vec<usize>> {
    (0..n)
        .map(|i| (i + 1..n).filter(|&j| adjacent(i, j)).collect())
        .collect()
}

fn intersect_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len().min(b.len()));
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            core::cmp::Ordering::Less => i += 1,
            core::cmp::Ordering::Greater => j += 1,
            core::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Enumerates the cliques of a graph (given by upper neighbor lists) with at
/// most `cap + 1` vertices. `extend(clique, w, value)` returns the value of
/// `clique + w`, or `None` to prune it together with all its extensions.
pub(crate) fn expand_cliques<X, E>(nbrs: &[Vec<usize>], cap: usize, mut extend: X, mut emit: E)
where
    X: FnMut(&[usize], usize, f64) -> Option<f64>,
    E: FnMut(&[usize], f64),
{
    fn recurse<X, E>(
        nbrs: &[Vec<usize>],
        cap: usize,
        current: &mut Vec<usize>,
        candidates: &[usize],
        value: f64,
        extend: &mut X,
        emit: &mut E,
    ) where
        X: FnMut(&[usize], usize, f64) -> Option<f64>,
        E: FnMut(&[usize], f64),
    {
        for (k, &w) in candidates.iter().enumerate() {
            let Some(v) = extend(current, w, value) else {
                continue;
            };
            current.push(w);
            emit(current, v);
            if current.len() <= cap {
                let next = intersect_sorted(&candidates[k + 1..], &nbrs[w]);
                if !next.is_empty() {
                    recurse(nbrs, cap, current, &next, v, extend, emit);
                }
            }
            current.pop();
        }
    }

    let mut current = Vec::with_capacity(cap + 1);
    for v in 0..nbrs.len() {
        current.push(v);
        emit(&current, 0.0);
        if cap > 0 {
            recurse(nbrs, cap, &mut current, &nbrs[v], 0.0, &mut extend, &mut emit);
        }
        current.pop();
    }
}

fn check_scale(alpha: f64) -> Result<()> {
    if alpha >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(alloc::format!(
            "scale must be >= 0, got {alpha}"
        )))
    }
}

fn rips_entries(metric: &MetricMatrix, alpha: f64, cap: usize) -> Vec<(Simplex, f64)> {
    let nbrs = upper_neighbors(metric.len(), |i, j| metric.get(i, j) <= alpha);
    let mut entries = Vec::new();
    expand_cliques(
        &nbrs,
        cap,
        |clique, w, value| Some(clique.iter().fold(value, |m, &u| m.max(metric.get(u, w)))),
        |clique, value| entries.push((Simplex::from_sorted(clique.to_vec()), value)),
    );
    entries
}

/// Vietoris-Rips complex: all simplices of diameter at most `alpha`.
pub fn rips_complex(metric: &MetricMatrix, alpha: f64, dim_cap: usize) -> Result<SimplicialComplex> {
    check_scale(alpha)?;
    let entries = rips_entries(metric, alpha, dim_cap);
    Ok(SimplicialComplex::from_closed(
        entries.into_iter().map(|e| e.0).collect(),
    ))
}

/// Rips filtration up to `alpha_max`; a simplex enters at its diameter.
pub fn rips_filtration(metric: &MetricMatrix, alpha_max: f64, dim_cap: usize) -> Result<Filtration> {
    check_scale(alpha_max)?;
    let mut entries = rips_entries(metric, alpha_max, dim_cap);
    entries.sort_unstable_by(entry_order);
    Ok(Filtration::from_sorted(entries, dim_cap, alpha_max))
}

/// Čech filtration up to `alpha_max`; a simplex enters at the radius of the
/// minimal enclosing ball of its vertices.
pub fn cech_filtration(cloud: &PointCloud, alpha_max: f64, dim_cap: usize) -> Result<Filtration> {
    check_scale(alpha_max)?;
    let nbrs = upper_neighbors(cloud.len(), |i, j| 0.5 * cloud.distance(i, j) <= alpha_max);
    let mut entries = Vec::new();
    let mut points: Vec<&[f64]> = Vec::with_capacity(dim_cap + 1);
    expand_cliques(
        &nbrs,
        dim_cap,
        |clique, w, value| {
            points.clear();
            points.extend(clique.iter().map(|&u| cloud.point(u)));
            points.push(cloud.point(w));
            let r = enclosing_radius(&points).max(value);
            (r <= alpha_max).then_some(r)
        },
        |clique, value| entries.push((Simplex::from_sorted(clique.to_vec()), value)),
    );
    // Rounding in the ball computation can put a face an ulp above a
    // coface; lift every value to the maximum over its faces.
    entries.sort_unstable_by(|a, b| super::simplex::dim_lex(&a.0, &b.0));
    let mut value_of: BTreeMap<Simplex, f64> = BTreeMap::new();
    for (s, v) in entries.iter_mut() {
        if s.dim() > 1 {
            for f in s.facets() {
                *v = v.max(value_of.get(&f).copied().unwrap_or(f64::INFINITY));
            }
        }
        if s.dim() < dim_cap {
            value_of.insert(s.clone(), *v);
        }
    }
    entries.retain(|e| e.1 <= alpha_max);
    entries.sort_unstable_by(entry_order);
    Ok(Filtration::from_sorted(entries, dim_cap, alpha_max))
}

/// Čech complex: simplices whose minimal enclosing ball has radius `< alpha`.
pub fn cech_complex(cloud: &PointCloud, alpha: f64, dim_cap: usize) -> Result<SimplicialComplex> {
    if !(alpha > 0.0) {
        return Err(Error::InvalidArgument(alloc::format!(
            "Čech scale must be > 0, got {alpha}"
        )));
    }
    Ok(cech_filtration(cloud, alpha, dim_cap)?.complex_below(alpha))
}

fn locate_all(spec: &ShapeSpec, cloud: &PointCloud) -> Result<(crate::geometry::ShapeGraph, Vec<Location>)> {
    if cloud.dim() != spec.dim() {
        return Err(Error::DimensionMismatch {
            expected: spec.dim(),
            found: cloud.dim(),
        });
    }
    let graph = spec.metric_graph();
    let locations = cloud.iter().map(|p| graph.locate(p)).collect::<Result<Vec<_>>>()?;
    Ok((graph, locations))
}

/// Length-metric distances between points lying on a shape.
pub fn geodesic_metric(spec: &ShapeSpec, cloud: &PointCloud) -> Result<MetricMatrix> {
    let (graph, locations) = locate_all(spec, cloud)?;
    Ok(MetricMatrix::from_fn(cloud.len(), |i, j| {
        graph.distance_between(locations[i], locations[j])
    }))
}

/// Rips complex of on-shape points under the length metric of the shape.
pub fn intrinsic_rips_on_shape(
    spec: &ShapeSpec,
    cloud: &PointCloud,
    alpha: f64,
    dim_cap: usize,
) -> Result<SimplicialComplex> {
    rips_complex(&geodesic_metric(spec, cloud)?, alpha, dim_cap)
}

/// Length-metric Čech complex of on-shape points, as the nerve of open
/// `alpha`-balls restricted to witnesses: the points themselves plus a
/// sample of the shape with arc-length step `resolution`. A simplex is
/// present when some witness lies within `alpha` of all its vertices.
pub fn intrinsic_cech_on_shape(
    spec: &ShapeSpec,
    cloud: &PointCloud,
    alpha: f64,
    dim_cap: usize,
    resolution: f64,
) -> Result<SimplicialComplex> {
    if !(alpha > 0.0) || !(resolution > 0.0) {
        return Err(Error::InvalidArgument("scale and resolution must be > 0".into()));
    }
    let (graph, locations) = locate_all(spec, cloud)?;
    let mut witnesses = graph.dense_locations(resolution);
    witnesses.extend_from_slice(&locations);
    let mut found: Vec<Simplex> = Vec::new();
    let mut covered: Vec<usize> = Vec::new();
    for w in witnesses {
        covered.clear();
        covered.extend((0..locations.len()).filter(|&i| graph.distance_between(w, locations[i]) < alpha));
        let nbrs: Vec<Vec<usize>> = (0..covered.len()).map(|k| (k + 1..covered.len()).collect()).collect();
        expand_cliques(
            &nbrs,
            dim_cap,
            |_, _, _| Some(0.0),
            |clique, _| found.push(Simplex::from_sorted(clique.iter().map(|&k| covered[k]).collect())),
        );
        found.sort_unstable_by(super::simplex::dim_lex);
        found.dedup();
    }
    Ok(SimplicialComplex::from_closed(found))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::is_subcomplex;
    use crate::geometry::{sample_shape, NoiseModel};
    use alloc::vec;
    use core::f64::consts::PI;
    use proptest::prelude::*;

    fn square() -> PointCloud {
        PointCloud::from_rows(&[[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]).unwrap()
    }

    fn equilateral() -> PointCloud {
        PointCloud::from_rows(&[[0.0, 0.0], [1.0, 0.0], [0.5, libm::sqrt(3.0) / 2.0]]).unwrap()
    }

    #[test]
    fn rips_non_strict_threshold() {
        let m = MetricMatrix::from_fn(3, |_, _| 1.0);
        assert_eq!(rips_complex(&m, 1.0, 2).unwrap().len(), 7);
        assert_eq!(rips_complex(&m, 0.99, 2).unwrap().len(), 3);
        assert!(rips_complex(&m, -1.0, 2).is_err());
    }

    #[test]
    fn rips_on_square() {
        let k = rips_complex(&MetricMatrix::euclidean(&square()), 1.0, 2).unwrap();
        assert_eq!((k.count(0), k.count(1), k.count(2)), (4, 4, 0));
        assert!(!k.contains(&Simplex::from(&[0, 2][..])));
    }

    #[test]
    fn rips_filtration_values() {
        let two = PointCloud::from_rows(&[[0.0, 0.0], [3.0, 0.0]]).unwrap();
        let f = rips_filtration(&MetricMatrix::euclidean(&two), 5.0, 1).unwrap();
        assert_eq!(f.values().collect::<Vec<_>>(), vec![0.0, 0.0, 3.0]);

        let f = rips_filtration(&MetricMatrix::euclidean(&square()), 2.0, 2).unwrap();
        let mut edges: Vec<f64> = f.entries().iter().filter(|e| e.0.dim() == 1).map(|e| e.1).collect();
        edges.sort_by(f64::total_cmp);
        let r2 = libm::sqrt(2.0);
        assert_eq!(edges, vec![1.0, 1.0, 1.0, 1.0, r2, r2]);
        assert!(f.entries().iter().filter(|e| e.0.dim() == 2).all(|e| e.1 == r2));
        assert_eq!(f.entries().iter().filter(|e| e.0.dim() == 2).count(), 4);

        let f = rips_filtration(&MetricMatrix::euclidean(&square()), 0.0, 2).unwrap();
        assert_eq!(f.len(), 4);
    }

    #[test]
    fn cech_examples() {
        let k = cech_complex(&equilateral(), 0.58, 2).unwrap();
        assert_eq!(k.count(2), 1);
        let k = cech_complex(&equilateral(), 0.55, 2).unwrap();
        assert_eq!((k.count(1), k.count(2)), (3, 0));
        // Open balls: radius exactly 0.5 does not connect points at distance 1.
        let pair = PointCloud::from_rows(&[[0.0, 0.0], [1.0, 0.0]]).unwrap();
        assert_eq!(cech_complex(&pair, 0.5, 2).unwrap().count(1), 0);
        assert_eq!(cech_complex(&pair, 0.5000001, 2).unwrap().count(1), 1);
        let cloud = square();
        let k = cech_complex(&cloud, cloud.diameter(), 2).unwrap();
        assert_eq!(k.len(), 4 + 6 + 4);
        assert!(cech_complex(&cloud, 0.0, 2).is_err());
    }

    #[test]
    fn intrinsic_rips_on_circle() {
        let spec = ShapeSpec::circle(1.0);
        let pair = PointCloud::from_rows(&[[1.0, 0.0], [-1.0, 0.0]]).unwrap();
        assert_eq!(intrinsic_rips_on_shape(&spec, &pair, PI, 2).unwrap().count(1), 1);
        assert_eq!(intrinsic_rips_on_shape(&spec, &pair, 3.0, 2).unwrap().count(1), 0);
        let four = sample_shape(&spec, 4, NoiseModel::none()).unwrap().cloud;
        let k = intrinsic_rips_on_shape(&spec, &four, PI / 2.0 + 1e-12, 2).unwrap();
        assert_eq!((k.count(1), k.count(2)), (4, 0));
        let off = PointCloud::from_rows(&[[0.0, 0.0]]).unwrap();
        assert!(matches!(
            intrinsic_rips_on_shape(&spec, &off, 1.0, 2),
            Err(Error::NotOnShape { .. })
        ));
    }

    #[test]
    fn intrinsic_cech_chain_on_circle() {
        let spec = ShapeSpec::circle(1.0);
        let cloud = sample_shape(&spec, 7, NoiseModel::none()).unwrap().cloud;
        let delta = spec.distortion;
        for alpha in [0.3, 0.5, 0.9, 1.4] {
            let intrinsic = intrinsic_cech_on_shape(&spec, &cloud, alpha, 2, 1e-3).unwrap();
            let euclid = cech_complex(&cloud, alpha, 2).unwrap();
            let wide = intrinsic_cech_on_shape(&spec, &cloud, 2.0 * delta * alpha, 2, 1e-3).unwrap();
            assert!(is_subcomplex(&intrinsic, &euclid), "alpha {alpha}");
            assert!(is_subcomplex(&euclid, &wide), "alpha {alpha}");
        }
    }

    fn cloud_strategy(max: usize) -> impl Strategy<Value = PointCloud> {
        proptest::collection::vec((-5.0f64..5.0, -5.0f64..5.0), 1..max)
            .prop_map(|v| PointCloud::from_rows(&v.iter().map(|&(x, y)| [x, y]).collect::<Vec<_>>()).unwrap())
    }

    proptest! {
        #[test]
        fn complexes_are_closed_and_monotone(cloud in cloud_strategy(12), a in 0.1f64..4.0, b in 0.1f64..4.0) {
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            let m = MetricMatrix::euclidean(&cloud);
            let r_lo = rips_complex(&m, lo, 2).unwrap();
            let r_hi = rips_complex(&m, hi, 2).unwrap();
            prop_assert!(r_lo.is_closed() && r_hi.is_closed());
            prop_assert!(is_subcomplex(&r_lo, &r_hi));
            let c_lo = cech_complex(&cloud, lo, 2).unwrap();
            let c_hi = cech_complex(&cloud, hi, 2).unwrap();
            prop_assert!(c_lo.is_closed() && c_hi.is_closed());
            prop_assert!(is_subcomplex(&c_lo, &c_hi));
            // Pairwise-intersecting open balls of radius lo are < 2 lo apart.
            prop_assert!(is_subcomplex(&c_lo, &rips_complex(&m, 2.0 * lo, 2).unwrap()));
        }

        #[test]
        fn filtrations_respect_faces(cloud in cloud_strategy(10), alpha in 0.0f64..6.0) {
            let f = rips_filtration(&MetricMatrix::euclidean(&cloud), alpha, 2).unwrap();
            prop_assert!(f.positions().is_ok());
            prop_assert_eq!(f.complex_at(alpha), rips_complex(&MetricMatrix::euclidean(&cloud), alpha, 2).unwrap());
            let f = cech_filtration(&cloud, alpha, 2).unwrap();
            prop_assert!(f.positions().is_ok());
            prop_assert!(f.complex_at(alpha).is_closed());
        }

        #[test]
        fn euclidean_and_intrinsic_rips_nest(seed in 0u64..1000, count in 2usize..9, alpha in 0.05f64..3.5) {
            use rand::{Rng, SeedableRng};
            let spec = ShapeSpec::circle(1.0);
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let rows: Vec<[f64; 2]> = (0..count)
                .map(|_| {
                    let t: f64 = rng.gen::<f64>() * 2.0 * PI;
                    [libm::cos(t), libm::sin(t)]
                })
                .collect();
            let cloud = PointCloud::from_rows(&rows).unwrap();
            let intrinsic = intrinsic_rips_on_shape(&spec, &cloud, alpha, 2).unwrap();
            let euclid = rips_complex(&MetricMatrix::euclidean(&cloud), alpha, 2).unwrap();
            let wide = intrinsic_rips_on_shape(&spec, &cloud, spec.distortion * alpha, 2).unwrap();
            prop_assert!(is_subcomplex(&intrinsic, &euclid));
            prop_assert!(is_subcomplex(&euclid, &wide));
        }
    }
}
