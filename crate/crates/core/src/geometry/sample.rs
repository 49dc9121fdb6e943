use alloc::vec::Vec;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::point::PointCloud;
use super::shape::{Location, ShapeGraph, ShapeSpec};
use crate::math;
use crate::{Error, Result};

/// Bounded noise: every sample point is displaced in a uniformly random
/// direction by a distance drawn uniformly from `[0, magnitude]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseModel {
    pub magnitude: f64,
    pub seed: u64,
}

impl NoiseModel {
    pub fn none() -> Self {
        NoiseModel {
            magnitude: 0.0,
            seed: 0,
        }
    }

    pub fn new(magnitude: f64, seed: u64) -> Self {
        NoiseModel { magnitude, seed }
    }
}

/// A sample together with the certified Hausdorff bound to its shape.
#[derive(Debug, Clone)]
pub struct Sample {
    pub cloud: PointCloud,
    /// Largest arc-length gap between consecutive sample positions.
    pub spacing: f64,
    /// `spacing / 2 + noise magnitude`, an upper bound on `d_H(shape, cloud)`.
    pub hausdorff_bound: f64,
}

fn random_direction<R: Rng>(rng: &mut R, dim: usize) -> Vec<f64> {
    loop {
        // Box-Muller normals give an isotropic direction.
        let mut v: Vec<f64> = (0..dim)
            .map(|_| {
                let u1: f64 = 1.0 - rng.gen::<f64>();
                let u2: f64 = rng.gen();
                math::sqrt(-2.0 * libm::log(u1)) * libm::cos(core::f64::consts::TAU * u2)
            })
            .collect();
        let norm = math::sqrt(v.iter().map(|x| x * x).sum());
        if norm > 1e-12 {
            v.iter_mut().for_each(|x| *x /= norm);
            return v;
        }
    }
}

/// Positions of `count` samples: arc-length uniform along a closed curve,
/// or one per graph vertex plus interior points spread over the edges so
/// that the largest gap is as small as possible.
fn sample_locations(graph: &ShapeGraph, count: usize) -> Result<(Vec<Location>, f64)> {
    if graph.is_closed_curve() {
        let length = graph.total_length();
        let spacing = length / count as f64;
        let locations = (0..count)
            .map(|k| graph.location_at_length(k as f64 * spacing))
            .collect();
        return Ok((locations, spacing));
    }
    let nodes = graph.nodes().len();
    if count < nodes {
        return Err(Error::InvalidArgument(alloc::format!(
            "need at least {nodes} samples for a graph with {nodes} vertices"
        )));
    }
    let edges = graph.edges();
    let mut interior = alloc::vec![0usize; edges.len()];
    for _ in 0..count - nodes {
        let k = (0..edges.len())
            .max_by(|&a, &b| {
                let ga = edges[a].length / (interior[a] + 1) as f64;
                let gb = edges[b].length / (interior[b] + 1) as f64;
                ga.total_cmp(&gb).then(b.cmp(&a))
            })
            .expect("graphs have edges");
        interior[k] += 1;
    }
    let mut locations = Vec::with_capacity(count);
    let mut seen = alloc::vec![false; nodes];
    for (k, e) in edges.iter().enumerate() {
        for (node, offset) in [(e.from, 0.0), (e.to, e.length)] {
            if !seen[node] {
                seen[node] = true;
                locations.push(Location { edge: k, offset });
            }
        }
    }
    // Isolated vertices cannot occur: every vertex of a shape graph that
    // matters is an edge endpoint. Pad with vertex 0 otherwise.
    while locations.len() < nodes {
        locations.push(Location { edge: 0, offset: 0.0 });
    }
    let mut spacing = 0.0f64;
    for (k, e) in edges.iter().enumerate() {
        let m = interior[k];
        let gap = e.length / (m + 1) as f64;
        spacing = spacing.max(gap);
        for i in 1..=m {
            locations.push(Location {
                edge: k,
                offset: gap * i as f64,
            });
        }
    }
    Ok((locations, spacing))
}

/// Deterministic noisy sample of a shape.
pub fn sample_shape(spec: &ShapeSpec, count: usize, noise: NoiseModel) -> Result<Sample> {
    if count < 2 {
        return Err(Error::InvalidArgument("count must be at least 2".into()));
    }
    if !(noise.magnitude >= 0.0) || !noise.magnitude.is_finite() {
        return Err(Error::InvalidArgument("noise magnitude must be finite and >= 0".into()));
    }
    spec.validate()?;
    let graph = spec.metric_graph();
    let (locations, spacing) = sample_locations(&graph, count)?;
    let mut rng = ChaCha8Rng::seed_from_u64(noise.seed);
    let dim = graph.dim();
    let mut coords = Vec::with_capacity(dim * count);
    for loc in locations {
        let mut p = graph.point_at(loc);
        if noise.magnitude > 0.0 {
            let dir = random_direction(&mut rng, dim);
            let r = rng.gen::<f64>() * noise.magnitude;
            p.iter_mut().zip(&dir).for_each(|(x, d)| *x += r * d);
        }
        coords.extend_from_slice(&p);
    }
    Ok(Sample {
        cloud: PointCloud::from_flat(dim, coords)?,
        spacing,
        hausdorff_bound: spacing / 2.0 + noise.magnitude,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::hausdorff_distance;
    use crate::geometry::shape::ShapeKind;
    use alloc::vec;
    use core::f64::consts::PI;

    #[test]
    fn four_points_on_circle() {
        let s = sample_shape(&ShapeSpec::circle(1.0), 4, NoiseModel::none()).unwrap();
        assert_eq!(s.cloud.len(), 4);
        assert!((s.spacing - PI / 2.0).abs() < 1e-12);
        assert!((s.hausdorff_bound - PI / 4.0).abs() < 1e-12);
        for p in s.cloud.iter() {
            assert!((math::sqrt(p[0] * p[0] + p[1] * p[1]) - 1.0).abs() < 1e-12);
        }
        let q = s.cloud.point(1);
        assert!(q[0].abs() < 1e-9 && (q[1] - 1.0).abs() < 1e-9);
    }

    #[test]
    fn dense_circle_bound_dominates_true_distance() {
        let spec = ShapeSpec::circle(1.0);
        let s = sample_shape(&spec, 120, NoiseModel::none()).unwrap();
        assert!((s.hausdorff_bound - PI / 120.0).abs() < 1e-12);
        let reference = sample_shape(&spec, 12_000, NoiseModel::none()).unwrap();
        let d = hausdorff_distance(&s.cloud, &reference.cloud).unwrap();
        assert!(d <= s.hausdorff_bound);
        // The bound is attained up to chord-versus-arc and reference spacing.
        assert!(d > s.hausdorff_bound - 1e-3);
    }

    #[test]
    fn square_graph_bound() {
        let spec = ShapeSpec::square(1.0);
        let s = sample_shape(&spec, 40, NoiseModel::new(0.01, 3)).unwrap();
        assert_eq!(s.cloud.len(), 40);
        assert!((s.spacing - 0.1).abs() < 1e-12);
        assert!((s.hausdorff_bound - 0.06).abs() < 1e-12);
        let reference = sample_shape(&spec, 4000, NoiseModel::none()).unwrap();
        assert!(hausdorff_distance(&s.cloud, &reference.cloud).unwrap() <= s.hausdorff_bound);
    }

    #[test]
    fn noise_is_bounded_and_deterministic() {
        let spec = ShapeSpec::circle(1.0);
        let clean = sample_shape(&spec, 50, NoiseModel::none()).unwrap();
        let a = sample_shape(&spec, 50, NoiseModel::new(0.05, 9)).unwrap();
        let b = sample_shape(&spec, 50, NoiseModel::new(0.05, 9)).unwrap();
        assert_eq!(a.cloud, b.cloud);
        for i in 0..50 {
            assert!(clean.cloud.distance(i, 0) >= 0.0);
            let d = math::dist(clean.cloud.point(i), a.cloud.point(i));
            assert!(d <= 0.05 + 1e-15);
        }
    }

    #[test]
    fn graph_needs_enough_points() {
        assert!(sample_shape(&ShapeSpec::square(1.0), 3, NoiseModel::none()).is_err());
        assert!(sample_shape(&ShapeSpec::circle(1.0), 1, NoiseModel::none()).is_err());
    }

    #[test]
    fn sampling_in_three_dimensions() {
        let spec = ShapeSpec {
            kind: ShapeKind::EmbeddedGraph {
                vertices: vec![vec![0.0, 0.0, 0.0], vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 1.0]],
                edges: vec![(0, 1), (1, 2), (2, 0)],
            },
            distortion: 2.0,
            convexity_radius: 0.5,
            shortest_cycle: None,
        };
        let s = sample_shape(&spec, 30, NoiseModel::new(0.01, 1)).unwrap();
        assert_eq!(s.cloud.dim(), 3);
        assert_eq!(s.cloud.len(), 30);
    }
}
