//! Z/2 simplicial homology and persistence.

mod diagram;
mod oracle;
mod reduce;

pub use diagram::{
    betti, betti_numbers, compute_persistence, compute_persistence_with, filtration_boundary, BettiQuery, Interval,
    PersistenceDiagram,
};
pub use oracle::image_rank_oracle;
pub use reduce::{reduce, BoundaryMatrix, Pairing, Reduction};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{rips_filtration, MetricMatrix, Simplex, SimplicialComplex};
    use crate::geometry::PointCloud;
    use crate::Error;
    use alloc::vec;
    use alloc::vec::Vec;
    use proptest::prelude::*;

    fn square_diagram() -> PersistenceDiagram {
        let cloud = PointCloud::from_rows(&[[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]).unwrap();
        compute_persistence(&rips_filtration(&MetricMatrix::euclidean(&cloud), 2.0, 2).unwrap()).unwrap()
    }

    #[test]
    fn single_point() {
        let cloud = PointCloud::from_rows(&[[0.5, 0.5]]).unwrap();
        let d = compute_persistence(&rips_filtration(&MetricMatrix::euclidean(&cloud), 1.0, 2).unwrap()).unwrap();
        assert_eq!(
            d.intervals(),
            &[Interval {
                dim: 0,
                birth: 0.0,
                death: f64::INFINITY
            }]
        );
    }

    #[test]
    fn square_h1_interval() {
        let d = square_diagram();
        let h1: Vec<_> = d.in_dim(1).copied().collect();
        assert_eq!(
            h1,
            vec![Interval {
                dim: 1,
                birth: 1.0,
                death: libm::sqrt(2.0)
            }]
        );
        assert_eq!(d.persistent_betti(BettiQuery::new(1, 1.0, 1.2).unwrap()).unwrap(), 1);
        assert_eq!(d.persistent_betti(BettiQuery::new(1, 1.0, 1.5).unwrap()).unwrap(), 0);
        assert_eq!(d.persistent_betti(BettiQuery::new(0, 0.0, 1.7).unwrap()).unwrap(), 1);
        assert!(matches!(
            d.persistent_betti(BettiQuery { dim: 1, s: 1.0, t: 2.5 }),
            Err(Error::QueryOutOfRange { .. })
        ));
        assert!(BettiQuery::new(1, 1.2, 1.0).is_err());
        assert!(d.persistent_betti(BettiQuery { dim: 2, s: 1.0, t: 1.0 }).is_err());
    }

    #[test]
    fn two_points_merge() {
        let cloud = PointCloud::from_rows(&[[0.0, 0.0], [3.0, 0.0]]).unwrap();
        let d = compute_persistence(&rips_filtration(&MetricMatrix::euclidean(&cloud), 5.0, 1).unwrap()).unwrap();
        let h0: Vec<(f64, f64)> = d.in_dim(0).map(|i| (i.birth, i.death)).collect();
        assert_eq!(h0, vec![(0.0, 3.0), (0.0, f64::INFINITY)]);
    }

    #[test]
    fn betti_examples() {
        let tri = |s: &[&[usize]]| SimplicialComplex::from_simplices(s.iter().map(|v| Simplex::from(*v)));
        assert_eq!(betti(&tri(&[&[0, 1], &[1, 2], &[0, 2]]), 1).unwrap(), 1);
        assert_eq!(betti(&tri(&[&[0, 1, 2]]), 1).unwrap(), 0);
        assert_eq!(betti(&tri(&[&[0, 1], &[2, 3]]), 0).unwrap(), 2);
        assert!(betti(&tri(&[&[0, 1], &[2, 3]]), 2).is_err());
        assert!(betti(&SimplicialComplex::default(), 0).is_err());
        // Octahedron boundary: a 2-sphere.
        let mut faces = Vec::new();
        for a in [0, 1] {
            for b in [2, 3] {
                for c in [4, 5] {
                    faces.push(Simplex::from(&[a, b, c][..]));
                }
            }
        }
        let sphere = SimplicialComplex::from_simplices(faces);
        assert_eq!(betti_numbers(&sphere), vec![1, 0, 1]);
    }

    fn cloud_strategy(max: usize) -> impl Strategy<Value = PointCloud> {
        proptest::collection::vec((0.0f64..4.0, 0.0f64..4.0), 1..=max)
            .prop_map(|v| PointCloud::from_rows(&v.iter().map(|&(x, y)| [x, y]).collect::<Vec<_>>()).unwrap())
    }

    /// A scale strictly between consecutive distinct filtration values.
    fn gap_scale(values: &[f64], pick: f64) -> f64 {
        let mut v: Vec<f64> = values.to_vec();
        v.sort_by(f64::total_cmp);
        v.dedup();
        let k = ((pick * v.len() as f64) as usize).min(v.len() - 1);
        if k + 1 < v.len() {
            0.5 * (v[k] + v[k + 1])
        } else {
            v[k] + 0.5
        }
    }

    fn components(cloud: &PointCloud, s: f64) -> usize {
        let n = cloud.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for i in 0..n {
            for j in i + 1..n {
                if cloud.distance(i, j) <= s {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    parent[a] = b;
                }
            }
        }
        (0..n).filter(|&i| find(&mut parent, i) == i).count()
    }

    proptest! {
        #[test]
        fn persistent_betti_matches_oracle(cloud in cloud_strategy(7), a in 0.0f64..1.0, b in 0.0f64..1.0) {
            let m = MetricMatrix::euclidean(&cloud);
            let top = cloud.diameter() + 1.0;
            let f = rips_filtration(&m, top, 2).unwrap();
            let values: Vec<f64> = f.values().collect();
            let (s, t) = {
                let (x, y) = (gap_scale(&values, a), gap_scale(&values, b));
                if x <= y { (x, y) } else { (y, x) }
            };
            let d = compute_persistence(&f).unwrap();
            for k in 0..2 {
                let fast = d.persistent_betti(BettiQuery::new(k, s, t).unwrap()).unwrap();
                let slow = image_rank_oracle(&f.complex_at(s), &f.complex_at(t), k).unwrap();
                prop_assert_eq!(fast, slow, "k={} s={} t={}", k, s, t);
            }
        }

        #[test]
        fn reductions_agree(cloud in cloud_strategy(9)) {
            let f = rips_filtration(&MetricMatrix::euclidean(&cloud), 3.0, 2).unwrap();
            let m = filtration_boundary(&f).unwrap();
            let standard = reduce(&m, Reduction::Standard);
            let twist = reduce(&m, Reduction::Twist);
            let mut p: Vec<_> = standard.pairs().collect();
            let mut q: Vec<_> = twist.pairs().collect();
            p.sort_unstable();
            q.sort_unstable();
            prop_assert_eq!(p, q);
            prop_assert_eq!(standard.essential(), twist.essential());
            prop_assert_eq!(
                compute_persistence_with(&f, Reduction::Standard).unwrap(),
                compute_persistence_with(&f, Reduction::Twist).unwrap()
            );
        }

        #[test]
        fn beta0_counts_components(cloud in cloud_strategy(12), pick in 0.0f64..1.0) {
            let f = rips_filtration(&MetricMatrix::euclidean(&cloud), 6.0, 1).unwrap();
            let values: Vec<f64> = f.values().collect();
            let s = gap_scale(&values, pick).min(6.0);
            let d = compute_persistence(&f).unwrap();
            prop_assert_eq!(d.betti_at(0, s).unwrap(), components(&cloud, s));
        }

        #[test]
        fn euler_characteristic(cloud in cloud_strategy(9), alpha in 0.0f64..6.0) {
            let f = rips_filtration(&MetricMatrix::euclidean(&cloud), alpha, 2).unwrap();
            let d = compute_persistence(&f).unwrap();
            let k = f.complex_at(alpha);
            let b0 = d.betti_at(0, alpha).unwrap() as i64;
            let b1 = d.betti_at(1, alpha).unwrap() as i64;
            let b = betti_numbers(&k);
            let b2 = b.get(2).copied().unwrap_or(0) as i64;
            prop_assert_eq!(b0, b[0] as i64);
            prop_assert_eq!(b1, b.get(1).copied().unwrap_or(0) as i64);
            prop_assert_eq!(b0 - b1 + b2, k.euler_characteristic());
        }

        #[test]
        fn perturbation_stability(
            cloud in cloud_strategy(8),
            shifts in proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 8),
            eta in 0.0f64..0.2,
            a in 0.0f64..3.0,
            gap in 0.0f64..3.0,
        ) {
            let rows: Vec<[f64; 2]> = cloud
                .iter()
                .zip(&shifts)
                .map(|(p, &(dx, dy))| {
                    let n = libm::sqrt(dx * dx + dy * dy).max(1.0);
                    [p[0] + eta * dx / n, p[1] + eta * dy / n]
                })
                .collect();
            let moved = PointCloud::from_rows(&rows).unwrap();
            let top = 10.0;
            let d = compute_persistence(&rips_filtration(&MetricMatrix::euclidean(&cloud), top, 2).unwrap()).unwrap();
            let e = compute_persistence(&rips_filtration(&MetricMatrix::euclidean(&moved), top, 2).unwrap()).unwrap();
            // H0 deaths are the sorted spanning-tree lengths; they move by at most 2η.
            let deaths = |d: &PersistenceDiagram| d.in_dim(0).map(|i| i.death).filter(|x| x.is_finite()).collect::<Vec<_>>();
            let (mut x, mut y) = (deaths(&d), deaths(&e));
            x.sort_by(f64::total_cmp);
            y.sort_by(f64::total_cmp);
            // Zero-length intervals are dropped; pad with zeros before matching.
            let len = x.len().max(y.len());
            x.splice(0..0, core::iter::repeat(0.0).take(len - x.len()));
            y.splice(0..0, core::iter::repeat(0.0).take(len - y.len()));
            for (u, v) in x.iter().zip(&y) {
                prop_assert!((u - v).abs() <= 2.0 * eta + 1e-12);
            }
            // Interleaving: K_s ⊆ K'_{s+2η} ⊆ K'_{t-2η} ⊆ K_t.
            let (s, t) = (a, a + 4.0 * eta + gap);
            prop_assume!(t <= top - 1.0);
            for k in 0..2 {
                let outer = d.persistent_betti(BettiQuery::new(k, s, t).unwrap()).unwrap();
                let inner = e.persistent_betti(BettiQuery::new(k, s + 2.0 * eta, t - 2.0 * eta).unwrap()).unwrap();
                prop_assert!(outer <= inner, "k={} outer {} inner {}", k, outer, inner);
            }
        }
    }
}
