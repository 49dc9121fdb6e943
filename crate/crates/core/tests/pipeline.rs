use georecon::complex::{
    intrinsic_cech_on_shape, intrinsic_rips_on_shape, is_subcomplex, rips_filtration, MetricMatrix,
};
use georecon::geometry::{sample_shape, verify_sampling_condition, NoiseModel, ShapeSpec, Theorem};
use georecon::homology::{betti_numbers, compute_persistence, BettiQuery};
use georecon::intrinsic::{build_eps_graph, compute_d_eps, intrinsic_rips};
use georecon::reconstruct::{reconstruct_graph, reconstruction_report};

#[test]
fn noisy_circle_rips_pair() {
    let spec = ShapeSpec::circle(1.0);
    let s = sample_shape(&spec, 150, NoiseModel::new(0.01, 4)).unwrap();
    let eps = 0.25;
    assert!(
        verify_sampling_condition(&spec, s.hausdorff_bound, eps, Theorem::Rips)
            .unwrap()
            .passed
    );
    let (a, b) = Theorem::Rips.scale_pair(eps, spec.distortion);
    let d = compute_persistence(&rips_filtration(&MetricMatrix::euclidean(&s.cloud), b, 2).unwrap()).unwrap();
    for k in 0..2 {
        assert_eq!(d.persistent_betti(BettiQuery::new(k, a, b).unwrap()).unwrap(), 1);
    }
}

#[test]
fn intrinsic_complexes_on_square() {
    let spec = ShapeSpec::square(1.0);
    let s = sample_shape(&spec, 40, NoiseModel::none()).unwrap();
    let alpha = 0.3;
    let rips = intrinsic_rips_on_shape(&spec, &s.cloud, alpha, 2).unwrap();
    let cech = intrinsic_cech_on_shape(&spec, &s.cloud, alpha / 2.0, 2, 0.005).unwrap();
    assert!(is_subcomplex(&cech, &rips));
    assert_eq!(betti_numbers(&rips)[..2], [1, 1]);

    // With eps above the spacing, d_eps dominates the length metric, so
    // its Rips complex sits inside the length-metric one.
    let g = build_eps_graph(&s.cloud, 0.11).unwrap();
    let deps = intrinsic_rips(&s.cloud, &compute_d_eps(&g), alpha, 2).unwrap();
    assert!(is_subcomplex(&deps, &rips));
}

#[test]
fn theta_report() {
    let spec = ShapeSpec::theta(1.0);
    let s = sample_shape(&spec, 420, NoiseModel::new(0.002, 2)).unwrap();
    let eps = 0.045;
    assert!(
        verify_sampling_condition(&spec, s.hausdorff_bound, eps, Theorem::Graph)
            .unwrap()
            .passed
    );
    let shadow = reconstruct_graph(&s.cloud, eps, spec.distortion).unwrap();
    let r = reconstruction_report(&shadow, Some(&spec), 0.004).unwrap();
    assert_eq!((r.beta0, r.beta1, r.components), (1, 2, 1));
    assert_eq!(r.beta1_ok, Some(true));
    assert_eq!(r.hausdorff_ok, Some(true));
}
