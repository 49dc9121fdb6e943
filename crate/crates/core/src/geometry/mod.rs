//! Points, distances, enclosing balls, ground-truth shapes and samplers.

mod ball;
pub mod conditions;
pub mod curve;
mod point;
mod sample;
pub mod shape;

#[allow(unused_imports)]
pub(crate) use ball::enclosing_radius;
pub use ball::{minimal_enclosing_ball, Ball};
pub use conditions::{check_condition, verify_sampling_condition, ConditionReport, Theorem};
pub use point::{euclidean_distance, hausdorff_distance, nearest_sample_point, Point, PointCloud};
pub use sample::{sample_shape, NoiseModel, Sample};
pub use shape::{estimate_distortion, geodesic_distance, Location, ShapeGraph, ShapeKind, ShapeSpec};
