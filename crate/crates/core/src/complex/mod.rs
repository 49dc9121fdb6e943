//! Vietoris-Rips and Čech complexes, their filtrations, and the length-metric
//! variants on points of a known shape.
//!
//! Conventions: a Rips simplex has diameter `<= alpha`; a Čech simplex has a
//! minimal enclosing ball of radius `< alpha` (open balls).

mod build;
mod filtration;
mod metric;
mod simplex;

pub use build::{
    cech_complex, cech_filtration, geodesic_metric, intrinsic_cech_on_shape, intrinsic_rips_on_shape, rips_complex,
    rips_filtration, DEFAULT_DIM_CAP,
};
pub(crate) use build::{expand_cliques, upper_neighbors};
pub use filtration::Filtration;
pub use metric::MetricMatrix;
pub use simplex::{is_simplicial_map, is_subcomplex, Simplex, SimplicialComplex};
