//! Reconstruction of geodesic subspaces of Euclidean space from finite,
//! noisy point samples.
//!
//! The crate covers four layers:
//!
//! * [`geometry`]: point clouds, Hausdorff distance, minimal enclosing balls,
//!   the built-in shape registry with exact length metrics, and samplers.
//! * [`complex`]: Vietoris-Rips and Čech complexes and filtrations.
//! * [`homology`]: Z/2 persistence, persistent Betti numbers and an
//!   independent image-rank oracle.
//! * [`intrinsic`] and [`reconstruct`]: the shortest-path metric on the
//!   neighborhood graph of a sample and the shadow-based reconstruction of
//!   planar embedded graphs.
//!
//! The crate is `no_std` and only needs `alloc`.
#![no_std]
// `!(x > 0.0)` also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod complex;
mod error;
pub mod geometry;
pub mod homology;
pub mod intrinsic;
pub(crate) mod math;
pub mod reconstruct;
pub mod spatial;

pub use error::{Error, Result};
