//! Sampling conditions of the reconstruction guarantees, evaluated as
//! strict inequality chains `lower < middle < upper`.

use alloc::string::String;

use super::shape::ShapeSpec;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Theorem {
    /// `d_H < ε/4 < ρ / (2δ(3δ+2))`, queried at `(ε, (3δ+1)ε/2)`.
    Rips,
    /// `d_H < ε < ρ / (2δ(4δ+1))`, queried at `(ε, (4δ+1)ε)`.
    Cech,
    /// `d_H < ε/3 < b / (4δ(15δ+2))`, shadow threshold `5δε`.
    Graph,
}

impl Theorem {
    pub fn name(self) -> &'static str {
        match self {
            Theorem::Rips => "rips",
            Theorem::Cech => "cech",
            Theorem::Graph => "graph",
        }
    }

    /// Scale pair `(s, t)` at which persistent Betti numbers recover the
    /// shape's homology.
    pub fn scale_pair(self, eps: f64, delta: f64) -> (f64, f64) {
        match self {
            Theorem::Rips => (eps, 0.5 * (3.0 * delta + 1.0) * eps),
            Theorem::Cech => (eps, (4.0 * delta + 1.0) * eps),
            Theorem::Graph => (eps, 5.0 * delta * eps),
        }
    }
}

impl core::str::FromStr for Theorem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rips" => Ok(Theorem::Rips),
            "cech" => Ok(Theorem::Cech),
            "graph" => Ok(Theorem::Graph),
            other => Err(Error::InvalidArgument(alloc::format!("unknown theorem {other:?}"))),
        }
    }
}

/// Numeric values of a checked inequality chain.
#[derive(Debug, Clone, PartialEq)]
pub struct ConditionReport {
    pub theorem: Theorem,
    pub hausdorff_bound: f64,
    pub middle: f64,
    pub upper: f64,
    pub passed: bool,
    /// Rendering of the first violated inequality, if any.
    pub failure: Option<String>,
}

impl ConditionReport {
    /// Smallest gap of the two strict inequalities (negative on failure).
    pub fn margin(&self) -> f64 {
        (self.middle - self.hausdorff_bound).min(self.upper - self.middle)
    }
}

/// Evaluates a theorem's sampling condition for the shape's δ, ρ and b.
pub fn verify_sampling_condition(
    spec: &ShapeSpec,
    hausdorff_bound: f64,
    eps: f64,
    theorem: Theorem,
) -> Result<ConditionReport> {
    let b = match theorem {
        Theorem::Graph => Some(spec.shortest_cycle.ok_or_else(|| {
            Error::InvalidArgument("graph theorem needs an embedded graph with a shortest cycle length".into())
        })?),
        _ => None,
    };
    check_condition(theorem, hausdorff_bound, eps, spec.distortion, spec.convexity_radius, b)
}

/// Same as [`verify_sampling_condition`] with explicit parameters.
pub fn check_condition(
    theorem: Theorem,
    hausdorff_bound: f64,
    eps: f64,
    delta: f64,
    rho: f64,
    shortest_cycle: Option<f64>,
) -> Result<ConditionReport> {
    if !(eps > 0.0) {
        return Err(Error::InvalidArgument(alloc::format!(
            "eps must be positive, got {eps}"
        )));
    }
    if !(hausdorff_bound >= 0.0) {
        return Err(Error::InvalidArgument("Hausdorff bound must be >= 0".into()));
    }
    if !(delta >= 1.0) {
        return Err(Error::InvalidArgument(alloc::format!(
            "delta must be >= 1, got {delta}"
        )));
    }
    let (middle, upper, names) = match theorem {
        Theorem::Rips => {
            if !(rho > 0.0) {
                return Err(Error::InvalidArgument("rho must be positive".into()));
            }
            (
                eps / 4.0,
                rho / (2.0 * delta * (3.0 * delta + 2.0)),
                ("eps/4", "rho/(2*delta*(3*delta+2))"),
            )
        }
        Theorem::Cech => {
            if !(rho > 0.0) {
                return Err(Error::InvalidArgument("rho must be positive".into()));
            }
            (
                eps,
                rho / (2.0 * delta * (4.0 * delta + 1.0)),
                ("eps", "rho/(2*delta*(4*delta+1))"),
            )
        }
        Theorem::Graph => {
            let b = shortest_cycle
                .ok_or_else(|| Error::InvalidArgument("graph theorem needs the shortest cycle length b".into()))?;
            if !(b > 0.0) {
                return Err(Error::InvalidArgument("b must be positive".into()));
            }
            (
                eps / 3.0,
                b / (4.0 * delta * (15.0 * delta + 2.0)),
                ("eps/3", "b/(4*delta*(15*delta+2))"),
            )
        }
    };
    let failure = if !(hausdorff_bound < middle) {
        Some(alloc::format!("d_H >= {}", names.0))
    } else if !(middle < upper) {
        Some(alloc::format!("{} >= {}", names.0, names.1))
    } else {
        None
    };
    Ok(ConditionReport {
        theorem,
        hausdorff_bound,
        middle,
        upper,
        passed: failure.is_none(),
        failure,
    })
}
