use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::reduce::{reduce, BoundaryMatrix, Reduction};
use crate::complex::{Filtration, Simplex, SimplicialComplex};
use crate::{Error, Result};

/// A persistence interval `[birth, death)` in dimension `dim`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub dim: usize,
    pub birth: f64,
    /// `f64::INFINITY` for classes that never die.
    pub death: f64,
}

impl Interval {
    pub fn is_essential(&self) -> bool {
        self.death == f64::INFINITY
    }

    pub fn persistence(&self) -> f64 {
        self.death - self.birth
    }
}

/// Rank of `H_dim(K_s) -> H_dim(K_t)` requested from a diagram.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BettiQuery {
    pub dim: usize,
    pub s: f64,
    pub t: f64,
}

impl BettiQuery {
    pub fn new(dim: usize, s: f64, t: f64) -> Result<Self> {
        if !(s <= t) {
            return Err(Error::InvalidArgument(alloc::format!(
                "need s <= t, got s = {s}, t = {t}"
            )));
        }
        Ok(BettiQuery { dim, s, t })
    }
}

/// Intervals of a filtration, sorted by `(dim, birth, death)`.
///
/// Intervals of length zero are not recorded.
#[derive(Debug, Clone, PartialEq)]
pub struct PersistenceDiagram {
    intervals: Vec<Interval>,
    dim_cap: usize,
    max_scale: f64,
}

impl PersistenceDiagram {
    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn in_dim(&self, k: usize) -> impl Iterator<Item = &Interval> + '_ {
        self.intervals.iter().filter(move |i| i.dim == k)
    }

    /// Dimensions `0..dim_cap` are reported.
    pub fn dim_cap(&self) -> usize {
        self.dim_cap
    }

    /// Largest scale covered by the source filtration.
    pub fn max_scale(&self) -> f64 {
        self.max_scale
    }

    /// Number of intervals with `birth <= s` and `death > t`.
    pub fn persistent_betti(&self, q: BettiQuery) -> Result<usize> {
        let q = BettiQuery::new(q.dim, q.s, q.t)?;
        if q.t > self.max_scale {
            return Err(Error::QueryOutOfRange {
                t: q.t,
                max: self.max_scale,
            });
        }
        if q.dim >= self.dim_cap.max(1) {
            return Err(Error::InvalidArgument(alloc::format!(
                "dimension {} is not computed (cap {})",
                q.dim,
                self.dim_cap
            )));
        }
        Ok(self.in_dim(q.dim).filter(|i| i.birth <= q.s && i.death > q.t).count())
    }

    /// Betti number of the complex at a single scale.
    pub fn betti_at(&self, dim: usize, s: f64) -> Result<usize> {
        self.persistent_betti(BettiQuery::new(dim, s, s)?)
    }
}

fn boundary_of<'a>(
    simplices: impl Iterator<Item = &'a Simplex>,
    index: &BTreeMap<&Simplex, usize>,
) -> Result<BoundaryMatrix> {
    let mut columns = Vec::new();
    let mut dims = Vec::new();
    for (j, s) in simplices.enumerate() {
        let mut col = Vec::with_capacity(s.dim() + 1);
        for f in s.facets() {
            match index.get(&f) {
                Some(&i) if i < j => col.push(i),
                _ => {
                    return Err(Error::MalformedFiltration(alloc::format!(
                        "face {:?} of {:?} is missing or appears later",
                        f.vertices(),
                        s.vertices()
                    )))
                }
            }
        }
        col.sort_unstable();
        columns.push(col);
        dims.push(s.dim());
    }
    Ok(BoundaryMatrix { columns, dims })
}

/// Boundary matrix of a filtration, columns in filtration order.
pub fn filtration_boundary(f: &Filtration) -> Result<BoundaryMatrix> {
    let index = f.positions()?;
    boundary_of(f.entries().iter().map(|e| &e.0), &index)
}

/// Persistent homology over Z/2 with the default reduction.
pub fn compute_persistence(f: &Filtration) -> Result<PersistenceDiagram> {
    compute_persistence_with(f, Reduction::default())
}

pub fn compute_persistence_with(f: &Filtration, method: Reduction) -> Result<PersistenceDiagram> {
    let matrix = filtration_boundary(f)?;
    let pairing = reduce(&matrix, method);
    let value = |i: usize| f.entries()[i].1;
    let cap = f.dim_cap();
    let mut intervals: Vec<Interval> = pairing
        .pairs()
        .filter(|&(i, j)| value(i) < value(j))
        .map(|(i, j)| Interval {
            dim: matrix.dims[i],
            birth: value(i),
            death: value(j),
        })
        .collect();
    intervals.extend(
        pairing
            .essential()
            .into_iter()
            .filter(|&i| matrix.dims[i] < cap.max(1))
            .map(|i| Interval {
                dim: matrix.dims[i],
                birth: value(i),
                death: f64::INFINITY,
            }),
    );
    intervals.sort_by(|a, b| {
        a.dim
            .cmp(&b.dim)
            .then(a.birth.total_cmp(&b.birth))
            .then(a.death.total_cmp(&b.death))
    });
    Ok(PersistenceDiagram {
        intervals,
        dim_cap: cap,
        max_scale: f.max_value(),
    })
}

/// Ranks of the boundary maps of a complex: entry `k` is `rank ∂_k`.
pub(crate) fn boundary_ranks(k: &SimplicialComplex) -> Vec<usize> {
    let index: BTreeMap<&Simplex, usize> = k.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let matrix = boundary_of(k.iter(), &index).expect("complexes are closed under faces");
    let pairing = reduce(&matrix, Reduction::Twist);
    let top = k.dim().unwrap_or(0);
    let mut ranks = alloc::vec![0usize; top + 2];
    for (_, j) in pairing.pairs() {
        ranks[matrix.dims[j]] += 1;
    }
    ranks
}

/// Betti number `β_k` of a complex over Z/2.
pub fn betti(complex: &SimplicialComplex, k: usize) -> Result<usize> {
    let top = complex.dim().ok_or(Error::EmptyInput("betti of an empty complex"))?;
    if k > top {
        return Err(Error::InvalidArgument(alloc::format!(
            "dimension {k} exceeds the complex dimension {top}"
        )));
    }
    let ranks = boundary_ranks(complex);
    Ok(complex.count(k) - ranks[k] - ranks[k + 1])
}

/// Betti numbers `β_0, ..., β_dim` of a complex.
pub fn betti_numbers(complex: &SimplicialComplex) -> Vec<usize> {
    let Some(top) = complex.dim() else {
        return Vec::new();
    };
    let ranks = boundary_ranks(complex);
    (0..=top).map(|k| complex.count(k) - ranks[k] - ranks[k + 1]).collect()
}
