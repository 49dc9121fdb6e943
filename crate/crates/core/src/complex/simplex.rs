use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::{Error, Result};

/// An abstract simplex: a strictly increasing list of vertex ids.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Simplex(Vec<usize>);

impl Simplex {
    /// Builds a simplex from arbitrary vertex ids (sorted and deduplicated).
    pub fn new(mut vertices: Vec<usize>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::EmptyInput("simplex"));
        }
        vertices.sort_unstable();
        vertices.dedup();
        Ok(Simplex(vertices))
    }

    /// Wraps ids that are already strictly increasing.
    pub(crate) fn from_sorted(vertices: Vec<usize>) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        Simplex(vertices)
    }

    pub fn vertex(v: usize) -> Self {
        Simplex(alloc::vec![v])
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    /// Codimension-one faces, in the order obtained by dropping vertex
    /// `0, 1, ..., dim`.
    pub fn facets(&self) -> impl Iterator<Item = Simplex> + '_ {
        let n = if self.0.len() > 1 { self.0.len() } else { 0 };
        (0..n).map(move |skip| {
            Simplex(
                self.0
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip)
                    .map(|(_, &v)| v)
                    .collect(),
            )
        })
    }

    /// Image under a vertex map, as a (possibly lower-dimensional) simplex.
    pub fn map(&self, f: impl Fn(usize) -> usize) -> Simplex {
        let mut v: Vec<usize> = self.0.iter().map(|&x| f(x)).collect();
        v.sort_unstable();
        v.dedup();
        Simplex(v)
    }
}

impl From<&[usize]> for Simplex {
    fn from(v: &[usize]) -> Self {
        let mut v = v.to_vec();
        v.sort_unstable();
        v.dedup();
        Simplex(v)
    }
}

/// Order by dimension, then lexicographically.
pub(crate) fn dim_lex(a: &Simplex, b: &Simplex) -> Ordering {
    a.dim().cmp(&b.dim()).then_with(|| a.cmp(b))
}

/// A finite simplicial complex, closed under faces.
///
/// Simplices are stored sorted by dimension and then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SimplicialComplex {
    simplices: Vec<Simplex>,
}

impl SimplicialComplex {
    /// Complex generated by `simplices`: all of their faces are added.
    pub fn from_simplices<I: IntoIterator<Item = Simplex>>(simplices: I) -> Self {
        let mut all: Vec<Simplex> = Vec::new();
        let mut stack: Vec<Simplex> = simplices.into_iter().collect();
        while let Some(s) = stack.pop() {
            stack.extend(s.facets());
            all.push(s);
        }
        Self::from_closed(all)
    }

    /// Wraps a list that is already closed under faces.
    pub(crate) fn from_closed(mut simplices: Vec<Simplex>) -> Self {
        simplices.sort_unstable_by(dim_lex);
        simplices.dedup();
        SimplicialComplex { simplices }
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    /// Largest simplex dimension, `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.simplices.last().map(Simplex::dim)
    }

    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    pub fn iter(&self) -> core::slice::Iter<'_, Simplex> {
        self.simplices.iter()
    }

    /// Simplices of dimension exactly `k`, lexicographically sorted.
    pub fn of_dim(&self, k: usize) -> &[Simplex] {
        let start = self.simplices.partition_point(|s| s.dim() < k);
        let end = self.simplices.partition_point(|s| s.dim() <= k);
        &self.simplices[start..end]
    }

    pub fn count(&self, k: usize) -> usize {
        self.of_dim(k).len()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.simplices.binary_search_by(|x| dim_lex(x, s)).is_ok()
    }

    /// Position of `s` in [`Self::simplices`].
    pub fn index_of(&self, s: &Simplex) -> Option<usize> {
        self.simplices.binary_search_by(|x| dim_lex(x, s)).ok()
    }

    pub fn is_closed(&self) -> bool {
        self.simplices.iter().all(|s| s.facets().all(|f| self.contains(&f)))
    }

    /// Alternating sum of simplex counts.
    pub fn euler_characteristic(&self) -> i64 {
        self.simplices
            .iter()
            .map(|s| if s.dim() % 2 == 0 { 1 } else { -1 })
            .sum()
    }
}

impl<'a> IntoIterator for &'a SimplicialComplex {
    type Item = &'a Simplex;
    type IntoIter = core::slice::Iter<'a, Simplex>;

    fn into_iter(self) -> Self::IntoIter {
        self.simplices.iter()
    }
}

/// True iff every simplex of `k` is a simplex of `l`.
pub fn is_subcomplex(k: &SimplicialComplex, l: &SimplicialComplex) -> bool {
    k.len() <= l.len() && k.iter().all(|s| l.contains(s))
}

/// True iff the vertex map `f` sends every simplex of `k` onto a simplex
/// of `l`, i.e. `f` extends to a simplicial map `k -> l`.
pub fn is_simplicial_map(k: &SimplicialComplex, l: &SimplicialComplex, f: impl Fn(usize) -> usize) -> bool {
    k.iter().all(|s| l.contains(&s.map(&f)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn simplex_normalizes() {
        let s = Simplex::new(vec![3, 1, 2, 1]).unwrap();
        assert_eq!(s.vertices(), &[1, 2, 3]);
        assert_eq!(s.dim(), 2);
        let facets: Vec<_> = s.facets().collect();
        assert_eq!(
            facets,
            vec![Simplex(vec![2, 3]), Simplex(vec![1, 3]), Simplex(vec![1, 2])]
        );
        assert_eq!(Simplex::vertex(4).facets().count(), 0);
        assert!(Simplex::new(vec![]).is_err());
    }

    #[test]
    fn closure_and_queries() {
        let k = SimplicialComplex::from_simplices([Simplex::from(&[0, 1, 2][..])]);
        assert_eq!(k.len(), 7);
        assert!(k.is_closed());
        assert_eq!(k.count(0), 3);
        assert_eq!(k.count(1), 3);
        assert_eq!(k.count(2), 1);
        assert_eq!(k.euler_characteristic(), 1);
        assert_eq!(k.dim(), Some(2));
        assert!(k.contains(&Simplex::from(&[0, 2][..])));
        assert!(!k.contains(&Simplex::from(&[0, 3][..])));
    }

    #[test]
    fn subcomplex_and_maps() {
        let tri = SimplicialComplex::from_simplices([Simplex::from(&[0, 1, 2][..])]);
        let path = SimplicialComplex::from_simplices([Simplex::from(&[0, 1][..]), Simplex::from(&[1, 2][..])]);
        assert!(is_subcomplex(&path, &tri));
        assert!(!is_subcomplex(&tri, &path));
        assert!(is_subcomplex(&tri, &tri));
        // Collapsing vertex 2 onto 1 maps the triangle onto an edge.
        let edge = SimplicialComplex::from_simplices([Simplex::from(&[0, 1][..])]);
        assert!(is_simplicial_map(&tri, &edge, |v| v.min(1)));
        assert!(!is_simplicial_map(&tri, &edge, |v| v));
    }
}
