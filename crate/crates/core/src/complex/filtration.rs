use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cmp::Ordering;

use super::simplex::{Simplex, SimplicialComplex};
use crate::{Error, Result};

/// Filtration order: value, then dimension, then vertex ids.
pub(crate) fn entry_order(a: &(Simplex, f64), b: &(Simplex, f64)) -> Ordering {
    a.1.total_cmp(&b.1)
        .then_with(|| a.0.dim().cmp(&b.0.dim()))
        .then_with(|| a.0.cmp(&b.0))
}

/// Simplices with their filtration values, in filtration order.
#[derive(Debug, Clone, PartialEq)]
pub struct Filtration {
    entries: Vec<(Simplex, f64)>,
    dim_cap: usize,
    max_value: f64,
}

impl Filtration {
    /// Sorts `entries` into filtration order and checks that values are
    /// finite, non-negative and at most `max_value`, that dimensions respect
    /// `dim_cap`, and that every face precedes its cofaces.
    pub fn new(mut entries: Vec<(Simplex, f64)>, dim_cap: usize, max_value: f64) -> Result<Self> {
        if !(max_value >= 0.0) {
            return Err(Error::MalformedFiltration("maximum value must be >= 0".into()));
        }
        for (s, v) in &entries {
            if !(*v >= 0.0 && *v <= max_value) {
                return Err(Error::MalformedFiltration(alloc::format!(
                    "value {v} of {:?} outside [0, {max_value}]",
                    s.vertices()
                )));
            }
            if s.dim() > dim_cap {
                return Err(Error::MalformedFiltration(alloc::format!(
                    "{:?} exceeds dimension cap {dim_cap}",
                    s.vertices()
                )));
            }
        }
        entries.sort_by(entry_order);
        let f = Filtration {
            entries,
            dim_cap,
            max_value,
        };
        f.positions()?;
        Ok(f)
    }

    pub(crate) fn from_sorted(entries: Vec<(Simplex, f64)>, dim_cap: usize, max_value: f64) -> Self {
        debug_assert!(entries.windows(2).all(|w| entry_order(&w[0], &w[1]) == Ordering::Less));
        Filtration {
            entries,
            dim_cap,
            max_value,
        }
    }

    /// Map from simplex to filtration position, checking face order.
    pub(crate) fn positions(&self) -> Result<BTreeMap<&Simplex, usize>> {
        let mut index = BTreeMap::new();
        for (pos, (s, _)) in self.entries.iter().enumerate() {
            for face in s.facets() {
                if !index.contains_key(&face) {
                    return Err(Error::MalformedFiltration(alloc::format!(
                        "face {:?} of {:?} is missing or appears later",
                        face.vertices(),
                        s.vertices()
                    )));
                }
            }
            if index.insert(s, pos).is_some() {
                return Err(Error::MalformedFiltration(alloc::format!(
                    "duplicate simplex {:?}",
                    s.vertices()
                )));
            }
        }
        Ok(index)
    }

    pub fn entries(&self) -> &[(Simplex, f64)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn dim_cap(&self) -> usize {
        self.dim_cap
    }

    /// Largest scale the filtration was computed up to.
    pub fn max_value(&self) -> f64 {
        self.max_value
    }

    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        self.entries.iter().map(|e| e.1)
    }

    /// Subcomplex of simplices with value `<= alpha`.
    pub fn complex_at(&self, alpha: f64) -> SimplicialComplex {
        let end = self.entries.partition_point(|e| e.1 <= alpha);
        SimplicialComplex::from_closed(self.entries[..end].iter().map(|e| e.0.clone()).collect())
    }

    /// Subcomplex of simplices with value `< alpha`.
    pub fn complex_below(&self, alpha: f64) -> SimplicialComplex {
        let end = self.entries.partition_point(|e| e.1 < alpha);
        SimplicialComplex::from_closed(self.entries[..end].iter().map(|e| e.0.clone()).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn s(v: &[usize]) -> Simplex {
        Simplex::from(v)
    }

    #[test]
    fn sorts_and_validates() {
        let f = Filtration::new(vec![(s(&[0, 1]), 3.0), (s(&[1]), 0.0), (s(&[0]), 0.0)], 1, 5.0).unwrap();
        let order: Vec<_> = f.entries().iter().map(|e| e.0.vertices().to_vec()).collect();
        assert_eq!(order, vec![vec![0], vec![1], vec![0, 1]]);
        assert_eq!(f.complex_at(2.9).len(), 2);
        assert_eq!(f.complex_at(3.0).len(), 3);
        assert_eq!(f.complex_below(3.0).len(), 2);
    }

    #[test]
    fn rejects_bad_entries() {
        // Face appears after its coface.
        let late_face = vec![(s(&[0, 1]), 1.0), (s(&[0]), 0.0), (s(&[1]), 2.0)];
        assert!(matches!(
            Filtration::new(late_face, 1, 5.0),
            Err(Error::MalformedFiltration(_))
        ));
        let missing = vec![(s(&[0, 1]), 1.0), (s(&[0]), 0.0)];
        assert!(Filtration::new(missing, 1, 5.0).is_err());
        assert!(Filtration::new(vec![(s(&[0]), 6.0)], 1, 5.0).is_err());
        assert!(Filtration::new(vec![(s(&[0, 1, 2]), 1.0)], 1, 5.0).is_err());
        assert!(Filtration::new(vec![(s(&[0]), 0.0), (s(&[0]), 0.0)], 1, 5.0).is_err());
    }
}
