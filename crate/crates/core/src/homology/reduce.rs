//! Sparse Z/2 column reduction of boundary matrices.

use alloc::vec::Vec;

/// Column reduction strategy. Both produce the same pairing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Reduction {
    /// Left-to-right reduction of every column.
    Standard,
    /// Reduction by decreasing dimension; a column known to be a pivot row
    /// of a reduced column is cleared without work.
    #[default]
    Twist,
}

/// Boundary matrix over Z/2 with columns in filtration order. Each column
/// lists the positions of its facets in increasing order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryMatrix {
    pub(crate) columns: Vec<Vec<usize>>,
    pub(crate) dims: Vec<usize>,
}

impl BoundaryMatrix {
    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    pub fn column(&self, j: usize) -> &[usize] {
        &self.columns[j]
    }

    pub fn dim(&self, j: usize) -> usize {
        self.dims[j]
    }
}

/// `a + b` over Z/2 for sorted index lists, written into `out`.
fn add_into(a: &[usize], b: &[usize], out: &mut Vec<usize>) {
    out.clear();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            core::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            core::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            core::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
}

/// Result of a reduction: `low[j]` is the pivot row of reduced column `j`
/// (`None` for a zero column).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pairing {
    pub low: Vec<Option<usize>>,
}

impl Pairing {
    /// `(birth, death)` position pairs, ordered by death.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.low.iter().enumerate().filter_map(|(j, l)| l.map(|i| (i, j)))
    }

    /// Positions that create a class never killed.
    pub fn essential(&self) -> Vec<usize> {
        let mut killed = alloc::vec![false; self.low.len()];
        for (i, _) in self.pairs() {
            killed[i] = true;
        }
        (0..self.low.len())
            .filter(|&j| self.low[j].is_none() && !killed[j])
            .collect()
    }
}

/// Reduces `matrix` and returns the pivot of every column.
pub fn reduce(matrix: &BoundaryMatrix, method: Reduction) -> Pairing {
    let n = matrix.len();
    let mut reduced: Vec<Vec<usize>> = alloc::vec![Vec::new(); n];
    let mut owner: Vec<Option<usize>> = alloc::vec![None; n];
    let mut scratch = Vec::new();

    let mut reduce_column = |j: usize, reduced: &mut Vec<Vec<usize>>, owner: &mut Vec<Option<usize>>| {
        let mut col = matrix.columns[j].clone();
        while let Some(&low) = col.last() {
            match owner[low] {
                Some(k) => {
                    add_into(&col, &reduced[k], &mut scratch);
                    core::mem::swap(&mut col, &mut scratch);
                }
                None => {
                    owner[low] = Some(j);
                    break;
                }
            }
        }
        reduced[j] = col;
    };

    match method {
        Reduction::Standard => {
            for j in 0..n {
                reduce_column(j, &mut reduced, &mut owner);
            }
        }
        Reduction::Twist => {
            let max_dim = matrix.dims.iter().copied().max().unwrap_or(0);
            let mut cleared = alloc::vec![false; n];
            for d in (1..=max_dim).rev() {
                for j in 0..n {
                    if matrix.dims[j] != d || cleared[j] {
                        continue;
                    }
                    reduce_column(j, &mut reduced, &mut owner);
                    if let Some(&low) = reduced[j].last() {
                        cleared[low] = true;
                    }
                }
            }
        }
    }

    Pairing {
        low: reduced.iter().map(|c| c.last().copied()).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn add_is_symmetric_difference() {
        let mut out = Vec::new();
        add_into(&[1, 3, 5], &[3, 4], &mut out);
        assert_eq!(out, vec![1, 4, 5]);
        add_into(&[2], &[2], &mut out);
        assert!(out.is_empty());
    }

    #[test]
    fn hollow_triangle() {
        // Vertices 0,1,2 then edges 01, 02, 12.
        let m = BoundaryMatrix {
            columns: vec![vec![], vec![], vec![], vec![0, 1], vec![0, 2], vec![1, 2]],
            dims: vec![0, 0, 0, 1, 1, 1],
        };
        for method in [Reduction::Standard, Reduction::Twist] {
            let p = reduce(&m, method);
            assert_eq!(p.low, vec![None, None, None, Some(1), Some(2), None]);
            assert_eq!(p.essential(), vec![0, 5]);
        }
    }
}
