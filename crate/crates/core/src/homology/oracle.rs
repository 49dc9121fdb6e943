//! Dense Gaussian elimination over Z/2, used as an independent check of the
//! persistence computation.

use alloc::vec::Vec;

use crate::complex::{is_subcomplex, Simplex, SimplicialComplex};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn zeros(n: usize) -> Self {
        Bits(alloc::vec![0; n.div_ceil(64)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] ^= 1 << (i % 64);
    }

    fn xor(&mut self, other: &Bits) {
        self.0.iter_mut().zip(&other.0).for_each(|(a, b)| *a ^= b);
    }

    fn highest(&self) -> Option<usize> {
        self.0
            .iter()
            .enumerate()
            .rev()
            .find(|(_, w)| **w != 0)
            .map(|(k, w)| 64 * k + 63 - w.leading_zeros() as usize)
    }

    fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }
}

/// Rank over Z/2 of a set of vectors of length `n`.
fn rank(vectors: &[Bits], n: usize) -> usize {
    let mut basis: Vec<Option<Bits>> = alloc::vec![None; n];
    let mut r = 0;
    for v in vectors {
        let mut v = v.clone();
        while let Some(h) = v.highest() {
            match &basis[h] {
                Some(b) => v.xor(b),
                None => {
                    basis[h] = Some(v);
                    r += 1;
                    break;
                }
            }
        }
    }
    r
}

fn position(list: &[Simplex], s: &Simplex) -> usize {
    list.binary_search(s).expect("face present in a closed complex")
}

/// Boundary vectors of the `k`-simplices of `c`, indexed by its
/// `(k-1)`-simplices.
fn boundary_vectors(c: &SimplicialComplex, k: usize) -> Vec<Bits> {
    let rows = if k == 0 { &[][..] } else { c.of_dim(k - 1) };
    c.of_dim(k)
        .iter()
        .map(|s| {
            let mut v = Bits::zeros(rows.len());
            if k > 0 {
                for f in s.facets() {
                    v.set(position(rows, &f));
                }
            }
            v
        })
        .collect()
}

/// Basis of the `k`-cycles of `c`, as lists of `k`-simplices.
fn cycle_basis(c: &SimplicialComplex, k: usize) -> Vec<Vec<Simplex>> {
    let simplices = c.of_dim(k);
    let columns = boundary_vectors(c, k);
    let rows = if k == 0 { 0 } else { c.count(k - 1) };
    // Each reduced column carries the combination of simplices producing it.
    let mut pivots: Vec<Option<(Bits, Bits)>> = alloc::vec![None; rows];
    let mut cycles = Vec::new();
    for (j, col) in columns.into_iter().enumerate() {
        let mut v = col;
        let mut combo = Bits::zeros(simplices.len());
        combo.set(j);
        loop {
            match v.highest() {
                None => {
                    cycles.push(
                        (0..simplices.len())
                            .filter(|&i| combo.get(i))
                            .map(|i| simplices[i].clone())
                            .collect(),
                    );
                    break;
                }
                Some(h) => match &pivots[h] {
                    Some((pv, pc)) => {
                        v.xor(pv);
                        combo.xor(pc);
                    }
                    None => {
                        pivots[h] = Some((v, combo));
                        break;
                    }
                },
            }
        }
    }
    cycles
}

/// Rank of `H_k(K) -> H_k(L)` for `K ⊆ L`, computed as
/// `rank [∂_{k+1}(L) | Z_k(K)] - rank ∂_{k+1}(L)`.
pub fn image_rank_oracle(k_complex: &SimplicialComplex, l_complex: &SimplicialComplex, k: usize) -> Result<usize> {
    if !is_subcomplex(k_complex, l_complex) {
        return Err(Error::NotSubcomplex);
    }
    let targets = l_complex.of_dim(k);
    let boundaries = boundary_vectors(l_complex, k + 1);
    let mut all = boundaries.clone();
    for cycle in cycle_basis(k_complex, k) {
        let mut v = Bits::zeros(targets.len());
        for s in &cycle {
            v.set(position(targets, s));
        }
        all.push(v);
    }
    Ok(rank(&all, targets.len()) - rank(&boundaries, targets.len()))
}
