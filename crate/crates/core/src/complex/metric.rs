use alloc::vec::Vec;

use crate::geometry::PointCloud;
use crate::{Error, Result};

/// Dense symmetric distance matrix; `f64::INFINITY` marks unreachable pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricMatrix {
    n: usize,
    data: Vec<f64>,
}

impl MetricMatrix {
    /// Checks shape, zero diagonal, symmetry and non-negativity.
    pub fn new(n: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                found: data.len(),
            });
        }
        for i in 0..n {
            if data[i * n + i] != 0.0 {
                return Err(Error::InvalidArgument(alloc::format!("nonzero diagonal entry at {i}")));
            }
            for j in 0..i {
                let d = data[i * n + j];
                if !(d >= 0.0) {
                    return Err(Error::InvalidArgument(alloc::format!(
                        "negative or NaN entry at ({i}, {j})"
                    )));
                }
                if d != data[j * n + i] {
                    return Err(Error::InvalidArgument(alloc::format!("asymmetric entry at ({i}, {j})")));
                }
            }
        }
        Ok(MetricMatrix { n, data })
    }

    /// Fills the upper triangle from `f(i, j)` for `i < j` and mirrors it.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = alloc::vec![0.0; n * n];
        for i in 0..n {
            for j in i + 1..n {
                let d = f(i, j);
                data[i * n + j] = d;
                data[j * n + i] = d;
            }
        }
        MetricMatrix { n, data }
    }

    /// Euclidean distances between the points of a cloud.
    pub fn euclidean(cloud: &PointCloud) -> Self {
        Self::from_fn(cloud.len(), |i, j| cloud.distance(i, j))
    }

    pub(crate) fn from_raw(n: usize, data: Vec<f64>) -> Self {
        debug_assert_eq!(data.len(), n * n);
        MetricMatrix { n, data }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    /// Largest pairwise entry among `vertices` (0 for a single vertex).
    pub fn diameter_of(&self, vertices: &[usize]) -> f64 {
        let mut d = 0.0f64;
        for (a, &i) in vertices.iter().enumerate() {
            for &j in &vertices[a + 1..] {
                d = d.max(self.get(i, j));
            }
        }
        d
    }

    /// Largest violation of the triangle inequality over finite entries.
    pub fn triangle_defect(&self) -> f64 {
        let n = self.n;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let dij = self.get(i, j);
                for k in 0..n {
                    let via = dij + self.get(j, k);
                    if via.is_finite() {
                        worst = worst.max(self.get(i, k) - via);
                    }
                }
            }
        }
        worst
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn validation() {
        assert!(MetricMatrix::new(2, vec![0.0, 1.0, 1.0, 0.0]).is_ok());
        assert!(MetricMatrix::new(2, vec![0.0, 1.0, 2.0, 0.0]).is_err());
        assert!(MetricMatrix::new(2, vec![1.0, 1.0, 1.0, 0.0]).is_err());
        assert!(MetricMatrix::new(2, vec![0.0, 1.0, 1.0]).is_err());
        let inf = MetricMatrix::new(2, vec![0.0, f64::INFINITY, f64::INFINITY, 0.0]).unwrap();
        assert_eq!(inf.triangle_defect(), 0.0);
    }

    #[test]
    fn euclidean_matrix() {
        let cloud = PointCloud::from_rows(&[[0.0, 0.0], [3.0, 4.0], [0.0, 4.0]]).unwrap();
        let m = MetricMatrix::euclidean(&cloud);
        assert_eq!(m.get(0, 1), 5.0);
        assert_eq!(m.get(1, 0), 5.0);
        assert_eq!(m.diameter_of(&[0, 1, 2]), 5.0);
        assert_eq!(m.diameter_of(&[2]), 0.0);
        assert!(m.triangle_defect() <= 0.0);
    }
}
