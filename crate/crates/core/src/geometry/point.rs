use alloc::vec::Vec;
use core::ops::Index;

use crate::math;
use crate::{Error, Result};

/// A point of `R^N` with finite coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct Point(Vec<f64>);

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.len() < 2 {
            return Err(Error::InvalidArgument(alloc::format!(
                "points need at least 2 coordinates, got {}",
                coords.len()
            )));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidArgument("non-finite coordinate".into()));
        }
        Ok(Point(coords))
    }

    pub fn xy(x: f64, y: f64) -> Self {
        Point(alloc::vec![x, y])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }
}

impl AsRef<[f64]> for Point {
    fn as_ref(&self) -> &[f64] {
        &self.0
    }
}

/// Euclidean distance between two points of the same dimension.
pub fn euclidean_distance(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch {
            expected: a.len(),
            found: b.len(),
        });
    }
    Ok(math::dist(a, b))
}

/// A finite, nonempty, ordered sample of points in `R^N`. Vertex ids of every
/// complex built on the cloud are indices into this list.
#[derive(Debug, Clone, PartialEq)]
pub struct PointCloud {
    dim: usize,
    coords: Vec<f64>,
}

impl PointCloud {
    pub fn new(points: &[Point]) -> Result<Self> {
        let first = points.first().ok_or(Error::EmptyInput("point cloud"))?;
        let dim = first.dim();
        let mut coords = Vec::with_capacity(dim * points.len());
        for p in points {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: p.dim(),
                });
            }
            coords.extend_from_slice(p.coords());
        }
        Ok(PointCloud { dim, coords })
    }

    /// Builds a cloud from flat row-major coordinates.
    pub fn from_flat(dim: usize, coords: Vec<f64>) -> Result<Self> {
        if dim < 2 {
            return Err(Error::InvalidArgument("dimension must be at least 2".into()));
        }
        if coords.is_empty() {
            return Err(Error::EmptyInput("point cloud"));
        }
        if coords.len() % dim != 0 {
            return Err(Error::InvalidArgument(
                "coordinate count is not a multiple of the dimension".into(),
            ));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidArgument("non-finite coordinate".into()));
        }
        Ok(PointCloud { dim, coords })
    }

    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let first = rows.first().ok_or(Error::EmptyInput("point cloud"))?;
        let dim = first.as_ref().len();
        let mut coords = Vec::with_capacity(dim * rows.len());
        for r in rows {
            let r = r.as_ref();
            if r.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: r.len(),
                });
            }
            coords.extend_from_slice(r);
        }
        Self::from_flat(dim, coords)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = &[f64]> + '_ {
        self.coords.chunks_exact(self.dim)
    }

    pub fn flat(&self) -> &[f64] {
        &self.coords
    }

    pub fn distance(&self, i: usize, j: usize) -> f64 {
        math::dist(self.point(i), self.point(j))
    }

    /// Largest pairwise distance.
    pub fn diameter(&self) -> f64 {
        let n = self.len();
        let mut best = 0.0f64;
        for i in 0..n {
            for j in i + 1..n {
                best = best.max(self.distance(i, j));
            }
        }
        best
    }

    /// Index of the point nearest to `x`; ties go to the smallest index.
    pub fn nearest(&self, x: &[f64]) -> usize {
        let mut best = 0;
        let mut best_d = f64::INFINITY;
        for (i, p) in self.iter().enumerate() {
            let d = math::hypot2(p, x);
            if d < best_d {
                best = i;
                best_d = d;
            }
        }
        best
    }
}

impl Index<usize> for PointCloud {
    type Output = [f64];

    fn index(&self, i: usize) -> &[f64] {
        self.point(i)
    }
}

/// Index of the sample point closest to `x` (smallest index on ties).
pub fn nearest_sample_point(cloud: &PointCloud, x: &[f64]) -> usize {
    cloud.nearest(x)
}

fn directed_hausdorff(a: &PointCloud, b: &PointCloud) -> f64 {
    a.iter()
        .map(|p| b.iter().map(|q| math::hypot2(p, q)).fold(f64::INFINITY, f64::min))
        .fold(0.0, f64::max)
}

/// Hausdorff distance between two finite point sets.
pub fn hausdorff_distance(a: &PointCloud, b: &PointCloud) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptyInput("hausdorff_distance"));
    }
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    let d2 = directed_hausdorff(a, b).max(directed_hausdorff(b, a));
    Ok(math::sqrt(d2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn cloud(rows: &[[f64; 2]]) -> PointCloud {
        PointCloud::from_rows(rows).unwrap()
    }

    #[test]
    fn distance_examples() {
        assert_eq!(euclidean_distance(&[0.0, 0.0], &[0.0, 0.0]).unwrap(), 0.0);
        assert_eq!(euclidean_distance(&[0.0, 0.0], &[3.0, 4.0]).unwrap(), 5.0);
        let d = euclidean_distance(&[1.0, 1.0], &[2.0, 3.0]).unwrap();
        let oracle = libm::sqrt(1.0 * 1.0 + 2.0 * 2.0);
        assert!((d - oracle).abs() < 1e-15);
        assert!((d - 2.236_067_977_499_79).abs() < 1e-12);
    }

    #[test]
    fn distance_dimension_mismatch() {
        assert!(matches!(
            euclidean_distance(&[0.0, 0.0], &[0.0, 0.0, 1.0]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn hausdorff_examples() {
        let a = cloud(&[[0.0, 0.0], [1.0, 2.0], [3.0, -1.0]]);
        assert_eq!(hausdorff_distance(&a, &a).unwrap(), 0.0);
        let a = cloud(&[[0.0, 0.0]]);
        let b = cloud(&[[3.0, 4.0]]);
        assert_eq!(hausdorff_distance(&a, &b).unwrap(), 5.0);
        let a = cloud(&[[0.0, 0.0], [10.0, 0.0]]);
        let b = cloud(&[[0.0, 1.0]]);
        assert!((hausdorff_distance(&a, &b).unwrap() - libm::sqrt(101.0)).abs() < 1e-12);
    }

    #[test]
    fn empty_cloud_rejected() {
        assert!(matches!(PointCloud::from_flat(2, vec![]), Err(Error::EmptyInput(_))));
        assert!(PointCloud::new(&[]).is_err());
    }

    #[test]
    fn nearest_examples() {
        let s = cloud(&[[0.0, 0.0], [1.0, 0.0]]);
        assert_eq!(nearest_sample_point(&s, &[1.0, 0.0]), 1);
        assert_eq!(nearest_sample_point(&s, &[0.4, 0.0]), 0);
        assert_eq!(nearest_sample_point(&s, &[0.5, 0.0]), 0);
    }

    #[test]
    fn point_rejects_non_finite() {
        assert!(Point::new(vec![0.0, f64::NAN]).is_err());
        assert!(Point::new(vec![1.0]).is_err());
    }
}
