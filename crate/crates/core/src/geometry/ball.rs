use alloc::vec::Vec;

use crate::math;
use crate::{Error, Result};

/// A closed Euclidean ball.
#[derive(Debug, Clone, PartialEq)]
pub struct Ball {
    pub center: Vec<f64>,
    pub radius: f64,
}

impl Ball {
    pub fn contains(&self, p: &[f64], slack: f64) -> bool {
        math::dist(&self.center, p) <= self.radius + slack
    }
}

/// Smallest ball whose boundary passes through all of `support`, with its
/// center in their affine hull. `None` if the support is affinely dependent.
pub(crate) fn circumball(support: &[&[f64]]) -> Option<Ball> {
    let first = *support.first()?;
    let k = support.len() - 1;
    if k == 0 {
        return Some(Ball {
            center: first.to_vec(),
            radius: 0.0,
        });
    }
    let dim = first.len();
    if k > dim {
        return None;
    }
    let diffs: Vec<Vec<f64>> = support[1..]
        .iter()
        .map(|p| p.iter().zip(first).map(|(a, b)| a - b).collect())
        .collect();
    let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
    let mut gram = alloc::vec![0.0; k * k];
    let mut rhs = alloc::vec![0.0; k];
    for i in 0..k {
        for j in 0..k {
            gram[i * k + j] = 2.0 * dot(&diffs[i], &diffs[j]);
        }
        rhs[i] = dot(&diffs[i], &diffs[i]);
    }
    math::solve_linear(&mut gram, &mut rhs, k)?;
    let mut center = first.to_vec();
    for (lambda, d) in rhs.iter().zip(&diffs) {
        for (c, x) in center.iter_mut().zip(d) {
            *c += lambda * x;
        }
    }
    let radius = support.iter().map(|p| math::dist(&center, p)).fold(0.0, f64::max);
    Some(Ball { center, radius })
}

fn tolerance(ball: &Ball) -> f64 {
    1e-12 * ball.radius.max(1.0)
}

/// Exhaustive fallback for degenerate boundary sets: the smallest
/// circumball of a subset of `pts` that contains all of them.
fn smallest_over_subsets(pts: &[&[f64]]) -> Ball {
    let n = pts.len();
    let mut best: Option<Ball> = None;
    for mask in 1u32..(1u32 << n) {
        let subset: Vec<&[f64]> = (0..n).filter(|i| mask & (1 << i) != 0).map(|i| pts[i]).collect();
        if let Some(ball) = circumball(&subset) {
            let tol = tolerance(&ball);
            if pts.iter().all(|p| ball.contains(p, tol)) && best.as_ref().map_or(true, |b| ball.radius < b.radius) {
                best = Some(ball);
            }
        }
    }
    best.expect("a single point always yields a ball")
}

fn welzl<'a>(points: &[&'a [f64]], prefix: usize, boundary: &mut Vec<&'a [f64]>, dim: usize) -> Option<Ball> {
    let mut ball = if boundary.is_empty() {
        None
    } else {
        Some(circumball(boundary).unwrap_or_else(|| smallest_over_subsets(boundary)))
    };
    if boundary.len() == dim + 1 {
        return ball;
    }
    for i in 0..prefix {
        let p = points[i];
        let inside = ball.as_ref().is_some_and(|b| b.contains(p, tolerance(b)));
        if !inside {
            boundary.push(p);
            ball = welzl(points, i, boundary, dim);
            boundary.pop();
        }
    }
    ball
}

/// Smallest ball containing every point of `points` (Welzl's algorithm).
pub fn minimal_enclosing_ball<P: AsRef<[f64]>>(points: &[P]) -> Result<Ball> {
    let first = points.first().ok_or(Error::EmptyInput("minimal_enclosing_ball"))?;
    let dim = first.as_ref().len();
    let refs: Vec<&[f64]> = points.iter().map(|p| p.as_ref()).collect();
    if let Some(bad) = refs.iter().find(|p| p.len() != dim) {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: bad.len(),
        });
    }
    let mut boundary = Vec::with_capacity(dim + 1);
    Ok(welzl(&refs, refs.len(), &mut boundary, dim).expect("nonempty input"))
}

/// Radius of the minimal enclosing ball of the listed points of a slice of
/// rows; used by the Čech construction.
pub(crate) fn enclosing_radius(points: &[&[f64]]) -> f64 {
    match points.len() {
        0 => 0.0,
        1 => 0.0,
        2 => 0.5 * math::dist(points[0], points[1]),
        _ => {
            let dim = points[0].len();
            let mut boundary = Vec::with_capacity(dim + 1);
            welzl(points, points.len(), &mut boundary, dim)
                .map(|b| b.radius)
                .unwrap_or(0.0)
        }
    }
}
