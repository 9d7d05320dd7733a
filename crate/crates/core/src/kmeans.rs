//! Lloyd's k-means over horizontal vehicle positions.
//!
//! Initial centers are distinct input points chosen uniformly without
//! replacement. Iteration stops once no center moves by `tolerance` metres
//! or more, or after `max_iter` passes.

use rand::seq::index;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::geom::Point2;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KmeansParams {
    pub n_clusters: usize,
    pub max_iter: usize,
    /// Metres.
    pub tolerance: f64,
}

impl KmeansParams {
    pub fn new(n_clusters: usize) -> Self {
        Self {
            n_clusters,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_clusters == 0 {
            return Err(Error::param("kmeans.n_clusters", "must be at least 1"));
        }
        if self.max_iter == 0 {
            return Err(Error::param("kmeans.max_iter", "must be at least 1"));
        }
        if !(self.tolerance > 0.0) {
            return Err(Error::param("kmeans.tolerance", "must be positive"));
        }
        Ok(())
    }
}

impl Default for KmeansParams {
    fn default() -> Self {
        Self {
            n_clusters: 1,
            max_iter: 100,
            tolerance: 1e-3,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClusterResult {
    pub centers: Vec<Point2>,
    pub membership: Vec<usize>,
    pub iterations_used: usize,
    /// Within-cluster sum of squares after each pass.
    pub inertia_history: Vec<f64>,
}

impl ClusterResult {
    pub fn cluster_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.centers.len()];
        for &m in &self.membership {
            sizes[m] += 1;
        }
        sizes
    }
}

fn nearest(p: Point2, centers: &[Point2]) -> usize {
    let mut best = 0;
    let mut best_d = f64::INFINITY;
    for (j, c) in centers.iter().enumerate() {
        let d = p.dist_sq(*c);
        if d < best_d {
            best_d = d;
            best = j;
        }
    }
    best
}

fn means(points: &[Point2], membership: &[usize], previous: &[Point2]) -> Vec<Point2> {
    let k = previous.len();
    let mut sums = vec![(0.0, 0.0, 0usize); k];
    for (p, &m) in points.iter().zip(membership) {
        sums[m].0 += p.x;
        sums[m].1 += p.y;
        sums[m].2 += 1;
    }
    sums.iter()
        .zip(previous)
        .map(|(&(sx, sy, n), prev)| {
            if n == 0 {
                *prev
            } else {
                Point2::new(sx / n as f64, sy / n as f64)
            }
        })
        .collect()
}

pub fn inertia(points: &[Point2], centers: &[Point2], membership: &[usize]) -> f64 {
    points
        .iter()
        .zip(membership)
        .map(|(p, &m)| p.dist_sq(centers[m]))
        .sum()
}

/// Gives every empty cluster a member: the point currently farthest from
/// its own center (taken only from clusters that can spare one) becomes the
/// empty cluster's center and sole member.
pub fn reseed_empty_cluster(result: &ClusterResult, points: &[Point2]) -> ClusterResult {
    let mut out = result.clone();
    let k = out.centers.len();
    let mut sizes = out.cluster_sizes();
    for empty in 0..k {
        if sizes[empty] > 0 {
            continue;
        }
        let donor = points
            .iter()
            .enumerate()
            .filter(|&(i, _)| sizes[out.membership[i]] > 1)
            .map(|(i, p)| (i, p.dist_sq(out.centers[out.membership[i]])))
            .fold(None, |best: Option<(usize, f64)>, (i, d)| match best {
                Some((_, bd)) if bd >= d => best,
                _ => Some((i, d)),
            });
        // With at least k points some cluster always has a spare member.
        let Some((i, _)) = donor else { break };
        sizes[out.membership[i]] -= 1;
        sizes[empty] += 1;
        out.membership[i] = empty;
        out.centers[empty] = points[i];
    }
    out
}

pub fn kmeans<R: Rng + ?Sized>(
    points: &[Point2],
    params: &KmeansParams,
    rng: &mut R,
) -> Result<ClusterResult> {
    params.validate()?;
    if points.len() < params.n_clusters {
        return Err(Error::TooFewPoints {
            needed: params.n_clusters,
            got: points.len(),
        });
    }
    let init: Vec<Point2> = index::sample(rng, points.len(), params.n_clusters)
        .into_iter()
        .map(|i| points[i])
        .collect();
    Ok(lloyd(points, init, params))
}

/// Lloyd iterations from the given initial centers.
pub fn lloyd(points: &[Point2], init: Vec<Point2>, params: &KmeansParams) -> ClusterResult {
    let mut result = ClusterResult {
        centers: init,
        membership: vec![0; points.len()],
        iterations_used: 0,
        inertia_history: Vec::new(),
    };
    for iter in 1..=params.max_iter {
        result.membership = points
            .iter()
            .map(|p| nearest(*p, &result.centers))
            .collect();
        if result.cluster_sizes().contains(&0) {
            result = reseed_empty_cluster(&result, points);
        }
        let next = means(points, &result.membership, &result.centers);
        let shift = next
            .iter()
            .zip(&result.centers)
            .map(|(a, b)| a.dist(*b))
            .fold(0.0, f64::max);
        result.centers = next;
        result.iterations_used = iter;
        result
            .inertia_history
            .push(inertia(points, &result.centers, &result.membership));
        if shift < params.tolerance {
            break;
        }
    }
    result
}
