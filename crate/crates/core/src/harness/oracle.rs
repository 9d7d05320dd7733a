use rayon::prelude::*;

use crate::coverage::{DeploymentPlan, Problem};
use crate::geom::{Point3, Range};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridSpec {
    pub nx: usize,
    pub ny: usize,
    pub nh: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            nx: 30,
            ny: 30,
            nh: 5,
        }
    }
}

#[derive(Debug, Clone)]
pub struct OracleResult {
    pub best_fitness: i64,
    /// First grid point reaching `best_fitness`, scanning h, then x, then y.
    pub best_plan: DeploymentPlan,
    pub evaluated: usize,
}

/// `n` evenly spaced values over `r`, both endpoints included.
pub fn grid_axis(r: Range, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![0.5 * (r.lo + r.hi)],
        _ => (0..n)
            .map(|i| r.lo + r.width() * i as f64 / (n - 1) as f64)
            .collect(),
    }
}

/// Exhaustive search over single-UAV placements on a regular grid spanning
/// the problem's search space.
pub fn grid_search(problem: &Problem, n_uavs: usize, grid: GridSpec) -> Result<OracleResult> {
    if n_uavs != 1 {
        return Err(Error::param(
            "n_uavs",
            "the grid oracle handles exactly one UAV",
        ));
    }
    if grid.nx == 0 || grid.ny == 0 || grid.nh == 0 {
        return Err(Error::param("grid", "every axis needs at least one point"));
    }
    let xs = grid_axis(problem.space.x, grid.nx);
    let ys = grid_axis(problem.space.y, grid.ny);
    let hs = grid_axis(problem.space.h, grid.nh);

    let mut points = Vec::with_capacity(xs.len() * ys.len() * hs.len());
    for &h in &hs {
        for &x in &xs {
            for &y in &ys {
                points.push(Point3 { x, y, h });
            }
        }
    }
    let scores: Vec<i64> = points
        .par_iter()
        .map(|&p| problem.fitness(&problem.plan([p])))
        .collect();

    let mut best = 0;
    for (i, &s) in scores.iter().enumerate() {
        if s > scores[best] {
            best = i;
        }
    }
    Ok(OracleResult {
        best_fitness: scores[best],
        best_plan: problem.plan([points[best]]),
        evaluated: points.len(),
    })
}
