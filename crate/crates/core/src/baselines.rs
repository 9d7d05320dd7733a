//! Comparison solvers over the same plan fitness: a genetic algorithm with a
//! uniform random start, global-best particle swarm, and sine cosine search.
//!
//! PSO and SCA work on the flattened plan vector `[x1, y1, h1, x2, ...]`.
//! Their iteration count includes the initial evaluation round, so
//! `n · max_iter` plans are scored, the same as a GA with population `n`
//! run for `max_iter` generations.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::coverage::{DeploymentPlan, Problem};
use crate::geom::{Point3, SearchSpace};
use crate::qosioa::{self, GaParams, SolveReport};
use crate::rng::seeded;
use crate::{Error, Result};

pub fn ga_plain_solve(
    problem: &Problem,
    n_uavs: usize,
    ga: &GaParams,
    seed: u64,
) -> Result<SolveReport> {
    ga.validate()?;
    if n_uavs == 0 {
        return Err(Error::param("n_uavs", "must be at least 1"));
    }
    let mut rng = seeded(seed);
    let initial = qosioa::random_population(problem, n_uavs, ga.pop_size, &mut rng);
    Ok(qosioa::evolve(problem, initial, ga, &mut rng, seed))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PsoParams {
    pub n_particles: usize,
    pub max_iter: usize,
    pub inertia: f64,
    pub cognitive: f64,
    pub social: f64,
    /// Per-coordinate speed limit, metres per iteration.
    pub velocity_clamp: f64,
}

impl Default for PsoParams {
    fn default() -> Self {
        Self {
            n_particles: 10,
            max_iter: 100,
            inertia: 0.7,
            cognitive: 1.5,
            social: 1.5,
            velocity_clamp: 300.0,
        }
    }
}

impl PsoParams {
    pub fn validate(&self) -> Result<()> {
        if self.n_particles == 0 || self.max_iter == 0 {
            return Err(Error::param(
                "pso",
                "particle and iteration counts must be positive",
            ));
        }
        if !(self.inertia > 0.0 && self.inertia <= 1.0) {
            return Err(Error::param("pso.inertia", "must lie in (0, 1]"));
        }
        if !(self.cognitive > 0.0 && self.social > 0.0) {
            return Err(Error::param("pso.cognitive/social", "must be positive"));
        }
        if !(self.velocity_clamp > 0.0) {
            return Err(Error::param("pso.velocity_clamp", "must be positive"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScaParams {
    pub n_agents: usize,
    pub max_iter: usize,
    /// Starting amplitude of the step; decays linearly to 0.
    pub r1_initial: f64,
}

impl Default for ScaParams {
    fn default() -> Self {
        Self {
            n_agents: 10,
            max_iter: 100,
            r1_initial: 2.0,
        }
    }
}

impl ScaParams {
    pub fn validate(&self) -> Result<()> {
        if self.n_agents == 0 || self.max_iter == 0 {
            return Err(Error::param(
                "sca",
                "agent and iteration counts must be positive",
            ));
        }
        if !(self.r1_initial > 0.0) {
            return Err(Error::param("sca.r1_initial", "must be positive"));
        }
        Ok(())
    }
}

fn lower_upper(space: &SearchSpace, n_uavs: usize) -> (Vec<f64>, Vec<f64>) {
    let lo = space.lower();
    let hi = space.upper();
    (
        (0..3 * n_uavs).map(|d| lo[d % 3]).collect(),
        (0..3 * n_uavs).map(|d| hi[d % 3]).collect(),
    )
}

fn decode(problem: &Problem, x: &[f64]) -> DeploymentPlan {
    problem.plan(x.chunks_exact(3).map(|g| Point3::new(g[0], g[1], g[2])))
}

fn sample_vector<R: Rng + ?Sized>(lo: &[f64], hi: &[f64], rng: &mut R) -> Vec<f64> {
    lo.iter()
        .zip(hi)
        .map(|(&l, &h)| if h > l { rng.gen_range(l..=h) } else { l })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct Swarm {
    pub positions: Vec<Vec<f64>>,
    pub velocities: Vec<Vec<f64>>,
    pub pbest: Vec<Vec<f64>>,
    pub pbest_fit: Vec<i64>,
    pub gbest: Vec<f64>,
    pub gbest_fit: i64,
}

impl Swarm {
    /// Velocity and position update for every particle, with per-coordinate
    /// draws for the cognitive and social terms.
    pub fn step<R: Rng + ?Sized>(
        &mut self,
        params: &PsoParams,
        lo: &[f64],
        hi: &[f64],
        rng: &mut R,
    ) {
        let vmax = params.velocity_clamp;
        for p in 0..self.positions.len() {
            for d in 0..lo.len() {
                let x = self.positions[p][d];
                let r1: f64 = rng.gen();
                let r2: f64 = rng.gen();
                let v = params.inertia * self.velocities[p][d]
                    + params.cognitive * r1 * (self.pbest[p][d] - x)
                    + params.social * r2 * (self.gbest[d] - x);
                let v = v.clamp(-vmax, vmax);
                self.velocities[p][d] = v;
                self.positions[p][d] = (x + v).clamp(lo[d], hi[d]);
            }
        }
    }

    /// Updates personal and global bests on strict improvement.
    pub fn absorb(&mut self, fitness: &[i64]) {
        for (p, &f) in fitness.iter().enumerate() {
            if f > self.pbest_fit[p] {
                self.pbest_fit[p] = f;
                self.pbest[p] = self.positions[p].clone();
            }
            if f > self.gbest_fit {
                self.gbest_fit = f;
                self.gbest = self.positions[p].clone();
            }
        }
    }
}

pub fn pso_solve(
    problem: &Problem,
    n_uavs: usize,
    params: &PsoParams,
    seed: u64,
) -> Result<SolveReport> {
    params.validate()?;
    if n_uavs == 0 {
        return Err(Error::param("n_uavs", "must be at least 1"));
    }
    let mut rng = seeded(seed);
    let (lo, hi) = lower_upper(&problem.space, n_uavs);
    let vmax = params.velocity_clamp;
    let positions: Vec<Vec<f64>> = (0..params.n_particles)
        .map(|_| sample_vector(&lo, &hi, &mut rng))
        .collect();
    let velocities: Vec<Vec<f64>> = (0..params.n_particles)
        .map(|_| (0..lo.len()).map(|_| rng.gen_range(-vmax..=vmax)).collect())
        .collect();
    let mut swarm = Swarm {
        pbest: positions.clone(),
        pbest_fit: vec![i64::MIN; params.n_particles],
        gbest: positions[0].clone(),
        gbest_fit: i64::MIN,
        positions,
        velocities,
    };

    let mut archive = Vec::with_capacity(params.max_iter);
    let mut evaluations = 0;
    for it in 0..params.max_iter {
        if it > 0 {
            swarm.step(params, &lo, &hi, &mut rng);
        }
        let fitness: Vec<i64> = swarm
            .positions
            .iter()
            .map(|x| problem.fitness(&decode(problem, x)))
            .collect();
        evaluations += fitness.len();
        swarm.absorb(&fitness);
        archive.push((decode(problem, &swarm.gbest), swarm.gbest_fit));
    }
    Ok(SolveReport::from_archive(
        problem,
        archive,
        evaluations,
        seed,
    ))
}

/// Moves every agent toward or around the destination:
/// `x + r1·sin(r2)·|r3·dest − x|` or the cosine branch, chosen by a fair
/// coin per coordinate, then clamped.
pub fn sca_step<R: Rng + ?Sized>(
    agents: &mut [Vec<f64>],
    dest: &[f64],
    r1: f64,
    lo: &[f64],
    hi: &[f64],
    rng: &mut R,
) {
    for x in agents.iter_mut() {
        for d in 0..dest.len() {
            let r2 = rng.gen_range(0.0..std::f64::consts::TAU);
            let r3 = rng.gen_range(0.0..2.0);
            let r4: f64 = rng.gen();
            let gap = (r3 * dest[d] - x[d]).abs();
            let wave = if r4 < 0.5 { r2.sin() } else { r2.cos() };
            x[d] = (x[d] + r1 * wave * gap).clamp(lo[d], hi[d]);
        }
    }
}

pub fn sca_solve(
    problem: &Problem,
    n_uavs: usize,
    params: &ScaParams,
    seed: u64,
) -> Result<SolveReport> {
    params.validate()?;
    if n_uavs == 0 {
        return Err(Error::param("n_uavs", "must be at least 1"));
    }
    let mut rng = seeded(seed);
    let (lo, hi) = lower_upper(&problem.space, n_uavs);
    let mut agents: Vec<Vec<f64>> = (0..params.n_agents)
        .map(|_| sample_vector(&lo, &hi, &mut rng))
        .collect();
    let mut dest = agents[0].clone();
    let mut dest_fit = i64::MIN;

    let mut archive = Vec::with_capacity(params.max_iter);
    let mut evaluations = 0;
    for it in 0..params.max_iter {
        if it > 0 {
            let r1 = params.r1_initial * (1.0 - it as f64 / params.max_iter as f64);
            sca_step(&mut agents, &dest, r1, &lo, &hi, &mut rng);
        }
        for x in &agents {
            let f = problem.fitness(&decode(problem, x));
            evaluations += 1;
            if f > dest_fit {
                dest_fit = f;
                dest = x.clone();
            }
        }
        archive.push((decode(problem, &dest), dest_fit));
    }
    Ok(SolveReport::from_archive(
        problem,
        archive,
        evaluations,
        seed,
    ))
}
