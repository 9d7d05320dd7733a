//! Hybrid genetic solver for UAV placement.
//!
//! Every individual of the initial population is built from a fresh k-means
//! clustering of the vehicles (cluster centers become UAV ground positions,
//! altitudes are uniform in the allowed band). A grey wolf run seeded from
//! those centers then overwrites the ground position of one randomly chosen
//! UAV. The population evolves by binary tournament selection, single-point
//! crossover over whole UAV genes and single-gene resampling mutation. The
//! best individual of each generation is archived before the operators run,
//! and the answer is the best archived plan.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::coverage::{DeploymentPlan, Problem};
use crate::geom::{Point2, Point3, SearchSpace};
use crate::kigwo::{self, Bounds2, GwoParams};
use crate::kmeans::{self, KmeansParams};
use crate::rng::{seeded, sub_seed};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaParams {
    pub generations: usize,
    pub pop_size: usize,
    pub crossover_rate: f64,
    pub mutation_rate: f64,
}

impl Default for GaParams {
    fn default() -> Self {
        Self {
            generations: 100,
            pop_size: 10,
            crossover_rate: 0.8,
            mutation_rate: 0.1,
        }
    }
}

impl GaParams {
    pub fn validate(&self) -> Result<()> {
        if self.generations == 0 {
            return Err(Error::param("ga.generations", "must be at least 1"));
        }
        if self.pop_size < 2 {
            return Err(Error::param("ga.pop_size", "must be at least 2"));
        }
        for (field, v) in [
            ("ga.crossover_rate", self.crossover_rate),
            ("ga.mutation_rate", self.mutation_rate),
        ] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::param(field, format!("must lie in [0, 1], got {v}")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeedingMode {
    /// k-means and grey wolf run once per individual.
    PerIndividual,
    /// k-means per individual, one grey wolf α shared by all of them.
    SharedAlpha,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QosioaOptions {
    pub seeding: SeedingMode,
    /// Probability that an individual gets the α substitution.
    pub substitution_rate: f64,
}

impl Default for QosioaOptions {
    fn default() -> Self {
        Self {
            seeding: SeedingMode::PerIndividual,
            substitution_rate: 1.0,
        }
    }
}

/// Solver settings for the hybrid algorithm. `kmeans.n_clusters` is
/// overridden by the UAV count.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct QosioaParams {
    pub ga: GaParams,
    pub kmeans: KmeansParams,
    pub gwo: GwoParams,
    pub options: QosioaOptions,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Population {
    pub individuals: Vec<DeploymentPlan>,
    pub fitness: Vec<i64>,
}

impl Population {
    pub fn evaluate(problem: &Problem, individuals: Vec<DeploymentPlan>) -> Self {
        let fitness = individuals.iter().map(|p| problem.fitness(p)).collect();
        Self {
            individuals,
            fitness,
        }
    }

    pub fn len(&self) -> usize {
        self.individuals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.individuals.is_empty()
    }

    /// Index of the fittest individual; the first one on ties.
    pub fn best_index(&self) -> usize {
        let mut best = 0;
        for (i, &f) in self.fitness.iter().enumerate() {
            if f > self.fitness[best] {
                best = i;
            }
        }
        best
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub best_plan: DeploymentPlan,
    pub best_fitness: i64,
    pub per_uav_radii: Vec<f64>,
    pub coverage_fraction: f64,
    pub generation_best_curve: Vec<i64>,
    pub evaluations: usize,
    pub seed: u64,
}

impl SolveReport {
    pub fn feasible(&self) -> bool {
        self.best_fitness >= 0
    }

    pub(crate) fn from_archive(
        problem: &Problem,
        archive: Vec<(DeploymentPlan, i64)>,
        evaluations: usize,
        seed: u64,
    ) -> Self {
        let curve: Vec<i64> = archive.iter().map(|(_, f)| *f).collect();
        let mut best = 0;
        for (i, &f) in curve.iter().enumerate() {
            if f > curve[best] {
                best = i;
            }
        }
        let (best_plan, best_fitness) = archive.into_iter().nth(best).expect("non-empty archive");
        Self {
            per_uav_radii: problem.radii(&best_plan),
            coverage_fraction: problem.coverage_fraction(best_fitness),
            best_plan,
            best_fitness,
            generation_best_curve: curve,
            evaluations,
            seed,
        }
    }
}

fn horizontal_bounds(space: &SearchSpace) -> Bounds2 {
    Bounds2 {
        x: space.x,
        y: space.y,
    }
}

/// Builds the seeded initial population.
pub fn init_population<R: Rng + ?Sized>(
    problem: &Problem,
    n_uavs: usize,
    params: &QosioaParams,
    rng: &mut R,
) -> Result<Vec<DeploymentPlan>> {
    params.ga.validate()?;
    if n_uavs == 0 {
        return Err(Error::param("n_uavs", "must be at least 1"));
    }
    if problem.vehicles.len() < n_uavs {
        return Err(Error::TooFewPoints {
            needed: n_uavs,
            got: problem.vehicles.len(),
        });
    }
    let points: Vec<Point2> = problem
        .vehicles
        .iter()
        .map(|v| v.pos.horizontal())
        .collect();
    let km = KmeansParams {
        n_clusters: n_uavs,
        ..params.kmeans.clone()
    };
    let bounds = horizontal_bounds(&problem.space);
    let mut shared_alpha: Option<Point2> = None;

    let mut out = Vec::with_capacity(params.ga.pop_size);
    for _ in 0..params.ga.pop_size {
        let clusters = kmeans::kmeans(&points, &km, &mut seeded(sub_seed(rng)))?;
        let mut plan = problem.plan(clusters.centers.iter().map(|c| {
            let c = problem.space.clamp_horizontal(*c);
            Point3::new(c.x, c.y, problem.space.h.sample(rng))
        }));

        let gwo_seed = sub_seed(rng);
        let alpha = match (params.options.seeding, shared_alpha) {
            (SeedingMode::SharedAlpha, Some(a)) => a,
            _ => {
                let a = kigwo::kigwo(
                    &points,
                    &clusters.centers,
                    &params.gwo,
                    &bounds,
                    &mut seeded(gwo_seed),
                )?;
                shared_alpha = Some(a);
                a
            }
        };
        if rng.gen::<f64>() < params.options.substitution_rate {
            let j = rng.gen_range(0..n_uavs);
            plan.uavs[j].pos.x = alpha.x;
            plan.uavs[j].pos.y = alpha.y;
        }
        out.push(plan);
    }
    Ok(out)
}

/// Uniform random plans, for the plain GA baseline.
pub fn random_population<R: Rng + ?Sized>(
    problem: &Problem,
    n_uavs: usize,
    pop_size: usize,
    rng: &mut R,
) -> Vec<DeploymentPlan> {
    (0..pop_size)
        .map(|_| problem.plan((0..n_uavs).map(|_| problem.space.sample(rng))))
        .collect()
}

/// `pop.len()` binary tournaments with replacement. The fitter competitor
/// wins; the first drawn wins ties.
pub fn tournament_select<R: Rng + ?Sized>(pop: &Population, rng: &mut R) -> Population {
    let n = pop.len();
    let mut individuals = Vec::with_capacity(n);
    let mut fitness = Vec::with_capacity(n);
    for _ in 0..n {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        let w = if pop.fitness[b] > pop.fitness[a] {
            b
        } else {
            a
        };
        individuals.push(pop.individuals[w].clone());
        fitness.push(pop.fitness[w]);
    }
    Population {
        individuals,
        fitness,
    }
}

/// Swaps every gene from index `cut` onward between the two parents.
pub fn single_point_crossover(
    a: &DeploymentPlan,
    b: &DeploymentPlan,
    cut: usize,
) -> (DeploymentPlan, DeploymentPlan) {
    let mut c = a.clone();
    let mut d = b.clone();
    for j in cut..a.len().min(b.len()) {
        c.uavs[j] = b.uavs[j];
        d.uavs[j] = a.uavs[j];
    }
    (c, d)
}

/// Pairs individuals at random; each pair crosses over with probability
/// `p_c` at a uniform cut strictly inside the chromosome. The offspring take
/// their parents' slots. An odd one out passes through.
pub fn crossover<R: Rng + ?Sized>(
    mut individuals: Vec<DeploymentPlan>,
    p_c: f64,
    rng: &mut R,
) -> Vec<DeploymentPlan> {
    let mut order: Vec<usize> = (0..individuals.len()).collect();
    order.shuffle(rng);
    for pair in order.chunks_exact(2) {
        let (i, k) = (pair[0], pair[1]);
        if rng.gen::<f64>() >= p_c {
            continue;
        }
        let genes = individuals[i].len().min(individuals[k].len());
        if genes < 2 {
            continue;
        }
        let cut = rng.gen_range(1..genes);
        let (c, d) = single_point_crossover(&individuals[i], &individuals[k], cut);
        individuals[i] = c;
        individuals[k] = d;
    }
    individuals
}

/// With probability `p_m` per individual, resamples one uniformly chosen
/// UAV anywhere in the search space.
pub fn mutate<R: Rng + ?Sized>(
    mut individuals: Vec<DeploymentPlan>,
    p_m: f64,
    space: &SearchSpace,
    rng: &mut R,
) -> Vec<DeploymentPlan> {
    for plan in individuals.iter_mut() {
        if plan.is_empty() || rng.gen::<f64>() >= p_m {
            continue;
        }
        let j = rng.gen_range(0..plan.len());
        plan.uavs[j].pos = space.sample(rng);
    }
    individuals
}

/// Evolves `initial` for `ga.generations` generations and reports the best
/// archived plan.
pub fn evolve<R: Rng + ?Sized>(
    problem: &Problem,
    initial: Vec<DeploymentPlan>,
    ga: &GaParams,
    rng: &mut R,
    seed: u64,
) -> SolveReport {
    let mut individuals = initial;
    let mut archive = Vec::with_capacity(ga.generations);
    let mut evaluations = 0;
    for _ in 0..ga.generations {
        let pop = Population::evaluate(problem, individuals);
        evaluations += pop.len();
        let b = pop.best_index();
        archive.push((pop.individuals[b].clone(), pop.fitness[b]));

        let selected = tournament_select(&pop, rng);
        let crossed = crossover(selected.individuals, ga.crossover_rate, rng);
        individuals = mutate(crossed, ga.mutation_rate, &problem.space, rng);
    }
    SolveReport::from_archive(problem, archive, evaluations, seed)
}

pub fn solve(
    problem: &Problem,
    n_uavs: usize,
    params: &QosioaParams,
    seed: u64,
) -> Result<SolveReport> {
    params.ga.validate()?;
    params.gwo.validate()?;
    let mut rng = seeded(seed);
    let initial = init_population(problem, n_uavs, params, &mut rng)?;
    Ok(evolve(problem, initial, &params.ga, &mut rng, seed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::ChannelParams;
    use crate::coverage::{validate_constraints, CoverageParams, UavPlacement};
    use crate::scene::{build_scene, spawn_vehicles, RoadScene, SceneConfig, Vehicle};
    use proptest::prelude::*;

    fn fixture(n: usize) -> (RoadScene, Problem) {
        let scene = build_scene(&SceneConfig::default()).unwrap();
        let vehicles = spawn_vehicles(&scene, n, &mut seeded(21)).unwrap();
        let coverage = CoverageParams::default();
        let space = scene.search_space(coverage.altitude);
        let problem = Problem::new(vehicles, ChannelParams::default(), coverage, space).unwrap();
        (scene, problem)
    }

    fn plan_of(tag: f64, n: usize) -> DeploymentPlan {
        DeploymentPlan::new(
            (0..n)
                .map(|j| UavPlacement {
                    pos: Point3::new(tag, j as f64, 1000.0),
                    capacity: 40.0,
                })
                .collect(),
        )
    }

    #[test]
    fn population_shape() {
        let (_, problem) = fixture(40);
        let params = QosioaParams::default();
        let pop = init_population(&problem, 4, &params, &mut seeded(1)).unwrap();
        assert_eq!(pop.len(), 10);
        for plan in &pop {
            assert_eq!(plan.len(), 4);
            assert!(plan.within(&problem.space));
        }
        let again = init_population(&problem, 4, &params, &mut seeded(1)).unwrap();
        assert_eq!(pop, again);
    }

    #[test]
    fn alpha_substitution_lands_on_single_point() {
        let (_, mut problem) = fixture(12);
        let q = Point3::new(1700.0, 1500.0, 750.0);
        for v in problem.vehicles.iter_mut() {
            v.pos = q;
        }
        let params = QosioaParams::default();
        let pop = init_population(&problem, 3, &params, &mut seeded(8)).unwrap();
        for plan in &pop {
            assert!(plan
                .uavs
                .iter()
                .any(|u| u.pos.horizontal().dist(q.horizontal()) < 1.0));
        }
    }

    #[test]
    fn too_few_vehicles() {
        let (_, problem) = fixture(3);
        assert!(init_population(&problem, 4, &QosioaParams::default(), &mut seeded(0)).is_err());
    }

    #[test]
    fn tournament_equal_fitness_draws_from_input() {
        let pop = Population {
            individuals: (0..5).map(|i| plan_of(i as f64, 2)).collect(),
            fitness: vec![3; 5],
        };
        let out = tournament_select(&pop, &mut seeded(4));
        assert_eq!(out.len(), 5);
        assert!(out.individuals.iter().all(|p| pop.individuals.contains(p)));
    }

    #[test]
    fn tournament_pair_always_prefers_fitter() {
        let pop = Population {
            individuals: vec![plan_of(0.0, 2), plan_of(1.0, 2)],
            fitness: vec![5, 1],
        };
        let mut rng = seeded(12);
        for _ in 0..200 {
            let out = tournament_select(&pop, &mut rng);
            // individual 1 only survives a tournament against itself
            for (p, f) in out.individuals.iter().zip(&out.fitness) {
                if *p == pop.individuals[1] {
                    assert_eq!(*f, 1);
                }
            }
        }
    }

    #[test]
    fn tournament_favors_elite() {
        let d = 10;
        let mut fitness = vec![-100; d];
        fitness[3] = 80;
        let pop = Population {
            individuals: (0..d).map(|i| plan_of(i as f64, 1)).collect(),
            fitness,
        };
        let mut rng = seeded(99);
        let trials = 10_000;
        let mut elite = 0usize;
        for _ in 0..trials {
            elite += tournament_select(&pop, &mut rng)
                .fitness
                .iter()
                .filter(|&&f| f == 80)
                .count();
        }
        let freq = elite as f64 / (trials * d) as f64;
        // P(elite wins one tournament) = 1 − (1 − 1/D)² = 0.19
        assert!(freq > 1.0 / d as f64);
        assert!((freq - 0.19).abs() < 0.01, "{freq}");
    }

    #[test]
    fn crossover_rate_zero_is_identity() {
        let pop: Vec<_> = (0..6).map(|i| plan_of(i as f64, 3)).collect();
        assert_eq!(crossover(pop.clone(), 0.0, &mut seeded(1)), pop);
    }

    #[test]
    fn single_point_definition() {
        let a = plan_of(1.0, 2);
        let b = plan_of(2.0, 2);
        let (c, d) = single_point_crossover(&a, &b, 1);
        assert_eq!(c.uavs, vec![a.uavs[0], b.uavs[1]]);
        assert_eq!(d.uavs, vec![b.uavs[0], a.uavs[1]]);
    }

    #[test]
    fn crossover_conserves_genes() {
        let pop: Vec<_> = (0..7).map(|i| plan_of(i as f64, 4)).collect();
        let out = crossover(pop.clone(), 1.0, &mut seeded(3));
        assert_eq!(out.len(), pop.len());
        let key = |u: &UavPlacement| (u.pos.x.to_bits(), u.pos.y.to_bits(), u.pos.h.to_bits());
        for j in 0..4 {
            let mut before: Vec<_> = pop.iter().map(|p| key(&p.uavs[j])).collect();
            let mut after: Vec<_> = out.iter().map(|p| key(&p.uavs[j])).collect();
            before.sort();
            after.sort();
            assert_eq!(before, after);
        }
        assert_ne!(out, pop);
    }

    #[test]
    fn mutation_rates() {
        let (_, problem) = fixture(10);
        let pop: Vec<_> = (0..8).map(|i| plan_of(i as f64, 3)).collect();
        assert_eq!(
            mutate(pop.clone(), 0.0, &problem.space, &mut seeded(1)),
            pop
        );
        let out = mutate(pop.clone(), 1.0, &problem.space, &mut seeded(1));
        for (a, b) in pop.iter().zip(&out) {
            let changed = a.uavs.iter().zip(&b.uavs).filter(|(x, y)| x != y).count();
            assert_eq!(changed, 1);
            for (x, y) in a.uavs.iter().zip(&b.uavs) {
                if x != y {
                    assert!(problem.space.contains(y.pos));
                }
            }
        }
    }

    #[test]
    fn single_vehicle_single_uav() {
        let scene = build_scene(&SceneConfig::default()).unwrap();
        let vehicles: Vec<Vehicle> = spawn_vehicles(&scene, 1, &mut seeded(5)).unwrap();
        let coverage = CoverageParams {
            uav_capacity_mbps: 100.0,
            ..CoverageParams::default()
        };
        let space = scene.search_space(coverage.altitude);
        let channel = ChannelParams {
            r_min: 0.0,
            ..ChannelParams::default()
        };
        let problem = Problem::new(vehicles, channel, coverage, space).unwrap();
        let r = solve(&problem, 1, &QosioaParams::default(), 3).unwrap();
        assert_eq!(r.best_fitness, 1);
        assert_eq!(r.coverage_fraction, 1.0);
    }

    #[test]
    fn one_generation_reports_initial_best() {
        let (_, problem) = fixture(40);
        let params = QosioaParams {
            ga: GaParams {
                generations: 1,
                ..GaParams::default()
            },
            ..QosioaParams::default()
        };
        let r = solve(&problem, 3, &params, 17).unwrap();
        let mut rng = seeded(17);
        let init = init_population(&problem, 3, &params, &mut rng).unwrap();
        let pop = Population::evaluate(&problem, init);
        assert_eq!(r.best_fitness, pop.fitness[pop.best_index()]);
        assert_eq!(r.best_plan, pop.individuals[pop.best_index()]);
        assert_eq!(r.generation_best_curve.len(), 1);
    }

    #[test]
    fn shared_alpha_mode_runs() {
        let (_, problem) = fixture(30);
        let params = QosioaParams {
            options: QosioaOptions {
                seeding: SeedingMode::SharedAlpha,
                substitution_rate: 1.0,
            },
            ..QosioaParams::default()
        };
        let pop = init_population(&problem, 3, &params, &mut seeded(2)).unwrap();
        assert_eq!(pop.len(), 10);
    }

    #[test]
    fn invalid_ga_params() {
        let (_, problem) = fixture(10);
        let mut params = QosioaParams::default();
        params.ga.generations = 0;
        assert!(solve(&problem, 2, &params, 0).is_err());
        params.ga.generations = 5;
        params.ga.mutation_rate = 1.5;
        assert!(solve(&problem, 2, &params, 0).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(12))]

        #[test]
        fn solve_invariants(seed in any::<u64>(), n_uavs in 1usize..5) {
            let (scene, problem) = fixture(30);
            let params = QosioaParams {
                ga: GaParams { generations: 15, ..GaParams::default() },
                ..QosioaParams::default()
            };
            let r = solve(&problem, n_uavs, &params, seed).unwrap();
            prop_assert_eq!(r.generation_best_curve.len(), 15);
            prop_assert_eq!(r.best_fitness, *r.generation_best_curve.iter().max().unwrap());
            prop_assert_eq!(r.best_plan.len(), n_uavs);
            prop_assert!(r.best_plan.within(&problem.space));
            if r.best_fitness >= 0 {
                let eval = problem.evaluate(&r.best_plan);
                prop_assert_eq!(eval.fitness, r.best_fitness);
                let tags = validate_constraints(&r.best_plan, &problem.vehicles, &eval, &scene,
                    &problem.channel, &problem.coverage, &problem.space);
                prop_assert!(tags.is_empty(), "{:?}", tags);
                prop_assert!((r.coverage_fraction - r.best_fitness as f64 / 30.0).abs() < 1e-12);
            }
            let again = solve(&problem, n_uavs, &params, seed).unwrap();
            prop_assert_eq!(again, r);
        }
    }
}
