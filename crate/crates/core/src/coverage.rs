//! Conical UAV footprints, vehicle assignment and plan fitness.
//!
//! A plan's fitness is the number of vehicles served, or
//! [`INFEASIBLE_FITNESS`] as soon as any UAV breaks its data capacity or
//! serves a vehicle whose uplink rate falls below the QoS floor.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::channel::{self, ChannelParams};
use crate::geom::{Point3, Range, SearchSpace};
use crate::scene::{RoadScene, Vehicle};
use crate::{Error, Result};

pub const INFEASIBLE_FITNESS: i64 = -100;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoverageParams {
    /// Full cone opening angle, degrees.
    pub view_angle_deg: f64,
    /// Radius-to-height constant. 0.15 reproduces every published
    /// (altitude, radius) pair at a 45° view angle.
    pub h_alpha: f64,
    /// Altitude band UAVs may fly in, metres above sea level.
    pub altitude: Range,
    /// Data capacity given to each UAV, Mbps.
    pub uav_capacity_mbps: f64,
}

impl Default for CoverageParams {
    fn default() -> Self {
        Self {
            view_angle_deg: 45.0,
            h_alpha: 0.15,
            altitude: Range::new(1000.0, 3000.0),
            uav_capacity_mbps: 100.0,
        }
    }
}

impl CoverageParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.view_angle_deg > 0.0 && self.view_angle_deg < 180.0) {
            return Err(Error::param(
                "coverage.view_angle_deg",
                format!("must lie in (0, 180), got {}", self.view_angle_deg),
            ));
        }
        if !(self.h_alpha > 0.0 && self.h_alpha.is_finite()) {
            return Err(Error::param("coverage.h_alpha", "must be positive"));
        }
        if !self.altitude.is_valid() || self.altitude.lo <= 0.0 {
            return Err(Error::param(
                "coverage.altitude",
                "needs 0 < lo <= hi, both finite",
            ));
        }
        if !(self.uav_capacity_mbps > 0.0 && self.uav_capacity_mbps.is_finite()) {
            return Err(Error::param(
                "coverage.uav_capacity_mbps",
                "must be positive",
            ));
        }
        Ok(())
    }
}

/// One UAV of a plan. Serialized as `[x, y, h, capacity]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 4]", into = "[f64; 4]")]
pub struct UavPlacement {
    pub pos: Point3,
    /// Mbps.
    pub capacity: f64,
}

impl From<[f64; 4]> for UavPlacement {
    fn from(v: [f64; 4]) -> Self {
        Self {
            pos: Point3::new(v[0], v[1], v[2]),
            capacity: v[3],
        }
    }
}

impl From<UavPlacement> for [f64; 4] {
    fn from(u: UavPlacement) -> Self {
        [u.pos.x, u.pos.y, u.pos.h, u.capacity]
    }
}

/// Ordered UAV placements; the genetic chromosome. Each placement is a gene.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DeploymentPlan {
    pub uavs: Vec<UavPlacement>,
}

impl DeploymentPlan {
    pub fn new(uavs: Vec<UavPlacement>) -> Self {
        Self { uavs }
    }

    pub fn from_positions(positions: impl IntoIterator<Item = Point3>, capacity: f64) -> Self {
        Self {
            uavs: positions
                .into_iter()
                .map(|pos| UavPlacement { pos, capacity })
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.uavs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.uavs.is_empty()
    }

    pub fn within(&self, space: &SearchSpace) -> bool {
        self.uavs.iter().all(|u| space.contains(u.pos))
    }
}

pub fn coverage_radius(h_uav_m: f64, params: &CoverageParams) -> f64 {
    h_uav_m * params.h_alpha / (params.view_angle_deg.to_radians() / 2.0).tan()
}

/// Nearest in-range UAV for every vehicle, by horizontal distance. Ties go
/// to the lower UAV index.
pub fn assign_vehicles(
    plan: &DeploymentPlan,
    vehicles: &[Vehicle],
    params: &CoverageParams,
) -> Vec<Option<usize>> {
    let radii: Vec<f64> = plan
        .uavs
        .iter()
        .map(|u| coverage_radius(u.pos.h, params))
        .collect();
    vehicles
        .iter()
        .map(|v| {
            let here = v.pos.horizontal();
            let mut best: Option<(usize, f64)> = None;
            for (j, u) in plan.uavs.iter().enumerate() {
                let d = here.dist(u.pos.horizontal());
                if d <= radii[j] && best.is_none_or(|(_, bd)| d < bd) {
                    best = Some((j, d));
                }
            }
            best.map(|(j, _)| j)
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    Capacity,
    Qos,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub uav: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalResult {
    pub assignment: Vec<Option<usize>>,
    pub per_uav_sets: Vec<Vec<usize>>,
    pub per_uav_counts: Vec<usize>,
    pub fitness: i64,
    pub feasible: bool,
    pub violation: Option<Violation>,
}

impl EvalResult {
    pub fn covered(&self) -> usize {
        self.per_uav_counts.iter().sum()
    }
}

/// Scores a plan. UAVs are checked in index order; the first one that breaks
/// its capacity or leaves a served vehicle under `r_min` makes the whole
/// plan infeasible. A link the channel model cannot evaluate (UAV below the
/// vehicle, zero distance) counts as a QoS failure.
pub fn evaluate_plan(
    plan: &DeploymentPlan,
    vehicles: &[Vehicle],
    channel_params: &ChannelParams,
    coverage_params: &CoverageParams,
) -> EvalResult {
    let assignment = assign_vehicles(plan, vehicles, coverage_params);
    let mut per_uav_sets = vec![Vec::new(); plan.len()];
    for (i, a) in assignment.iter().enumerate() {
        if let Some(j) = *a {
            per_uav_sets[j].push(i);
        }
    }
    let per_uav_counts: Vec<usize> = per_uav_sets.iter().map(Vec::len).collect();

    let mut violation = None;
    for (j, members) in per_uav_sets.iter().enumerate() {
        let uav = &plan.uavs[j];
        let load: f64 = members.iter().map(|&i| vehicles[i].rate_demand).sum();
        if load > uav.capacity {
            violation = Some(Violation {
                kind: ViolationKind::Capacity,
                uav: j,
            });
            break;
        }
        let n = members.len();
        let qos_ok = members.iter().all(|&i| {
            channel::uplink_rate(&vehicles[i], uav.pos, n, channel_params)
                .is_ok_and(|r| r >= channel_params.r_min)
        });
        if !qos_ok {
            violation = Some(Violation {
                kind: ViolationKind::Qos,
                uav: j,
            });
            break;
        }
    }

    let feasible = violation.is_none();
    let fitness = if feasible {
        per_uav_counts.iter().sum::<usize>() as i64
    } else {
        INFEASIBLE_FITNESS
    };
    EvalResult {
        assignment,
        per_uav_sets,
        per_uav_counts,
        fitness,
        feasible,
        violation,
    }
}

/// Everything a solver needs to score plans. All solvers go through
/// [`Problem::evaluate`], so they share one fitness definition.
#[derive(Debug, Clone)]
pub struct Problem {
    pub vehicles: Vec<Vehicle>,
    pub channel: ChannelParams,
    pub coverage: CoverageParams,
    pub space: SearchSpace,
}

impl Problem {
    pub fn new(
        vehicles: Vec<Vehicle>,
        channel: ChannelParams,
        coverage: CoverageParams,
        space: SearchSpace,
    ) -> Result<Self> {
        channel.validate()?;
        coverage.validate()?;
        if !(space.x.is_valid() && space.y.is_valid() && space.h.is_valid()) {
            return Err(Error::param("search_space", "every axis needs lo <= hi"));
        }
        Ok(Self {
            vehicles,
            channel,
            coverage,
            space,
        })
    }

    pub fn evaluate(&self, plan: &DeploymentPlan) -> EvalResult {
        evaluate_plan(plan, &self.vehicles, &self.channel, &self.coverage)
    }

    pub fn fitness(&self, plan: &DeploymentPlan) -> i64 {
        self.evaluate(plan).fitness
    }

    pub fn plan(&self, positions: impl IntoIterator<Item = Point3>) -> DeploymentPlan {
        DeploymentPlan::from_positions(positions, self.coverage.uav_capacity_mbps)
    }

    /// Share of vehicles served; an infeasible fitness counts as none. With
    /// no vehicles at all nothing is left uncovered, so this is 1.
    pub fn coverage_fraction(&self, fitness: i64) -> f64 {
        if self.vehicles.is_empty() {
            1.0
        } else {
            fitness.max(0) as f64 / self.vehicles.len() as f64
        }
    }

    pub fn radii(&self, plan: &DeploymentPlan) -> Vec<f64> {
        plan.uavs
            .iter()
            .map(|u| coverage_radius(u.pos.h, &self.coverage))
            .collect()
    }
}

/// Number of vehicles inside at least one footprint, ignoring assignment
/// and QoS.
pub fn vehicles_in_range(
    plan: &DeploymentPlan,
    vehicles: &[Vehicle],
    params: &CoverageParams,
) -> usize {
    vehicles
        .iter()
        .filter(|v| {
            plan.uavs.iter().any(|u| {
                v.pos.horizontal().dist(u.pos.horizontal()) <= coverage_radius(u.pos.h, params)
            })
        })
        .count()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstraintTag {
    /// A UAV lies outside the search space or has non-positive capacity.
    Bounds,
    /// A vehicle is off its road pavement.
    C1,
    /// A served vehicle's uplink rate is below the floor.
    C2,
    /// A served vehicle is outside its UAV's footprint.
    C3,
    /// A UAV's load exceeds its capacity.
    C4,
    /// A vehicle is served by more than one UAV.
    C5,
    /// The per-vehicle assignment and the per-UAV sets disagree.
    Inconsistent,
    /// The reported fitness does not match the sets or the verdict.
    Fitness,
    /// The result was reported infeasible.
    Infeasible,
}

impl fmt::Display for ConstraintTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ConstraintTag::Bounds => "bounds",
            ConstraintTag::C1 => "c1_on_road",
            ConstraintTag::C2 => "c2_qos",
            ConstraintTag::C3 => "c3_in_range",
            ConstraintTag::C4 => "c4_capacity",
            ConstraintTag::C5 => "c5_single_assignment",
            ConstraintTag::Inconsistent => "inconsistent_assignment",
            ConstraintTag::Fitness => "fitness_mismatch",
            ConstraintTag::Infeasible => "infeasible",
        };
        f.write_str(s)
    }
}

/// Re-checks an evaluation against the raw constraints without going through
/// [`evaluate_plan`]. Returns the sorted set of violated tags; empty means
/// the result is feasible and every constraint holds.
pub fn validate_constraints(
    plan: &DeploymentPlan,
    vehicles: &[Vehicle],
    eval: &EvalResult,
    scene: &RoadScene,
    channel_params: &ChannelParams,
    coverage_params: &CoverageParams,
    space: &SearchSpace,
) -> Vec<ConstraintTag> {
    let mut tags = Vec::new();
    let eps = 1e-6;

    for u in &plan.uavs {
        if !space.contains(u.pos) || !(u.capacity > 0.0) {
            tags.push(ConstraintTag::Bounds);
        }
    }

    for v in vehicles {
        let on_road = scene.roads.get(v.road).is_some_and(|road| {
            let (s, t) = road.to_local(v.pos.horizontal());
            s >= -eps
                && s <= road.length_m + eps
                && t >= -eps
                && t <= road.width_m + eps
                && (v.pos.h - road.elevation_at(s)).abs() <= eps
        });
        if !on_road {
            tags.push(ConstraintTag::C1);
        }
    }

    let mut seen = vec![0usize; vehicles.len()];
    for (j, members) in eval.per_uav_sets.iter().enumerate() {
        for &i in members {
            if i >= vehicles.len() || j >= plan.len() {
                tags.push(ConstraintTag::Inconsistent);
                continue;
            }
            seen[i] += 1;
            if eval.assignment.get(i).copied().flatten() != Some(j) {
                tags.push(ConstraintTag::Inconsistent);
            }
        }
    }
    if seen.iter().any(|&c| c > 1) {
        tags.push(ConstraintTag::C5);
    }
    for (i, a) in eval.assignment.iter().enumerate() {
        if a.is_some() && seen.get(i).copied().unwrap_or(0) == 0 {
            tags.push(ConstraintTag::Inconsistent);
        }
    }

    let half_angle = (coverage_params.view_angle_deg / 2.0).to_radians();
    for (j, members) in eval.per_uav_sets.iter().enumerate() {
        let Some(uav) = plan.uavs.get(j) else {
            continue;
        };
        let members: Vec<&Vehicle> = members.iter().filter_map(|&i| vehicles.get(i)).collect();
        let radius = uav.pos.h * coverage_params.h_alpha / half_angle.tan();
        let mut load = 0.0;
        for v in &members {
            let dx = v.pos.x - uav.pos.x;
            let dy = v.pos.y - uav.pos.y;
            if (dx * dx + dy * dy).sqrt() > radius {
                tags.push(ConstraintTag::C3);
            }
            load += v.rate_demand;
            let rate = channel::uplink_rate(v, uav.pos, members.len(), channel_params);
            if !matches!(rate, Ok(r) if r >= channel_params.r_min) {
                tags.push(ConstraintTag::C2);
            }
        }
        if load > uav.capacity {
            tags.push(ConstraintTag::C4);
        }
    }

    if eval.feasible {
        let total: usize = eval.per_uav_sets.iter().map(Vec::len).sum();
        if eval.fitness != total as i64 {
            tags.push(ConstraintTag::Fitness);
        }
    } else {
        tags.push(ConstraintTag::Infeasible);
        if eval.fitness != INFEASIBLE_FITNESS {
            tags.push(ConstraintTag::Fitness);
        }
    }

    tags.sort();
    tags.dedup();
    tags
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::seeded;
    use crate::scene::{build_scene, spawn_vehicles, SceneConfig};
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use rand::Rng;

    fn vehicle(id: usize, x: f64, y: f64, rate: f64) -> Vehicle {
        Vehicle {
            id,
            pos: Point3::new(x, y, 0.0),
            rate_demand: rate,
            road: 1,
            under_bridge: false,
        }
    }

    fn uav(x: f64, y: f64, h: f64) -> UavPlacement {
        UavPlacement {
            pos: Point3::new(x, y, h),
            capacity: 40.0,
        }
    }

    fn lenient() -> ChannelParams {
        ChannelParams {
            r_min: 0.0,
            ..ChannelParams::default()
        }
    }

    #[test]
    fn radius_matches_published_pairs() {
        let p = CoverageParams::default();
        assert_abs_diff_eq!(coverage_radius(1728.46, &p), 625.93, epsilon = 0.05);
        assert_abs_diff_eq!(coverage_radius(1425.82, &p), 516.33, epsilon = 0.05);
        assert_eq!(coverage_radius(0.0, &p), 0.0);
    }

    #[test]
    fn assignment_examples() {
        let p = CoverageParams::default();
        // radius at h=1000 is ~362 m
        let v = vec![vehicle(0, 100.0, 0.0, 1.0)];
        let one = DeploymentPlan::new(vec![uav(0.0, 0.0, 1000.0), uav(2000.0, 0.0, 1000.0)]);
        assert_eq!(assign_vehicles(&one, &v, &p), vec![Some(0)]);

        let two = DeploymentPlan::new(vec![uav(0.0, 0.0, 1000.0), uav(150.0, 0.0, 1000.0)]);
        assert_eq!(assign_vehicles(&two, &v, &p), vec![Some(1)]);

        let tie = DeploymentPlan::new(vec![
            uav(0.0, 0.0, 1000.0),
            uav(2000.0, 0.0, 1000.0),
            uav(200.0, 0.0, 1000.0),
        ]);
        assert_eq!(assign_vehicles(&tie, &v, &p), vec![Some(0)]);

        let far = vec![vehicle(0, 1000.0, 1000.0, 1.0)];
        assert_eq!(assign_vehicles(&one, &far, &p), vec![None]);
    }

    #[test]
    fn empty_vehicle_set_scores_zero() {
        let plan = DeploymentPlan::new(vec![uav(0.0, 0.0, 1000.0)]);
        let r = evaluate_plan(
            &plan,
            &[],
            &ChannelParams::default(),
            &CoverageParams::default(),
        );
        assert_eq!(r.fitness, 0);
        assert!(r.feasible);
    }

    #[test]
    fn single_served_vehicle() {
        let plan = DeploymentPlan::new(vec![uav(0.0, 0.0, 1000.0)]);
        let v = vec![vehicle(0, 10.0, 0.0, 1.5)];
        let r = evaluate_plan(&plan, &v, &lenient(), &CoverageParams::default());
        assert_eq!(r.fitness, 1);
        assert!(r.feasible);
        assert_eq!(r.per_uav_sets, vec![vec![0]]);
    }

    #[test]
    fn capacity_overflow_is_penalized() {
        let plan = DeploymentPlan::new(vec![UavPlacement {
            pos: Point3::new(0.0, 0.0, 1000.0),
            capacity: 5.0,
        }]);
        let v = vec![vehicle(0, 10.0, 0.0, 3.0), vehicle(1, -10.0, 0.0, 3.0)];
        let r = evaluate_plan(&plan, &v, &lenient(), &CoverageParams::default());
        assert_eq!(r.fitness, INFEASIBLE_FITNESS);
        assert!(!r.feasible);
        assert_eq!(
            r.violation,
            Some(Violation {
                kind: ViolationKind::Capacity,
                uav: 0
            })
        );
    }

    #[test]
    fn qos_floor_is_penalized() {
        let plan = DeploymentPlan::new(vec![uav(0.0, 0.0, 1000.0)]);
        let v = vec![vehicle(0, 10.0, 0.0, 1.0)];
        let strict = ChannelParams {
            r_min: 1e6,
            ..ChannelParams::default()
        };
        let r = evaluate_plan(&plan, &v, &strict, &CoverageParams::default());
        assert_eq!(r.fitness, INFEASIBLE_FITNESS);
        assert_eq!(r.violation.map(|v| v.kind), Some(ViolationKind::Qos));
    }

    #[test]
    fn first_failing_uav_is_reported() {
        let plan = DeploymentPlan::new(vec![
            uav(0.0, 0.0, 1000.0),
            UavPlacement {
                pos: Point3::new(2000.0, 0.0, 1000.0),
                capacity: 0.5,
            },
            UavPlacement {
                pos: Point3::new(0.0, 2000.0, 1000.0),
                capacity: 0.5,
            },
        ]);
        let v = vec![
            vehicle(0, 0.0, 0.0, 1.0),
            vehicle(1, 2000.0, 0.0, 1.0),
            vehicle(2, 0.0, 2000.0, 1.0),
        ];
        let r = evaluate_plan(&plan, &v, &lenient(), &CoverageParams::default());
        assert_eq!(r.violation.unwrap().uav, 1);
    }

    fn fixture() -> (RoadScene, Vec<Vehicle>, SearchSpace) {
        let scene = build_scene(&SceneConfig::default()).unwrap();
        let vehicles = spawn_vehicles(&scene, 80, &mut seeded(1)).unwrap();
        let space = scene.search_space(CoverageParams::default().altitude);
        (scene, vehicles, space)
    }

    #[test]
    fn validation_flags_low_uav() {
        let (scene, vehicles, space) = fixture();
        let plan = DeploymentPlan::new(vec![uav(1500.0, 1500.0, 500.0)]);
        let c = ChannelParams::default();
        let p = CoverageParams::default();
        let r = evaluate_plan(&plan, &vehicles, &c, &p);
        let tags = validate_constraints(&plan, &vehicles, &r, &scene, &c, &p, &space);
        assert!(tags.contains(&ConstraintTag::Bounds));
    }

    #[test]
    fn validation_flags_double_assignment() {
        let (scene, vehicles, space) = fixture();
        let plan =
            DeploymentPlan::new(vec![uav(720.0, 1500.0, 2500.0), uav(730.0, 1500.0, 2500.0)]);
        let c = lenient();
        let p = CoverageParams::default();
        let mut r = evaluate_plan(&plan, &vehicles, &c, &p);
        let i = r.per_uav_sets[0][0];
        r.per_uav_sets[1].push(i);
        let tags = validate_constraints(&plan, &vehicles, &r, &scene, &c, &p, &space);
        assert!(tags.contains(&ConstraintTag::C5));
    }

    #[test]
    fn validation_flags_off_road_vehicle() {
        let (scene, mut vehicles, space) = fixture();
        vehicles[3].pos.x = 5.0;
        vehicles[3].pos.y = 5.0;
        let plan = DeploymentPlan::new(vec![uav(1500.0, 1500.0, 1500.0)]);
        let c = lenient();
        let p = CoverageParams::default();
        let r = evaluate_plan(&plan, &vehicles, &c, &p);
        let tags = validate_constraints(&plan, &vehicles, &r, &scene, &c, &p, &space);
        assert!(tags.contains(&ConstraintTag::C1));
    }

    #[test]
    fn evaluation_is_repeatable() {
        let (_, vehicles, space) = fixture();
        let mut rng = seeded(9);
        let plan = DeploymentPlan::from_positions((0..6).map(|_| space.sample(&mut rng)), 40.0);
        let c = ChannelParams::default();
        let p = CoverageParams::default();
        assert_eq!(
            evaluate_plan(&plan, &vehicles, &c, &p),
            evaluate_plan(&plan, &vehicles, &c, &p)
        );
    }

    #[test]
    fn plan_file_format() {
        let plan = DeploymentPlan::new(vec![uav(1.0, 2.0, 1000.0)]);
        let s = serde_json::to_string(&plan).unwrap();
        assert_eq!(s, "[[1.0,2.0,1000.0,40.0]]");
        let back: DeploymentPlan = serde_json::from_str(&s).unwrap();
        assert_eq!(back, plan);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn radius_ratio_is_constant(h in 1.0f64..5000.0) {
            let p = CoverageParams::default();
            prop_assert!((coverage_radius(h, &p) / h - 0.36213).abs() < 1e-4);
        }

        #[test]
        fn random_plans_are_consistent(seed in any::<u64>(), n in 1usize..8) {
            let (scene, vehicles, space) = fixture();
            let mut rng = seeded(seed);
            let plan = DeploymentPlan::from_positions((0..n).map(|_| space.sample(&mut rng)), 40.0);
            let c = ChannelParams::default();
            let p = CoverageParams::default();
            let r = evaluate_plan(&plan, &vehicles, &c, &p);
            let in_range = vehicles_in_range(&plan, &vehicles, &p) as i64;
            prop_assert!(r.fitness <= vehicles.len() as i64);
            prop_assert!(r.fitness <= in_range);
            if r.feasible {
                prop_assert_eq!(r.fitness, r.covered() as i64);
                let tags = validate_constraints(&plan, &vehicles, &r, &scene, &c, &p, &space);
                prop_assert!(tags.is_empty(), "{:?}", tags);
            } else {
                prop_assert_eq!(r.fitness, INFEASIBLE_FITNESS);
            }
        }

        #[test]
        fn adding_a_uav_never_shrinks_reach(seed in any::<u64>(), n in 1usize..6) {
            let (_, vehicles, space) = fixture();
            let mut rng = seeded(seed);
            let mut plan = DeploymentPlan::from_positions((0..n).map(|_| space.sample(&mut rng)), 40.0);
            let p = CoverageParams::default();
            let before = vehicles_in_range(&plan, &vehicles, &p);
            plan.uavs.push(UavPlacement { pos: space.sample(&mut rng), capacity: rng.gen_range(1.0..50.0) });
            prop_assert!(vehicles_in_range(&plan, &vehicles, &p) >= before);
        }
    }
}
