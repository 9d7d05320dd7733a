//! Experiment configuration and its JSON form.
//!
//! On disk, every value that is not taken from the source model is written
//! as `{"value": ..., "source": "default"}` (or `"derived"` for constants
//! back-solved from published results). Loading accepts either that form or
//! a bare value.

use std::fmt;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::baselines::{PsoParams, ScaParams};
use crate::channel::ChannelParams;
use crate::coverage::{CoverageParams, Problem};
use crate::kigwo::GwoParams;
use crate::kmeans::KmeansParams;
use crate::qosioa::{GaParams, QosioaOptions, QosioaParams};
use crate::rng::seeded_stream;
use crate::scene::{build_scene, spawn_vehicles, RoadScene, SceneConfig, Vehicle};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolverKind {
    Qosioa,
    Ga,
    Pso,
    Sca,
}

impl SolverKind {
    pub const ALL: [SolverKind; 4] = [
        SolverKind::Qosioa,
        SolverKind::Ga,
        SolverKind::Pso,
        SolverKind::Sca,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SolverKind::Qosioa => "qosioa",
            SolverKind::Ga => "ga",
            SolverKind::Pso => "pso",
            SolverKind::Sca => "sca",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::param("solver", format!("unknown solver `{s}`")))
    }
}

impl fmt::Display for SolverKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RatePair {
    pub crossover: f64,
    pub mutation: f64,
}

/// Values swept over; the experiment runs their cartesian product.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sweep {
    pub n_uavs: Vec<usize>,
    /// Mbps.
    pub r_min: Vec<f64>,
    pub rates: Vec<RatePair>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub name: String,
    pub scene: SceneConfig,
    pub vehicles: usize,
    /// Fixed seed for vehicle placement. When absent, each replicate spawns
    /// its own vehicles from its run seed.
    pub vehicle_seed: Option<u64>,
    pub sweep: Sweep,
    pub channel: ChannelParams,
    pub coverage: CoverageParams,
    pub ga: GaParams,
    pub kmeans: KmeansParams,
    pub gwo: GwoParams,
    pub qosioa: QosioaOptions,
    pub pso: PsoParams,
    pub sca: ScaParams,
    /// Give PSO and SCA the GA's population size and iteration count.
    pub equalize_budget: bool,
    pub solvers: Vec<SolverKind>,
    pub replicates: usize,
    pub base_seed: u64,
    pub output_dir: PathBuf,
}

/// Output stream used for vehicle placement; solvers use stream 0.
pub const VEHICLE_STREAM: u64 = 1;

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        let scene = build_scene(&self.scene)?;
        if self.vehicles == 0 {
            return Err(Error::param("vehicles", "must be at least 1"));
        }
        if self.replicates == 0 {
            return Err(Error::param("replicates", "must be at least 1"));
        }
        if self.solvers.is_empty() {
            return Err(Error::param("solvers", "list is empty"));
        }
        if self.sweep.n_uavs.is_empty() {
            return Err(Error::param("sweep.n_uavs", "list is empty"));
        }
        if self.sweep.n_uavs.contains(&0) {
            return Err(Error::param(
                "sweep.n_uavs",
                "UAV counts must be at least 1",
            ));
        }
        if self.sweep.r_min.is_empty() {
            return Err(Error::param("sweep.r_min", "list is empty"));
        }
        if let Some(v) = self
            .sweep
            .r_min
            .iter()
            .find(|v| !(**v >= 0.0 && v.is_finite()))
        {
            return Err(Error::param(
                "sweep.r_min",
                format!("{v} is not a valid rate"),
            ));
        }
        if self.sweep.rates.is_empty() {
            return Err(Error::param("sweep.rates", "list is empty"));
        }
        for r in &self.sweep.rates {
            if !(0.0..=1.0).contains(&r.crossover) || !(0.0..=1.0).contains(&r.mutation) {
                return Err(Error::param("sweep.rates", "rates must lie in [0, 1]"));
            }
        }
        self.channel.validate()?;
        self.coverage.validate()?;
        if self.coverage.altitude.lo <= scene.max_road_elevation() {
            return Err(Error::param(
                "coverage.altitude",
                format!(
                    "lowest altitude {} must clear the highest road at {} m",
                    self.coverage.altitude.lo,
                    scene.max_road_elevation()
                ),
            ));
        }
        if self.coverage.altitude.hi > self.scene.extent_m {
            return Err(Error::param(
                "coverage.altitude",
                "highest altitude leaves the scene box",
            ));
        }
        self.ga.validate()?;
        if self.kmeans.max_iter == 0 {
            return Err(Error::param("kmeans.max_iter", "must be at least 1"));
        }
        if !(self.kmeans.tolerance > 0.0) {
            return Err(Error::param("kmeans.tolerance", "must be positive"));
        }
        self.gwo.validate()?;
        if !(0.0..=1.0).contains(&self.qosioa.substitution_rate) {
            return Err(Error::param(
                "qosioa.substitution_rate",
                "must lie in [0, 1]",
            ));
        }
        if self.solvers.contains(&SolverKind::Pso) {
            self.pso.validate()?;
        }
        if self.solvers.contains(&SolverKind::Sca) {
            self.sca.validate()?;
        }
        Ok(())
    }

    pub fn scene(&self) -> Result<RoadScene> {
        build_scene(&self.scene)
    }

    /// Vehicles for a run with the given seed.
    pub fn vehicles_for(&self, scene: &RoadScene, run_seed: u64) -> Result<Vec<Vehicle>> {
        let seed = self.vehicle_seed.unwrap_or(run_seed);
        spawn_vehicles(
            scene,
            self.vehicles,
            &mut seeded_stream(seed, VEHICLE_STREAM),
        )
    }

    pub fn problem(
        &self,
        scene: &RoadScene,
        vehicles: Vec<Vehicle>,
        r_min: f64,
    ) -> Result<Problem> {
        let channel = ChannelParams {
            r_min,
            ..self.channel.clone()
        };
        Problem::new(
            vehicles,
            channel,
            self.coverage.clone(),
            scene.search_space(self.coverage.altitude),
        )
    }

    pub fn qosioa_params(&self, rates: RatePair) -> QosioaParams {
        QosioaParams {
            ga: self.ga_params(rates),
            kmeans: self.kmeans.clone(),
            gwo: self.gwo.clone(),
            options: self.qosioa.clone(),
        }
    }

    pub fn ga_params(&self, rates: RatePair) -> GaParams {
        GaParams {
            crossover_rate: rates.crossover,
            mutation_rate: rates.mutation,
            ..self.ga.clone()
        }
    }

    pub fn pso_params(&self) -> PsoParams {
        if self.equalize_budget {
            PsoParams {
                n_particles: self.ga.pop_size,
                max_iter: self.ga.generations,
                ..self.pso.clone()
            }
        } else {
            self.pso.clone()
        }
    }

    pub fn sca_params(&self) -> ScaParams {
        if self.equalize_budget {
            ScaParams {
                n_agents: self.ga.pop_size,
                max_iter: self.ga.generations,
                ..self.sca.clone()
            }
        } else {
            self.sca.clone()
        }
    }
}

/// Paths (dot-separated, array indices omitted) whose defaults come
/// straight from the source model.
const PUBLISHED_VALUES: &[&str] = &[
    "scene.extent_m",
    "scene.roads.elevation_start_m",
    "scene.roads.elevation_end_m",
    "scene.roads.layer",
    "vehicles",
    "sweep.n_uavs",
    "sweep.r_min",
    "sweep.rates.crossover",
    "sweep.rates.mutation",
    "channel.carrier_hz",
    "channel.tx_power_w",
    "channel.total_bandwidth_hz",
    "channel.util_a",
    "channel.r_min",
    "coverage.view_angle_deg",
    "ga.generations",
    "ga.pop_size",
    "ga.crossover_rate",
    "ga.mutation_rate",
    "replicates",
];

/// Back-solved from published (altitude, radius) pairs.
const DERIVED_VALUES: &[&str] = &["coverage.h_alpha"];

/// Top-level keys that are bookkeeping rather than model parameters.
const UNANNOTATED: &[&str] = &[
    "name",
    "solvers",
    "base_seed",
    "output_dir",
    "equalize_budget",
    "vehicle_seed",
];

fn annotate_value(path: &str, v: Value) -> Value {
    match v {
        Value::Object(map) => Value::Object(
            map.into_iter()
                .map(|(k, child)| {
                    let p = if path.is_empty() {
                        k.clone()
                    } else {
                        format!("{path}.{k}")
                    };
                    (k, annotate_value(&p, child))
                })
                .collect(),
        ),
        Value::Array(items) if items.iter().all(|i| i.is_object()) => {
            Value::Array(items.into_iter().map(|i| annotate_value(path, i)).collect())
        }
        leaf => {
            let top = path.split('.').next().unwrap_or("");
            if UNANNOTATED.contains(&top) || PUBLISHED_VALUES.contains(&path) {
                leaf
            } else {
                let source = if DERIVED_VALUES.contains(&path) {
                    "derived"
                } else {
                    "default"
                };
                let mut m = Map::new();
                m.insert("value".into(), leaf);
                m.insert("source".into(), Value::String(source.into()));
                Value::Object(m)
            }
        }
    }
}

fn strip_value(v: Value) -> Value {
    match v {
        Value::Object(map) => {
            if map.len() == 2 && map.contains_key("value") && map.contains_key("source") {
                let mut map = map;
                strip_value(map.remove("value").unwrap_or(Value::Null))
            } else {
                Value::Object(map.into_iter().map(|(k, c)| (k, strip_value(c))).collect())
            }
        }
        Value::Array(items) => Value::Array(items.into_iter().map(strip_value).collect()),
        leaf => leaf,
    }
}

pub fn to_annotated_json(config: &ExperimentConfig) -> Value {
    let raw = serde_json::to_value(config).expect("config serializes");
    annotate_value("", raw)
}

pub fn from_json(v: Value) -> std::result::Result<ExperimentConfig, serde_json::Error> {
    serde_json::from_value(strip_value(v))
}

pub fn load_config(path: &Path) -> Result<ExperimentConfig> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let json_err = |source| Error::Json {
        path: path.to_path_buf(),
        source,
    };
    let value: Value = serde_json::from_str(&text).map_err(json_err)?;
    let config = from_json(value).map_err(json_err)?;
    config.validate()?;
    Ok(config)
}

pub fn save_config(config: &ExperimentConfig, path: &Path) -> Result<()> {
    let text = serde_json::to_string_pretty(&to_annotated_json(config)).expect("config serializes");
    std::fs::write(path, text + "\n").map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}
