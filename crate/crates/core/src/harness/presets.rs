use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::baselines::{PsoParams, ScaParams};
use crate::channel::ChannelParams;
use crate::coverage::CoverageParams;
use crate::harness::config::{ExperimentConfig, RatePair, SolverKind, Sweep};
use crate::kigwo::GwoParams;
use crate::kmeans::KmeansParams;
use crate::qosioa::{GaParams, QosioaOptions};
use crate::scene::SceneConfig;
use crate::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PresetName {
    HighDensity,
    LowDensity,
    SweepUavs,
    SweepRmin,
    SweepPcPm,
}

impl PresetName {
    pub const ALL: [PresetName; 5] = [
        PresetName::HighDensity,
        PresetName::LowDensity,
        PresetName::SweepUavs,
        PresetName::SweepRmin,
        PresetName::SweepPcPm,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            PresetName::HighDensity => "high_density",
            PresetName::LowDensity => "low_density",
            PresetName::SweepUavs => "sweep_uavs",
            PresetName::SweepRmin => "sweep_rmin",
            PresetName::SweepPcPm => "sweep_pc_pm",
        }
    }
}

impl fmt::Display for PresetName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PresetName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|p| p.as_str() == s)
            .ok_or_else(|| Error::UnknownPreset(s.to_string()))
    }
}

/// Seed of the fixed vehicle layout shared by every preset.
pub const FIXTURE_VEHICLE_SEED: u64 = 2024;

pub const DEFAULT_RATES: RatePair = RatePair {
    crossover: 0.8,
    mutation: 0.1,
};

fn base(name: PresetName, vehicles: usize, n_uavs: Vec<usize>) -> ExperimentConfig {
    let channel = ChannelParams::default();
    ExperimentConfig {
        name: name.to_string(),
        scene: SceneConfig::default(),
        vehicles,
        vehicle_seed: Some(FIXTURE_VEHICLE_SEED),
        sweep: Sweep {
            n_uavs,
            r_min: vec![channel.r_min],
            rates: vec![DEFAULT_RATES],
        },
        channel,
        coverage: CoverageParams::default(),
        ga: GaParams::default(),
        kmeans: KmeansParams::default(),
        gwo: GwoParams::default(),
        qosioa: QosioaOptions::default(),
        pso: PsoParams::default(),
        sca: ScaParams::default(),
        equalize_budget: true,
        solvers: vec![SolverKind::Qosioa],
        replicates: 30,
        base_seed: 1,
        output_dir: PathBuf::from("out").join(name.as_str()),
    }
}

pub fn preset(name: PresetName) -> ExperimentConfig {
    match name {
        PresetName::HighDensity => base(name, 80, vec![6]),
        PresetName::LowDensity => base(name, 30, vec![4]),
        PresetName::SweepUavs => ExperimentConfig {
            solvers: SolverKind::ALL.to_vec(),
            ..base(name, 80, (3..=8).collect())
        },
        PresetName::SweepRmin => {
            let mut cfg = base(name, 80, vec![6]);
            cfg.solvers = SolverKind::ALL.to_vec();
            cfg.sweep.r_min = (0..=5).map(|k| 2.0 + 0.4 * k as f64).collect();
            cfg
        }
        PresetName::SweepPcPm => {
            let mut cfg = base(name, 80, (3..=8).collect());
            cfg.sweep.rates = [0.6, 0.8, 0.9]
                .into_iter()
                .flat_map(|crossover| {
                    [0.05, 0.1, 0.2].into_iter().map(move |mutation| RatePair {
                        crossover,
                        mutation,
                    })
                })
                .collect();
            cfg
        }
    }
}

pub fn preset_by_name(name: &str) -> Result<ExperimentConfig, Error> {
    name.parse().map(preset)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn density_scenarios() {
        let hd = preset(PresetName::HighDensity);
        assert_eq!((hd.vehicles, hd.sweep.n_uavs.clone()), (80, vec![6]));
        let ld = preset(PresetName::LowDensity);
        assert_eq!((ld.vehicles, ld.sweep.n_uavs.clone()), (30, vec![4]));
        for cfg in [&hd, &ld] {
            assert_eq!(cfg.ga.generations, 100);
            assert_eq!(cfg.ga.pop_size, 10);
            assert_eq!(cfg.sweep.rates, vec![DEFAULT_RATES]);
            assert_eq!(cfg.channel.r_min, 3.2);
            assert_eq!(cfg.channel.tx_power_w, 0.05);
            assert_eq!(cfg.channel.total_bandwidth_hz, 3.6e6);
            assert_eq!(cfg.channel.carrier_hz, 2.0e9);
        }
    }

    #[test]
    fn rate_grid_includes_default_pair() {
        let cfg = preset(PresetName::SweepPcPm);
        assert!(cfg.sweep.rates.contains(&DEFAULT_RATES));
        assert_eq!(cfg.sweep.rates.len(), 9);
    }

    #[test]
    fn rmin_sweep_points() {
        let cfg = preset(PresetName::SweepRmin);
        assert_eq!(cfg.sweep.r_min.len(), 6);
        assert!((cfg.sweep.r_min[5] - 4.0).abs() < 1e-12);
    }

    #[test]
    fn all_presets_validate() {
        for p in PresetName::ALL {
            preset(p).validate().unwrap();
        }
    }

    #[test]
    fn unknown_name() {
        assert!(matches!(
            preset_by_name("dense"),
            Err(Error::UnknownPreset(_))
        ));
        assert_eq!(preset_by_name("low_density").unwrap().vehicles, 30);
    }
}
