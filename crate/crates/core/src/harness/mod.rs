//! Experiment configuration, presets, batch runs and the grid oracle.

pub mod config;
pub mod experiment;
pub mod oracle;
pub mod presets;

pub use config::{load_config, save_config, ExperimentConfig, RatePair, SolverKind, Sweep};
pub use experiment::{emit_csv, read_csv, run_experiment, write_outputs, RunRecord, SummaryRow};
pub use oracle::{grid_search, GridSpec, OracleResult};
pub use presets::{preset, preset_by_name, PresetName};
