use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use uav_deploy::coverage::{evaluate_plan, validate_constraints, DeploymentPlan};
use uav_deploy::harness::config::{to_annotated_json, ExperimentConfig};
use uav_deploy::harness::experiment::{run_solver, write_outputs};
use uav_deploy::harness::{
    grid_search, load_config, preset_by_name, run_experiment, GridSpec, SolverKind,
};
use uav_deploy::{Error, Result};

#[derive(Parser)]
#[command(
    name = "uav-deploy",
    version,
    about = "QoS-aware UAV coverage deployment over a viaduct scene"
)]
struct Cli {
    /// Base seed; overrides the config's base_seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output directory (experiment) or file (solve).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Solver to run; for `experiment` this replaces the config's list.
    #[arg(long, global = true, value_parser = parse_solver)]
    solver: Option<SolverKind>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one solver once and print the best plan.
    Solve {
        /// Preset name or config file.
        #[arg(default_value = "high_density")]
        config: String,
        #[arg(long)]
        n_uavs: Option<usize>,
    },
    /// Run a full experiment and write CSV outputs.
    Experiment { config: String },
    /// Check a plan file against the constraints of a scenario.
    Validate {
        plan: PathBuf,
        #[arg(long, default_value = "high_density")]
        config: String,
    },
    /// Exhaustive single-UAV grid search.
    Oracle {
        config: String,
        #[arg(long, default_value_t = 30)]
        nx: usize,
        #[arg(long, default_value_t = 30)]
        ny: usize,
        #[arg(long, default_value_t = 5)]
        nh: usize,
    },
    /// Print a preset as an annotated config file.
    Preset { name: String },
}

fn parse_solver(s: &str) -> std::result::Result<SolverKind, String> {
    SolverKind::parse(s).map_err(|e| e.to_string())
}

fn resolve(spec: &str) -> Result<ExperimentConfig> {
    let path = Path::new(spec);
    if path.exists() {
        load_config(path)
    } else {
        preset_by_name(spec)
    }
}

fn io_err(path: &Path) -> impl Fn(std::io::Error) -> Error + '_ {
    move |source| Error::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Solve { config, n_uavs } => {
            let cfg = resolve(&config)?;
            let seed = cli.seed.unwrap_or(cfg.base_seed);
            let solver = cli.solver.unwrap_or(cfg.solvers[0]);
            let n = n_uavs.unwrap_or(cfg.sweep.n_uavs[0]);
            let scene = cfg.scene()?;
            let vehicles = cfg.vehicles_for(&scene, seed)?;
            let problem = cfg.problem(&scene, vehicles, cfg.sweep.r_min[0])?;
            let report = run_solver(&cfg, solver, &problem, n, cfg.sweep.rates[0], seed)?;
            println!(
                "solver={solver} seed={seed} fitness={} coverage={:.4}",
                report.best_fitness, report.coverage_fraction
            );
            let plan = serde_json::to_string(&report.best_plan).expect("plan serializes");
            match cli.out {
                Some(path) => std::fs::write(&path, plan + "\n").map_err(io_err(&path))?,
                None => println!("{plan}"),
            }
            Ok(true)
        }
        Command::Experiment { config } => {
            let mut cfg = resolve(&config)?;
            if let Some(seed) = cli.seed {
                cfg.base_seed = seed;
            }
            if let Some(solver) = cli.solver {
                cfg.solvers = vec![solver];
            }
            if let Some(out) = cli.out {
                cfg.output_dir = out;
            }
            let output = run_experiment(&cfg)?;
            write_outputs(&cfg, &output, &cfg.output_dir)?;
            for row in &output.summary {
                println!(
                    "{} n_uavs={} r_min={} p_c={} p_m={} mean={:.4} min={:.4} max={:.4} feasible={}/{}",
                    row.solver,
                    row.n_uavs,
                    row.r_min,
                    row.p_c,
                    row.p_m,
                    row.mean_coverage,
                    row.min_coverage,
                    row.max_coverage,
                    row.feasible_runs,
                    row.runs
                );
            }
            println!("wrote {}", cfg.output_dir.display());
            Ok(true)
        }
        Command::Validate { plan, config } => {
            let cfg = resolve(&config)?;
            let text = std::fs::read_to_string(&plan).map_err(io_err(&plan))?;
            let plan_value: DeploymentPlan =
                serde_json::from_str(&text).map_err(|source| Error::Json {
                    path: plan.clone(),
                    source,
                })?;
            let seed = cli.seed.unwrap_or(cfg.base_seed);
            let scene = cfg.scene()?;
            let vehicles = cfg.vehicles_for(&scene, seed)?;
            let problem = cfg.problem(&scene, vehicles, cfg.sweep.r_min[0])?;
            let eval = evaluate_plan(
                &plan_value,
                &problem.vehicles,
                &problem.channel,
                &problem.coverage,
            );
            let tags = validate_constraints(
                &plan_value,
                &problem.vehicles,
                &eval,
                &scene,
                &problem.channel,
                &problem.coverage,
                &problem.space,
            );
            println!("fitness={} covered={}", eval.fitness, eval.covered());
            if tags.is_empty() {
                println!("ok");
            } else {
                let names: Vec<String> = tags.iter().map(ToString::to_string).collect();
                println!("violations: {}", names.join(", "));
            }
            Ok(tags.is_empty())
        }
        Command::Oracle { config, nx, ny, nh } => {
            let cfg = resolve(&config)?;
            let seed = cli.seed.unwrap_or(cfg.base_seed);
            let scene = cfg.scene()?;
            let vehicles = cfg.vehicles_for(&scene, seed)?;
            let problem = cfg.problem(&scene, vehicles, cfg.sweep.r_min[0])?;
            let res = grid_search(&problem, cfg.sweep.n_uavs[0], GridSpec { nx, ny, nh })?;
            println!("optimum={} evaluated={}", res.best_fitness, res.evaluated);
            println!(
                "{}",
                serde_json::to_string(&res.best_plan).expect("plan serializes")
            );
            Ok(true)
        }
        Command::Preset { name } => {
            let cfg = preset_by_name(&name)?;
            let text =
                serde_json::to_string_pretty(&to_annotated_json(&cfg)).expect("config serializes");
            match cli.out {
                Some(path) => std::fs::write(&path, text + "\n").map_err(io_err(&path))?,
                None => println!("{text}"),
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
