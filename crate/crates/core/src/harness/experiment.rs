use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::baselines;
use crate::coverage::{DeploymentPlan, Problem};
use crate::harness::config::{ExperimentConfig, RatePair, SolverKind};
use crate::qosioa::{self, SolveReport};
use crate::{Error, Result};

/// One row of `runs.csv`. Field order is the column order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub solver: String,
    pub seed: u64,
    pub n_uavs: usize,
    pub r_min: f64,
    pub p_c: f64,
    pub p_m: f64,
    pub coverage_fraction: f64,
    pub best_fitness: i64,
    /// Seconds, rounded to the millisecond.
    pub wall_time: f64,
    pub feasible: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub solver: String,
    pub n_uavs: usize,
    pub r_min: f64,
    pub p_c: f64,
    pub p_m: f64,
    pub runs: usize,
    pub feasible_runs: usize,
    pub mean_coverage: f64,
    pub min_coverage: f64,
    pub max_coverage: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlanRecord {
    pub solver: String,
    pub seed: u64,
    pub n_uavs: usize,
    pub r_min: f64,
    pub p_c: f64,
    pub p_m: f64,
    pub plan: DeploymentPlan,
}

#[derive(Debug, Clone)]
pub struct ExperimentOutput {
    pub records: Vec<RunRecord>,
    pub plans: Vec<PlanRecord>,
    pub summary: Vec<SummaryRow>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Job {
    n_uavs: usize,
    r_min: f64,
    rates: RatePair,
    solver: SolverKind,
    replicate: usize,
}

pub fn run_solver(
    config: &ExperimentConfig,
    solver: SolverKind,
    problem: &Problem,
    n_uavs: usize,
    rates: RatePair,
    seed: u64,
) -> Result<SolveReport> {
    match solver {
        SolverKind::Qosioa => qosioa::solve(problem, n_uavs, &config.qosioa_params(rates), seed),
        SolverKind::Ga => {
            baselines::ga_plain_solve(problem, n_uavs, &config.ga_params(rates), seed)
        }
        SolverKind::Pso => baselines::pso_solve(problem, n_uavs, &config.pso_params(), seed),
        SolverKind::Sca => baselines::sca_solve(problem, n_uavs, &config.sca_params(), seed),
    }
}

/// Runs every sweep point × solver × replicate. Replicate `r` uses seed
/// `base_seed + r`. Runs execute in parallel; output order is by sweep key
/// (UAV count, R_min, p_c, p_m), then solver in config order, then seed.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentOutput> {
    config.validate()?;
    let scene = config.scene()?;

    let mut jobs = Vec::new();
    for &n_uavs in &config.sweep.n_uavs {
        for &r_min in &config.sweep.r_min {
            for &rates in &config.sweep.rates {
                for &solver in &config.solvers {
                    for replicate in 0..config.replicates {
                        jobs.push(Job {
                            n_uavs,
                            r_min,
                            rates,
                            solver,
                            replicate,
                        });
                    }
                }
            }
        }
    }
    // Sweep lists may be given out of order; the output is sorted anyway.
    jobs.sort_by(|a, b| {
        a.n_uavs
            .cmp(&b.n_uavs)
            .then(a.r_min.total_cmp(&b.r_min))
            .then(a.rates.crossover.total_cmp(&b.rates.crossover))
            .then(a.rates.mutation.total_cmp(&b.rates.mutation))
    });

    let outcomes: Vec<(RunRecord, PlanRecord)> = jobs
        .par_iter()
        .map(|job| {
            let seed = config.base_seed.wrapping_add(job.replicate as u64);
            let vehicles = config.vehicles_for(&scene, seed)?;
            let problem = config.problem(&scene, vehicles, job.r_min)?;
            let started = Instant::now();
            let report = run_solver(config, job.solver, &problem, job.n_uavs, job.rates, seed)?;
            let wall_time = (started.elapsed().as_secs_f64() * 1000.0).round() / 1000.0;
            let record = RunRecord {
                solver: job.solver.to_string(),
                seed,
                n_uavs: job.n_uavs,
                r_min: job.r_min,
                p_c: job.rates.crossover,
                p_m: job.rates.mutation,
                coverage_fraction: report.coverage_fraction,
                best_fitness: report.best_fitness,
                wall_time,
                feasible: report.feasible(),
            };
            let plan = PlanRecord {
                solver: record.solver.clone(),
                seed,
                n_uavs: job.n_uavs,
                r_min: job.r_min,
                p_c: job.rates.crossover,
                p_m: job.rates.mutation,
                plan: report.best_plan,
            };
            Ok((record, plan))
        })
        .collect::<Result<_>>()?;

    let (records, plans): (Vec<_>, Vec<_>) = outcomes.into_iter().unzip();
    let summary = summarize(&records);
    Ok(ExperimentOutput {
        records,
        plans,
        summary,
    })
}

/// Mean, min and max coverage per sweep point and solver, in first-seen
/// order of the records.
pub fn summarize(records: &[RunRecord]) -> Vec<SummaryRow> {
    let mut rows: Vec<(SummaryRow, f64)> = Vec::new();
    for r in records {
        let pos = rows.iter().position(|(s, _)| {
            s.solver == r.solver
                && s.n_uavs == r.n_uavs
                && s.r_min == r.r_min
                && s.p_c == r.p_c
                && s.p_m == r.p_m
        });
        let idx = match pos {
            Some(i) => i,
            None => {
                rows.push((
                    SummaryRow {
                        solver: r.solver.clone(),
                        n_uavs: r.n_uavs,
                        r_min: r.r_min,
                        p_c: r.p_c,
                        p_m: r.p_m,
                        runs: 0,
                        feasible_runs: 0,
                        mean_coverage: 0.0,
                        min_coverage: f64::INFINITY,
                        max_coverage: f64::NEG_INFINITY,
                    },
                    0.0,
                ));
                rows.len() - 1
            }
        };
        let (row, sum) = &mut rows[idx];
        row.runs += 1;
        row.feasible_runs += usize::from(r.feasible);
        *sum += r.coverage_fraction;
        row.min_coverage = row.min_coverage.min(r.coverage_fraction);
        row.max_coverage = row.max_coverage.max(r.coverage_fraction);
    }
    rows.into_iter()
        .map(|(mut row, sum)| {
            row.mean_coverage = sum / row.runs as f64;
            row
        })
        .collect()
}

fn csv_err(path: &Path) -> impl Fn(csv::Error) -> Error + '_ {
    move |source| Error::Csv {
        path: path.to_path_buf(),
        source,
    }
}

fn write_rows<T: Serialize>(rows: &[T], header: &[&str], path: &Path) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_path(path)
        .map_err(csv_err(path))?;
    w.write_record(header).map_err(csv_err(path))?;
    for row in rows {
        w.serialize(row).map_err(csv_err(path))?;
    }
    w.flush().map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub const RUN_COLUMNS: [&str; 10] = [
    "solver",
    "seed",
    "n_uavs",
    "r_min",
    "p_c",
    "p_m",
    "coverage_fraction",
    "best_fitness",
    "wall_time",
    "feasible",
];

const SUMMARY_COLUMNS: [&str; 10] = [
    "solver",
    "n_uavs",
    "r_min",
    "p_c",
    "p_m",
    "runs",
    "feasible_runs",
    "mean_coverage",
    "min_coverage",
    "max_coverage",
];

/// Writes a header row and one row per record. The header is written even
/// when there are no records.
pub fn emit_csv(records: &[RunRecord], path: &Path) -> Result<()> {
    write_rows(records, &RUN_COLUMNS, path)
}

pub fn emit_summary_csv(rows: &[SummaryRow], path: &Path) -> Result<()> {
    write_rows(rows, &SUMMARY_COLUMNS, path)
}

pub fn read_csv(path: &Path) -> Result<Vec<RunRecord>> {
    let mut r = csv::Reader::from_path(path).map_err(csv_err(path))?;
    r.deserialize()
        .collect::<std::result::Result<_, _>>()
        .map_err(csv_err(path))
}

pub fn emit_plans(plans: &[PlanRecord], path: &Path) -> Result<()> {
    let io_err = |source| Error::Io {
        path: path.to_path_buf(),
        source,
    };
    let mut w = BufWriter::new(File::create(path).map_err(io_err)?);
    for p in plans {
        let line = serde_json::to_string(p).expect("plan serializes");
        writeln!(w, "{line}").map_err(io_err)?;
    }
    w.flush().map_err(io_err)
}

/// Writes `runs.csv`, `summary.csv`, `plans.jsonl` and the resolved
/// `config.json` into `dir`.
pub fn write_outputs(
    config: &ExperimentConfig,
    output: &ExperimentOutput,
    dir: &Path,
) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|source| Error::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    emit_csv(&output.records, &dir.join("runs.csv"))?;
    emit_summary_csv(&output.summary, &dir.join("summary.csv"))?;
    emit_plans(&output.plans, &dir.join("plans.jsonl"))?;
    crate::harness::config::save_config(config, &dir.join("config.json"))
}
