//! Executes an experiment and persists its results.

use std::fs;
use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;

use crate::experiment::Cell;
use crate::records::{write_timings, RUNS_DIR};
use crate::summary::write_summary;
use crate::{summarize, ExperimentSpec, HarnessError, RunMeta, RunRecord, SummaryRow};

#[derive(Debug, Clone)]
pub struct Outcome {
    /// Ordered by cell, then trial.
    pub records: Vec<RunRecord>,
    pub summary: Vec<SummaryRow>,
}

impl Outcome {
    pub fn all_completed(&self) -> bool {
        self.records.iter().all(|r| !r.failed())
    }
}

fn run_one(spec: &ExperimentSpec, cell: &Cell, trial: usize) -> RunRecord {
    let seed = spec.seed(trial);
    let meta = RunMeta {
        cell: cell.index,
        problem: cell.problem_label.clone(),
        algorithm: cell.algorithm_label.clone(),
        trial,
        seed,
        target_objective: spec.stop.target_objective,
        terminated_by: None,
        evaluations: None,
        best_objective: None,
        best_feasible: None,
        error: None,
        best_position: Vec::new(),
        problem_config: cell.problem_entry.clone(),
        algorithm_config: cell.algorithm.clone(),
    };
    let start = Instant::now();
    let result = cell.algorithm.run(&cell.problem, seed);
    RunRecord::from_result(meta, result, start.elapsed().as_secs_f64())
}

/// Runs every trial of every cell on `workers` threads (default: one per
/// core). Configuration errors surface before any run starts; a failing run
/// is recorded and does not stop the others.
pub fn run_experiment(
    spec: &ExperimentSpec,
    workers: Option<usize>,
) -> Result<Outcome, HarnessError> {
    let cells = spec.cells()?;
    let jobs: Vec<(usize, usize)> = (0..cells.len())
        .flat_map(|c| (0..spec.trials).map(move |t| (c, t)))
        .collect();

    let threads = workers.or(spec.workers).unwrap_or(0);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| HarnessError::Config(e.to_string()))?;
    let records: Vec<RunRecord> = pool.install(|| {
        jobs.par_iter()
            .map(|&(c, t)| run_one(spec, &cells[c], t))
            .collect()
    });

    let summary = summarize(&records)?;
    Ok(Outcome { records, summary })
}

/// Writes run records, timings and the summary under `root`. An existing
/// `runs/` directory there is replaced.
pub fn write_outputs(outcome: &Outcome, root: &Path) -> Result<(), HarnessError> {
    let runs = root.join(RUNS_DIR);
    if runs.exists() {
        fs::remove_dir_all(&runs).map_err(|e| HarnessError::io(&runs, e))?;
    }
    fs::create_dir_all(&runs).map_err(|e| HarnessError::io(&runs, e))?;
    for r in &outcome.records {
        r.write(root)?;
    }
    write_timings(root, &outcome.records)?;
    write_summary(root, &outcome.summary)
}
