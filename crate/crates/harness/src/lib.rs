//! Seeded multi-trial experiments over `cuckoo-core`.
//!
//! An experiment is a TOML file naming corpus problems, algorithms with
//! their parameters, a shared stop rule and a trial count. Running it
//! produces, under the output directory:
//!
//! ```text
//! runs/<problem>__<algorithm>/trial_0000.csv   iteration,best_objective,evaluations
//! runs/<problem>__<algorithm>/trial_0000.toml  seed, parameters, final state
//! timings.csv                                  wall time per run
//! summary.csv                                  one row per (problem, algorithm)
//! ```
//!
//! Run records depend only on the experiment file, so reruns are
//! byte-identical. Wall times are kept out of them, in `timings.csv`.

pub mod error;
pub mod experiment;
pub mod records;
pub mod runner;
pub mod summary;

pub use error::HarnessError;
pub use experiment::{AlgorithmEntry, ExperimentSpec, ProblemEntry};
pub use records::{RunMeta, RunRecord};
pub use runner::{run_experiment, write_outputs, Outcome};
pub use summary::{lower_median, summarize, SummaryRow};
