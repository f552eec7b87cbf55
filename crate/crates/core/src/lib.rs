//! Derivative-free global optimization by cuckoo search.
//!
//! The crate is `no_std` (it needs `alloc`) and holds only the algorithmic
//! parts: the truncated power-law step sampler used for Lévy flights, the
//! problem model with exterior-penalty constraint handling, a benchmark
//! corpus, the cuckoo search optimizer itself and a random-restart hill
//! climber used as a comparison baseline. Reading experiment files and
//! writing results lives in the `cuckoo-harness` crate.
//!
//! Every run is driven by a single seeded [`SearchRng`] stream, so a
//! `(problem, params, seed)` triple always reproduces the same
//! [`RunResult`] bit for bit.

#![no_std]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod corpus;
pub mod cuckoo;
mod error;
pub mod hill_climb;
pub mod levy;
pub mod problem;
mod run;

pub use cuckoo::{
    abandon_fraction, cuckoo_search, global_walk, greedy_select, initialize, local_walk,
    select_partners, AlgorithmParams, CompareTo, LocalStepLaw, Nest, Population, StepScale,
};
pub use error::Error;
pub use hill_climb::{hill_climb_restart, HillClimbParams};
pub use levy::LevyConfig;
pub use problem::{Bounds, Evaluation, PenaltyConfig, Problem};
pub use run::{HistoryPoint, RunResult, StopCriterion, Termination, STAGNATION_EPSILON};

/// Random stream used by every stochastic operation in this crate.
///
/// ChaCha8 is portable across platforms and pointer widths, which keeps
/// seeded runs reproducible everywhere.
pub type SearchRng = rand_chacha::ChaCha8Rng;

/// Creates the random stream for a run from its seed.
pub fn rng_from_seed(seed: u64) -> SearchRng {
    use rand::SeedableRng;
    SearchRng::seed_from_u64(seed)
}
