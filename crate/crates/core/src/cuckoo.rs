//! Cuckoo search.
//!
//! Each nest holds one candidate solution. One iteration runs three batches
//! in a fixed order:
//!
//! 1. **Global walk.** Every nest `i` lays a Lévy-flight egg
//!    `x_i + α ⊗ L`, which competes greedily against a uniformly chosen nest
//!    (or its parent, see [`CompareTo`]).
//! 2. **Local walk.** Every nest `i` proposes
//!    `x_i + α s ⊗ H(p_a − ε) ⊗ (x_j − x_k)` with two distinct partners
//!    `j, k ≠ i`, a step `s ~ U(0, 1]` and a fresh `ε ~ U[0, 1)` per
//!    component, and keeps whichever of the two is better.
//! 3. **Abandonment.** The worst `⌈p_a · n⌉` nests are rebuilt uniformly at
//!    random inside the bounds.
//!
//! After the three batches the best-so-far record and history are updated
//! and the stop rules are checked. Candidates are clamped componentwise to
//! the bounds before they are evaluated.

use alloc::vec::Vec;

use rand::Rng;

use crate::levy::fill_levy_vector;
use crate::run::Tracker;
use crate::{rng_from_seed, Bounds, Error, LevyConfig, Problem, RunResult, StopCriterion};

/// One candidate solution with its cached evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct Nest {
    pub position: Vec<f64>,
    /// Penalized objective.
    pub objective: f64,
    pub feasible: bool,
}

impl Nest {
    pub fn evaluate(problem: &Problem, position: Vec<f64>) -> Result<Self, Error> {
        let e = problem.evaluate(&position)?;
        Ok(Self {
            position,
            objective: e.objective,
            feasible: e.feasible,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Population {
    pub nests: Vec<Nest>,
    /// Best nest seen so far. Never worse than any current nest once
    /// [`Population::refresh_best`] has run.
    pub best: Nest,
    pub evaluations: u64,
}

impl Population {
    pub fn len(&self) -> usize {
        self.nests.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nests.is_empty()
    }

    /// Lowers the best-so-far record to the best current nest if that one is
    /// strictly better. Returns whether the record changed.
    pub fn refresh_best(&mut self) -> bool {
        let Some(cand) = self
            .nests
            .iter()
            .reduce(|a, b| if b.objective < a.objective { b } else { a })
        else {
            return false;
        };
        if cand.objective < self.best.objective {
            self.best = cand.clone();
            true
        } else {
            false
        }
    }

    fn evaluate(&mut self, problem: &Problem, position: Vec<f64>) -> Result<Nest, Error> {
        self.evaluations += 1;
        Nest::evaluate(problem, position)
    }
}

/// Step-size scaling factor `α`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum StepScale {
    /// `α_c = fraction · (upper_c − lower_c)` per coordinate.
    RangeFraction(f64),
    /// Same `α` on every coordinate, in problem units.
    Absolute(f64),
}

impl StepScale {
    pub fn value(&self) -> f64 {
        match *self {
            StepScale::RangeFraction(v) | StepScale::Absolute(v) => v,
        }
    }

    /// Per-coordinate `α` for the given bounds.
    pub fn resolve(&self, bounds: &[Bounds]) -> Vec<f64> {
        match *self {
            StepScale::RangeFraction(f) => bounds.iter().map(|b| f * b.width()).collect(),
            StepScale::Absolute(a) => alloc::vec![a; bounds.len()],
        }
    }
}

/// Which nest a global-walk egg competes against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum CompareTo {
    /// A uniformly chosen nest, possibly the parent.
    #[default]
    Random,
    Parent,
}

/// Law of the scalar step `s` in the local walk.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum LocalStepLaw {
    /// One draw from `U(0, 1]` per local-walk call.
    #[default]
    Uniform,
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(deny_unknown_fields, default))]
pub struct AlgorithmParams {
    /// Number of nests `n`, at least 3.
    pub nests: usize,
    /// Discovery / switching probability `p_a`.
    pub discovery_probability: f64,
    pub alpha: StepScale,
    pub levy: LevyConfig,
    pub stop: StopCriterion,
    pub compare_to: CompareTo,
    pub local_step_law: LocalStepLaw,
}

impl Default for AlgorithmParams {
    fn default() -> Self {
        Self {
            nests: 25,
            discovery_probability: 0.25,
            alpha: StepScale::RangeFraction(0.01),
            levy: LevyConfig::default(),
            stop: StopCriterion::budget(50_000),
            compare_to: CompareTo::Random,
            local_step_law: LocalStepLaw::Uniform,
        }
    }
}

impl AlgorithmParams {
    pub fn validate(&self) -> Result<(), Error> {
        if self.nests < 3 {
            return Err(Error::config("cuckoo search needs at least 3 nests"));
        }
        if !(0.0..=1.0).contains(&self.discovery_probability) {
            return Err(Error::config("discovery_probability must lie in [0, 1]"));
        }
        let a = self.alpha.value();
        if !(a > 0.0 && a.is_finite()) {
            return Err(Error::config("alpha must be positive and finite"));
        }
        self.levy.validate()?;
        self.stop.validate()
    }

    /// `⌈p_a · n⌉`, the number of nests abandoned per iteration.
    pub fn abandon_count(&self) -> usize {
        // Guard against p·n landing one ulp above an integer (0.1 · 30).
        let raw = self.discovery_probability * self.nests as f64;
        let count = libm::ceil(raw - 1e-9 * raw.max(1.0)) as usize;
        count.min(self.nests)
    }
}

/// Builds `params.nests` nests uniformly inside the problem bounds.
pub fn initialize<R: Rng + ?Sized>(
    problem: &Problem,
    params: &AlgorithmParams,
    rng: &mut R,
) -> Result<Population, Error> {
    params.validate()?;
    problem.require_finite_bounds()?;
    let mut nests = Vec::with_capacity(params.nests);
    for _ in 0..params.nests {
        nests.push(Nest::evaluate(problem, problem.sample_uniform(rng))?);
    }
    let best = nests
        .iter()
        .reduce(|a, b| if b.objective < a.objective { b } else { a })
        .cloned()
        .expect("at least three nests");
    Ok(Population {
        nests,
        best,
        evaluations: params.nests as u64,
    })
}

fn check_dim(expected: usize, x: &[f64]) -> Result<(), Error> {
    if x.len() == expected {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            expected,
            found: x.len(),
        })
    }
}

/// Lévy-flight candidate `x + α ⊗ L`, clamped to `bounds`.
pub fn global_walk<R: Rng + ?Sized>(
    x: &[f64],
    bounds: &[Bounds],
    params: &AlgorithmParams,
    rng: &mut R,
) -> Result<Vec<f64>, Error> {
    check_dim(bounds.len(), x)?;
    params.levy.validate()?;
    let alpha = params.alpha.resolve(bounds);
    let mut step = Vec::with_capacity(x.len());
    Ok(global_candidate(
        x,
        bounds,
        &alpha,
        &params.levy,
        &mut step,
        rng,
    ))
}

fn global_candidate<R: Rng + ?Sized>(
    x: &[f64],
    bounds: &[Bounds],
    alpha: &[f64],
    levy: &LevyConfig,
    step: &mut Vec<f64>,
    rng: &mut R,
) -> Vec<f64> {
    fill_levy_vector(step, x.len(), levy, rng);
    x.iter()
        .zip(step.iter())
        .zip(alpha)
        .zip(bounds)
        .map(|(((&xc, &l), &a), b)| b.clamp(xc + a * l))
        .collect()
}

/// Heaviside-gated differential candidate
/// `x_i + α s ⊗ H(p_a − ε) ⊗ (x_j − x_k)`, clamped to `bounds`.
///
/// Draws `s` first, then one `ε` per component in coordinate order.
pub fn local_walk<R: Rng + ?Sized>(
    x_i: &[f64],
    x_j: &[f64],
    x_k: &[f64],
    bounds: &[Bounds],
    params: &AlgorithmParams,
    rng: &mut R,
) -> Result<Vec<f64>, Error> {
    let d = bounds.len();
    check_dim(d, x_i)?;
    check_dim(d, x_j)?;
    check_dim(d, x_k)?;
    let alpha = params.alpha.resolve(bounds);
    Ok(local_candidate(
        x_i,
        x_j,
        x_k,
        bounds,
        &alpha,
        params.discovery_probability,
        params.local_step_law,
        rng,
    ))
}

#[allow(clippy::too_many_arguments)]
fn local_candidate<R: Rng + ?Sized>(
    x_i: &[f64],
    x_j: &[f64],
    x_k: &[f64],
    bounds: &[Bounds],
    alpha: &[f64],
    pa: f64,
    law: LocalStepLaw,
    rng: &mut R,
) -> Vec<f64> {
    let s = match law {
        LocalStepLaw::Uniform => 1.0 - rng.gen::<f64>(),
    };
    let mut out = Vec::with_capacity(x_i.len());
    for c in 0..x_i.len() {
        let eps = rng.gen::<f64>();
        let v = if pa - eps > 0.0 {
            x_i[c] + alpha[c] * s * (x_j[c] - x_k[c])
        } else {
            x_i[c]
        };
        out.push(bounds[c].clamp(v));
    }
    out
}

/// Two distinct partners `j ≠ k`, both different from `i`, uniform over the
/// `(n − 1)(n − 2)` ordered pairs. Needs `n ≥ 3`.
pub fn select_partners<R: Rng + ?Sized>(i: usize, n: usize, rng: &mut R) -> (usize, usize) {
    debug_assert!(n >= 3 && i < n);
    let mut j = rng.gen_range(0..n - 1);
    if j >= i {
        j += 1;
    }
    let (lo, hi) = if i < j { (i, j) } else { (j, i) };
    let mut k = rng.gen_range(0..n - 2);
    if k >= lo {
        k += 1;
    }
    if k >= hi {
        k += 1;
    }
    (j, k)
}

/// Keeps the nest with the smaller penalized objective; ties keep the
/// incumbent.
pub fn greedy_select(candidate: Nest, incumbent: Nest) -> Nest {
    if improves(&candidate, &incumbent) {
        candidate
    } else {
        incumbent
    }
}

fn improves(candidate: &Nest, incumbent: &Nest) -> bool {
    candidate.objective < incumbent.objective
}

/// Greedy selection in place: `slot` takes `candidate` only if it is better.
fn settle(slot: &mut Nest, candidate: Nest) {
    if improves(&candidate, slot) {
        *slot = candidate;
    }
}

/// Replaces the worst `⌈p_a · n⌉` nests with fresh uniform ones and returns
/// their indices, worst first. Ties are broken by index. The best-so-far
/// record is left alone.
pub fn abandon_fraction<R: Rng + ?Sized>(
    pop: &mut Population,
    problem: &Problem,
    params: &AlgorithmParams,
    rng: &mut R,
) -> Result<Vec<usize>, Error> {
    problem.require_finite_bounds()?;
    let count = params.abandon_count().min(pop.len());
    if count == 0 {
        return Ok(Vec::new());
    }
    let mut order: Vec<usize> = (0..pop.len()).collect();
    order.sort_by(|&a, &b| {
        pop.nests[b]
            .objective
            .total_cmp(&pop.nests[a].objective)
            .then(a.cmp(&b))
    });
    order.truncate(count);
    for &idx in &order {
        let position = problem.sample_uniform(rng);
        pop.nests[idx] = pop.evaluate(problem, position)?;
    }
    Ok(order)
}

/// Runs cuckoo search from `seed` until `params.stop` fires.
///
/// The evaluation budget is checked after each of the three batches, so
/// `evaluations` can exceed `max_evaluations` by less than `n`.
pub fn cuckoo_search(
    problem: &Problem,
    params: &AlgorithmParams,
    seed: u64,
) -> Result<RunResult, Error> {
    params.validate()?;
    let mut rng = rng_from_seed(seed);
    let mut pop = initialize(problem, params, &mut rng)?;
    let bounds = problem.bounds();
    let alpha = params.alpha.resolve(bounds);
    let n = pop.len();
    let pa = params.discovery_probability;
    let mut tracker = Tracker::new(&params.stop);
    let mut step = Vec::with_capacity(problem.dimension());

    let mut fired = tracker.record(pop.best.objective, pop.evaluations);
    while fired.is_none() {
        for i in 0..n {
            let cand = global_candidate(
                &pop.nests[i].position,
                bounds,
                &alpha,
                &params.levy,
                &mut step,
                &mut rng,
            );
            let cand = pop.evaluate(problem, cand)?;
            let target = match params.compare_to {
                CompareTo::Random => rng.gen_range(0..n),
                CompareTo::Parent => i,
            };
            settle(&mut pop.nests[target], cand);
        }
        if tracker.budget_exhausted(pop.evaluations) {
            pop.refresh_best();
            fired = tracker.record(pop.best.objective, pop.evaluations);
            break;
        }

        for i in 0..n {
            let (j, k) = select_partners(i, n, &mut rng);
            let cand = local_candidate(
                &pop.nests[i].position,
                &pop.nests[j].position,
                &pop.nests[k].position,
                bounds,
                &alpha,
                pa,
                params.local_step_law,
                &mut rng,
            );
            let cand = pop.evaluate(problem, cand)?;
            settle(&mut pop.nests[i], cand);
        }
        if !tracker.budget_exhausted(pop.evaluations) {
            abandon_fraction(&mut pop, problem, params, &mut rng)?;
        }

        pop.refresh_best();
        fired = tracker.record(pop.best.objective, pop.evaluations);
    }

    Ok(RunResult {
        best_position: pop.best.position,
        best_objective: pop.best.objective,
        best_feasible: pop.best.feasible,
        history: tracker.into_history(),
        evaluations: pop.evaluations,
        seed,
        terminated_by: fired.expect("loop exits only when a rule fires"),
    })
}
