//! Constrained minimization problems and exterior-penalty evaluation.
//!
//! A [`Problem`] is a box-bounded objective with optional inequality
//! constraints `g_k(x) ≤ 0` and equality constraints `h_j(x) = 0`. The
//! optimizers only ever see the penalized value
//!
//! ```text
//! f(x) + w · [ Σ_k max(0, g_k(x))² + Σ_j max(0, |h_j(x)| − tol)² ]
//! ```
//!
//! Everything here minimizes. To maximize `f`, wrap it as `-f`.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::Error;

/// A scalar function of a position. Must be pure.
pub type ScalarFn = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bounds {
    pub lower: f64,
    pub upper: f64,
}

impl Bounds {
    pub const fn new(lower: f64, upper: f64) -> Self {
        Self { lower, upper }
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn is_finite(&self) -> bool {
        self.lower.is_finite() && self.upper.is_finite()
    }

    pub fn clamp(&self, x: f64) -> f64 {
        x.max(self.lower).min(self.upper)
    }

    pub fn contains(&self, x: f64) -> bool {
        x >= self.lower && x <= self.upper
    }
}

/// Static quadratic exterior penalty settings.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(deny_unknown_fields, default))]
pub struct PenaltyConfig {
    pub penalty_weight: f64,
    /// Slack allowed on `|h_j(x)|` before an equality counts as violated.
    pub eq_tolerance: f64,
}

impl Default for PenaltyConfig {
    fn default() -> Self {
        Self {
            penalty_weight: 1e6,
            eq_tolerance: 1e-4,
        }
    }
}

impl PenaltyConfig {
    pub fn validate(&self) -> Result<(), Error> {
        if !(self.penalty_weight > 0.0 && self.penalty_weight.is_finite()) {
            return Err(Error::config("penalty_weight must be positive and finite"));
        }
        if !(self.eq_tolerance >= 0.0) {
            return Err(Error::config("eq_tolerance must be nonnegative"));
        }
        Ok(())
    }
}

/// Outcome of evaluating a position.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluation {
    /// Objective plus penalty. Equal to `raw` when feasible.
    pub objective: f64,
    pub raw: f64,
    pub feasible: bool,
}

#[derive(Clone)]
pub struct Problem {
    name: String,
    bounds: Vec<Bounds>,
    objective: ScalarFn,
    inequality: Vec<ScalarFn>,
    equality: Vec<ScalarFn>,
    penalty: PenaltyConfig,
}

impl core::fmt::Debug for Problem {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("Problem")
            .field("name", &self.name)
            .field("bounds", &self.bounds)
            .field("inequality_constraints", &self.inequality.len())
            .field("equality_constraints", &self.equality.len())
            .field("penalty", &self.penalty)
            .finish()
    }
}

impl Problem {
    pub fn new<F>(name: impl Into<String>, bounds: Vec<Bounds>, objective: F) -> Result<Self, Error>
    where
        F: Fn(&[f64]) -> f64 + Send + Sync + 'static,
    {
        if bounds.is_empty() {
            return Err(Error::ZeroDimension);
        }
        for (coordinate, b) in bounds.iter().enumerate() {
            if !(b.lower < b.upper) {
                return Err(Error::InvalidBounds {
                    coordinate,
                    lower: b.lower,
                    upper: b.upper,
                });
            }
        }
        Ok(Self {
            name: name.into(),
            bounds,
            objective: Arc::new(objective),
            inequality: Vec::new(),
            equality: Vec::new(),
            penalty: PenaltyConfig::default(),
        })
    }

    /// Adds a constraint `g(x) ≤ 0`.
    pub fn with_inequality<F>(mut self, g: F) -> Self
    where
        F: Fn(&[f64]) -> f64 + Send + Sync + 'static,
    {
        self.inequality.push(Arc::new(g));
        self
    }

    /// Adds a constraint `h(x) = 0`.
    pub fn with_equality<F>(mut self, h: F) -> Self
    where
        F: Fn(&[f64]) -> f64 + Send + Sync + 'static,
    {
        self.equality.push(Arc::new(h));
        self
    }

    pub fn with_penalty(mut self, penalty: PenaltyConfig) -> Result<Self, Error> {
        penalty.validate()?;
        self.penalty = penalty;
        Ok(self)
    }

    /// Replaces the objective, keeping bounds and constraints. Useful for
    /// instrumenting a problem (counting calls, logging positions).
    pub fn map_objective<F>(mut self, wrap: impl FnOnce(ScalarFn) -> F) -> Self
    where
        F: Fn(&[f64]) -> f64 + Send + Sync + 'static,
    {
        self.objective = Arc::new(wrap(self.objective));
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dimension(&self) -> usize {
        self.bounds.len()
    }

    pub fn bounds(&self) -> &[Bounds] {
        &self.bounds
    }

    pub fn penalty(&self) -> &PenaltyConfig {
        &self.penalty
    }

    pub fn num_inequality(&self) -> usize {
        self.inequality.len()
    }

    pub fn num_equality(&self) -> usize {
        self.equality.len()
    }

    pub fn is_constrained(&self) -> bool {
        !(self.inequality.is_empty() && self.equality.is_empty())
    }

    /// Unpenalized objective.
    pub fn raw_objective(&self, x: &[f64]) -> f64 {
        (self.objective)(x)
    }

    pub fn inequality_values(&self, x: &[f64]) -> Vec<f64> {
        self.inequality.iter().map(|g| g(x)).collect()
    }

    pub fn equality_values(&self, x: &[f64]) -> Vec<f64> {
        self.equality.iter().map(|h| h(x)).collect()
    }

    pub fn evaluate(&self, x: &[f64]) -> Result<Evaluation, Error> {
        self.evaluate_with(x, &self.penalty)
    }

    pub fn evaluate_with(&self, x: &[f64], penalty: &PenaltyConfig) -> Result<Evaluation, Error> {
        if x.len() != self.dimension() {
            return Err(Error::DimensionMismatch {
                expected: self.dimension(),
                found: x.len(),
            });
        }
        let raw = (self.objective)(x);
        if !raw.is_finite() {
            return Err(Error::NonFiniteObjective {
                position: x.to_vec(),
            });
        }

        let mut violation = 0.0;
        let mut feasible = true;
        for g in &self.inequality {
            let v = g(x);
            if !(v <= 0.0) {
                feasible = false;
                violation += v * v;
            }
        }
        for h in &self.equality {
            let v = h(x).abs() - penalty.eq_tolerance;
            if !(v <= 0.0) {
                feasible = false;
                violation += v * v;
            }
        }

        if feasible {
            return Ok(Evaluation {
                objective: raw,
                raw,
                feasible,
            });
        }
        let objective = raw + penalty.penalty_weight * violation;
        if !objective.is_finite() {
            return Err(Error::NonFiniteObjective {
                position: x.to_vec(),
            });
        }
        Ok(Evaluation {
            objective,
            raw,
            feasible,
        })
    }

    /// Draws a position uniformly inside the bounds, which must be finite.
    pub(crate) fn sample_uniform<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> Vec<f64> {
        self.bounds
            .iter()
            .map(|b| b.lower + rng.gen::<f64>() * b.width())
            .collect()
    }

    pub(crate) fn require_finite_bounds(&self) -> Result<(), Error> {
        match self.bounds.iter().position(|b| !b.is_finite()) {
            Some(coordinate) => Err(Error::UnboundedProblem { coordinate }),
            None => Ok(()),
        }
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dimension() && self.bounds.iter().zip(x).all(|(b, &v)| b.contains(v))
    }
}
