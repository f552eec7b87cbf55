//! Benchmark problems addressable by name.
//!
//! | name            | dimension | bounds                         | minimum | minimizer |
//! |-----------------|-----------|--------------------------------|---------|-----------|
//! | `sphere`        | any ≥ 1   | `[-5.12, 5.12]^d`              | 0       | `0`       |
//! | `rosenbrock`    | any ≥ 2   | `[-5, 10]^d`                   | 0       | `1`       |
//! | `ackley`        | any ≥ 1   | `[-32.768, 32.768]^d`          | 0       | `0`       |
//! | `rastrigin`     | any ≥ 1   | `[-5.12, 5.12]^d`              | 0       | `0`       |
//! | `spring_design` | 3         | see [`spring_design`]          | ≈0.012665 | reference point |
//! | `welded_beam`   | 4         | see [`welded_beam`]            | ≈1.7311 | reference point |
//!
//! Ackley uses `a = 20`, `b = 0.2`, `c = 2π`. Rastrigin uses `A = 10`.
//!
//! The two engineering problems use the standard tension/compression
//! spring and welded beam formulations. [`reference_point`] returns a
//! commonly quoted near-optimal point for each, together with the value
//! this crate computes at it; downstream checks compare against that value.

use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::{E, PI, SQRT_2};

use crate::{Bounds, Error, Problem};

pub const NAMES: [&str; 6] = [
    "sphere",
    "rosenbrock",
    "ackley",
    "rastrigin",
    "spring_design",
    "welded_beam",
];

/// Dimension used for the scalable functions when none is given.
pub const DEFAULT_DIMENSION: usize = 10;

/// Every corpus problem; scalable functions use `dimension`.
pub fn corpus(dimension: usize) -> Result<Vec<Problem>, Error> {
    NAMES.iter().map(|n| lookup(n, Some(dimension))).collect()
}

/// Looks a problem up by name. `dimension` is ignored by the fixed-size
/// engineering problems.
pub fn lookup(name: &str, dimension: Option<usize>) -> Result<Problem, Error> {
    let d = dimension.unwrap_or(DEFAULT_DIMENSION);
    match name {
        "sphere" => sphere(d),
        "rosenbrock" => rosenbrock(d),
        "ackley" => ackley(d),
        "rastrigin" => rastrigin(d),
        "spring_design" => Ok(spring_design()),
        "welded_beam" => Ok(welded_beam()),
        other => Err(Error::UnknownProblem(other.to_string())),
    }
}

/// Fixed dimension of an engineering problem, `None` for the scalable ones.
pub fn fixed_dimension(name: &str) -> Option<usize> {
    match name {
        "spring_design" => Some(3),
        "welded_beam" => Some(4),
        _ => None,
    }
}

/// A documented point and the objective the implementation gives there.
#[derive(Debug, Clone, PartialEq)]
pub struct ReferencePoint {
    pub position: Vec<f64>,
    /// Raw (unpenalized) objective at `position`.
    pub objective: f64,
}

/// Known global minimizer for the classic functions, best-known literature
/// design for the engineering ones.
pub fn reference_point(name: &str, dimension: Option<usize>) -> Result<ReferencePoint, Error> {
    let problem = lookup(name, dimension)?;
    let d = problem.dimension();
    let position = match name {
        "sphere" | "ackley" | "rastrigin" => vec![0.0; d],
        "rosenbrock" => vec![1.0; d],
        "spring_design" => vec![0.05169, 0.35673, 11.2885],
        "welded_beam" => vec![0.2015, 3.562, 9.0414, 0.2057],
        _ => unreachable!("lookup accepted the name"),
    };
    let objective = problem.raw_objective(&position);
    Ok(ReferencePoint {
        position,
        objective,
    })
}

fn check_dim(name: &str, d: usize, min: usize) -> Result<(), Error> {
    if d == 0 {
        return Err(Error::ZeroDimension);
    }
    if d < min {
        return Err(Error::config(format!("{name} needs dimension ≥ {min}")));
    }
    Ok(())
}

pub fn sphere(d: usize) -> Result<Problem, Error> {
    check_dim("sphere", d, 1)?;
    Problem::new("sphere", vec![Bounds::new(-5.12, 5.12); d], |x| {
        x.iter().map(|v| v * v).sum()
    })
}

pub fn rosenbrock(d: usize) -> Result<Problem, Error> {
    check_dim("rosenbrock", d, 2)?;
    Problem::new("rosenbrock", vec![Bounds::new(-5.0, 10.0); d], |x| {
        x.windows(2)
            .map(|w| {
                let a = w[1] - w[0] * w[0];
                let b = 1.0 - w[0];
                100.0 * a * a + b * b
            })
            .sum()
    })
}

pub fn ackley(d: usize) -> Result<Problem, Error> {
    check_dim("ackley", d, 1)?;
    Problem::new("ackley", vec![Bounds::new(-32.768, 32.768); d], |x| {
        let n = x.len() as f64;
        let sq: f64 = x.iter().map(|v| v * v).sum();
        let cs: f64 = x.iter().map(|v| libm::cos(2.0 * PI * v)).sum();
        -20.0 * libm::exp(-0.2 * libm::sqrt(sq / n)) - libm::exp(cs / n) + 20.0 + E
    })
}

pub fn rastrigin(d: usize) -> Result<Problem, Error> {
    check_dim("rastrigin", d, 1)?;
    Problem::new("rastrigin", vec![Bounds::new(-5.12, 5.12); d], |x| {
        10.0 * x.len() as f64
            + x.iter()
                .map(|v| v * v - 10.0 * libm::cos(2.0 * PI * v))
                .sum::<f64>()
    })
}

/// Tension/compression spring weight.
///
/// Variables: wire diameter `d ∈ [0.05, 2]`, mean coil diameter
/// `D ∈ [0.25, 1.3]`, active coils `N ∈ [2, 15]`.
///
/// ```text
/// f  = (N + 2) D d²
/// g1 = 1 − D³N / (71785 d⁴)                              ≤ 0
/// g2 = (4D² − dD) / (12566 (D d³ − d⁴)) + 1/(5108 d²) − 1 ≤ 0
/// g3 = 1 − 140.45 d / (D² N)                              ≤ 0
/// g4 = (D + d) / 1.5 − 1                                   ≤ 0
/// ```
///
/// Best-known design: `(0.05169, 0.35673, 11.2885)`, `f ≈ 0.012665`.
pub fn spring_design() -> Problem {
    let bounds = vec![
        Bounds::new(0.05, 2.0),
        Bounds::new(0.25, 1.3),
        Bounds::new(2.0, 15.0),
    ];
    Problem::new("spring_design", bounds, |x| {
        let (d, dm, n) = (x[0], x[1], x[2]);
        (n + 2.0) * dm * d * d
    })
    .expect("static bounds are valid")
    .with_inequality(|x| {
        let (d, dm, n) = (x[0], x[1], x[2]);
        1.0 - dm * dm * dm * n / (71785.0 * libm::pow(d, 4.0))
    })
    .with_inequality(|x| {
        let (d, dm) = (x[0], x[1]);
        (4.0 * dm * dm - d * dm) / (12566.0 * (dm * libm::pow(d, 3.0) - libm::pow(d, 4.0)))
            + 1.0 / (5108.0 * d * d)
            - 1.0
    })
    .with_inequality(|x| {
        let (d, dm, n) = (x[0], x[1], x[2]);
        1.0 - 140.45 * d / (dm * dm * n)
    })
    .with_inequality(|x| (x[0] + x[1]) / 1.5 - 1.0)
}

/// Welded beam fabrication cost.
///
/// Variables: weld thickness `h ∈ [0.1, 2]`, weld length `l ∈ [0.1, 10]`,
/// bar height `t ∈ [0.1, 10]`, bar thickness `b ∈ [0.1, 2]`.
/// Constants: `P = 6000 lb`, `L = 14 in`, `E = 30·10⁶ psi`, `G = 12·10⁶ psi`,
/// `τ_max = 13600 psi`, `σ_max = 30000 psi`, `δ_max = 0.25 in`.
///
/// ```text
/// f  = 1.10471 h² l + 0.04811 t b (14 + l)
/// τ' = P / (√2 h l)        M = P (L + l/2)
/// R  = √(l²/4 + ((h + t)/2)²)
/// J  = 2 √2 h l (l²/12 + ((h + t)/2)²)
/// τ'' = M R / J            τ = √(τ'² + τ' τ'' l / R + τ''²)
/// σ  = 6 P L / (b t²)      δ = 4 P L³ / (E t³ b)
/// P_c = 4.013 E √(t² b⁶ / 36) / L² · (1 − t/(2L) √(E / 4G))
///
/// g1 = τ − τ_max                        g5 = 0.125 − h
/// g2 = σ − σ_max                        g6 = δ − δ_max
/// g3 = h − b                            g7 = P − P_c
/// g4 = 0.10471 h² + 0.04811 t b (14 + l) − 5
/// ```
///
/// Best-known design: `(0.2015, 3.562, 9.0414, 0.2057)`, `f ≈ 1.7312`.
pub fn welded_beam() -> Problem {
    const P: f64 = 6000.0;
    const L: f64 = 14.0;
    const E_MOD: f64 = 30e6;
    const G_MOD: f64 = 12e6;
    const TAU_MAX: f64 = 13600.0;
    const SIGMA_MAX: f64 = 30000.0;
    const DELTA_MAX: f64 = 0.25;

    let bounds = vec![
        Bounds::new(0.1, 2.0),
        Bounds::new(0.1, 10.0),
        Bounds::new(0.1, 10.0),
        Bounds::new(0.1, 2.0),
    ];
    Problem::new("welded_beam", bounds, |x| {
        let (h, l, t, b) = (x[0], x[1], x[2], x[3]);
        1.10471 * h * h * l + 0.04811 * t * b * (14.0 + l)
    })
    .expect("static bounds are valid")
    .with_inequality(|x| {
        let (h, l, t) = (x[0], x[1], x[2]);
        let tau1 = P / (SQRT_2 * h * l);
        let m = P * (L + l / 2.0);
        let half = (h + t) / 2.0;
        let r = libm::sqrt(l * l / 4.0 + half * half);
        let j = 2.0 * (SQRT_2 * h * l * (l * l / 12.0 + half * half));
        let tau2 = m * r / j;
        let tau = libm::sqrt(tau1 * tau1 + tau1 * tau2 * l / r + tau2 * tau2);
        tau - TAU_MAX
    })
    .with_inequality(|x| {
        let (t, b) = (x[2], x[3]);
        6.0 * P * L / (b * t * t) - SIGMA_MAX
    })
    .with_inequality(|x| x[0] - x[3])
    .with_inequality(|x| {
        let (h, l, t, b) = (x[0], x[1], x[2], x[3]);
        0.10471 * h * h + 0.04811 * t * b * (14.0 + l) - 5.0
    })
    .with_inequality(|x| 0.125 - x[0])
    .with_inequality(|x| {
        let (t, b) = (x[2], x[3]);
        4.0 * P * L * L * L / (E_MOD * t * t * t * b) - DELTA_MAX
    })
    .with_inequality(|x| {
        let (t, b) = (x[2], x[3]);
        let pc = 4.013 * E_MOD * libm::sqrt(t * t * libm::pow(b, 6.0) / 36.0) / (L * L)
            * (1.0 - t / (2.0 * L) * libm::sqrt(E_MOD / (4.0 * G_MOD)));
        P - pc
    })
}
