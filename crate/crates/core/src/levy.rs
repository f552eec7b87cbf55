//! Heavy-tailed step lengths for the Lévy-flight global walk.
//!
//! Step lengths follow a power law truncated below at `s0`: the tail density
//! is proportional to `s^(-1-λ)` for `s ≥ s0` and zero below. Sampling is
//! exact inverse-transform of that law, `s = s0 · u^(-1/λ)` with `u` uniform
//! on `(0, 1]`, so `P(S > s) = (s0 / s)^λ`.

use alloc::vec::Vec;
use core::f64::consts::PI;

use rand::Rng;

use crate::Error;

/// Parameters of the step-length law.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(deny_unknown_fields, default))]
pub struct LevyConfig {
    /// Tail exponent, in `(1, 3]`. Smaller means heavier tails.
    pub lambda: f64,
    /// Lower cutoff of the step length, in normalized units. The global walk
    /// multiplies steps by `α`, so `α · s0` is the smallest move it makes.
    pub s0: f64,
}

impl Default for LevyConfig {
    fn default() -> Self {
        Self {
            lambda: 1.5,
            s0: 0.1,
        }
    }
}

impl LevyConfig {
    pub fn new(lambda: f64, s0: f64) -> Result<Self, Error> {
        let cfg = Self { lambda, s0 };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), Error> {
        if !(self.lambda > 1.0 && self.lambda <= 3.0) {
            return Err(Error::config(alloc::format!(
                "levy lambda must lie in (1, 3], got {}",
                self.lambda
            )));
        }
        if !(self.s0 > 0.0 && self.s0.is_finite()) {
            return Err(Error::config(alloc::format!(
                "levy s0 must be positive and finite, got {}",
                self.s0
            )));
        }
        Ok(())
    }

    /// The constant `λ Γ(λ) sin(πλ/2) / π` in front of the power-law tail.
    ///
    /// The sine changes sign at `λ = 2`; the magnitude is returned so the
    /// density stays nonnegative over the whole accepted range. At exactly
    /// `λ = 2` the constant vanishes.
    pub fn tail_prefactor(&self) -> f64 {
        let l = self.lambda;
        (l * libm::tgamma(l) * libm::sin(PI * l / 2.0) / PI).abs()
    }
}

/// Lévy tail density `L(s, λ) = [λ Γ(λ) sin(πλ/2) / π] · s^(-1-λ)`,
/// hard-truncated to zero below `s0`.
pub fn levy_tail_density(s: f64, cfg: &LevyConfig) -> Result<f64, Error> {
    cfg.validate()?;
    if !(s > 0.0) {
        return Err(Error::Domain(s));
    }
    if s < cfg.s0 {
        return Ok(0.0);
    }
    Ok(cfg.tail_prefactor() * libm::pow(s, -1.0 - cfg.lambda))
}

/// Mass of [`levy_tail_density`] on `[s0, s_max]`.
pub fn truncated_mass(cfg: &LevyConfig, s_max: f64) -> f64 {
    let l = cfg.lambda;
    cfg.tail_prefactor() * libm::pow(cfg.s0, -l) / l * (1.0 - libm::pow(cfg.s0 / s_max, l))
}

/// Draws one step length `s ≥ s0`.
pub fn sample_step_length<R: Rng + ?Sized>(cfg: &LevyConfig, rng: &mut R) -> Result<f64, Error> {
    cfg.validate()?;
    Ok(draw_step(cfg, rng))
}

#[inline]
pub(crate) fn draw_step<R: Rng + ?Sized>(cfg: &LevyConfig, rng: &mut R) -> f64 {
    // gen::<f64>() is in [0, 1); flip it onto (0, 1] so u^(-1/λ) stays finite.
    let u = 1.0 - rng.gen::<f64>();
    cfg.s0 * libm::pow(u, -1.0 / cfg.lambda)
}

/// Draws a `dim`-dimensional step: independent step lengths per component,
/// each with an independent random sign. The stream order per component is
/// the length draw followed by the sign draw.
pub fn sample_levy_vector<R: Rng + ?Sized>(
    dim: usize,
    cfg: &LevyConfig,
    rng: &mut R,
) -> Result<Vec<f64>, Error> {
    cfg.validate()?;
    if dim == 0 {
        return Err(Error::ZeroDimension);
    }
    let mut out = Vec::with_capacity(dim);
    fill_levy_vector(&mut out, dim, cfg, rng);
    Ok(out)
}

pub(crate) fn fill_levy_vector<R: Rng + ?Sized>(
    out: &mut Vec<f64>,
    dim: usize,
    cfg: &LevyConfig,
    rng: &mut R,
) {
    out.clear();
    for _ in 0..dim {
        let s = draw_step(cfg, rng);
        out.push(if rng.gen::<bool>() { s } else { -s });
    }
}
