//! Adaptive explicit Runge–Kutta integration with dense output and event location.
//!
//! The scheme is the Dormand–Prince 8(5,3) pair with its 7th-order continuous
//! extension. Fields are plain closures `Fn(f64, &[f64; N]) -> [f64; N]`, so the
//! module knows nothing about the systems it integrates.

mod event;
mod integrator;
mod quadrature;
mod tableau;
mod trajectory;

pub use event::{locate_event, EventError, EventSide};
pub(crate) use event::refine;
pub use integrator::{integrate, integrate_fixed, integrate_until, IntegrationError};
pub use quadrature::{adaptive_quadrature, gauss_legendre_8};
pub use trajectory::{DenseStep, Termination, Trajectory};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Tolerances and safety limits for one integration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntegratorConfig {
    pub rtol: f64,
    pub atol: f64,
    /// First trial step length. `None` selects it from the field.
    pub initial_step: Option<f64>,
    /// Largest admissible step length. `None` means the whole interval.
    pub max_step: Option<f64>,
    pub max_steps: usize,
    /// Integration stops once the max-norm of the state exceeds this value.
    pub blowup_cap: f64,
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        Self {
            rtol: 1e-10,
            atol: 1e-12,
            initial_step: None,
            max_step: None,
            max_steps: 200_000,
            blowup_cap: 1e12,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("tolerances must be strictly positive (rtol={rtol}, atol={atol})")]
    NonPositiveTolerance { rtol: f64, atol: f64 },
    #[error("max_steps must be at least 1")]
    ZeroMaxSteps,
    #[error("blow-up cap must be positive, got {0}")]
    NonPositiveCap(f64),
    #[error("step lengths must be positive and finite")]
    BadStep,
}

impl IntegratorConfig {
    pub fn with_tolerances(rtol: f64, atol: f64) -> Self {
        Self { rtol, atol, ..Self::default() }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let finite_pos = |v: f64| v.is_finite() && v > 0.0;
        if !(finite_pos(self.rtol) && finite_pos(self.atol)) {
            return Err(ConfigError::NonPositiveTolerance { rtol: self.rtol, atol: self.atol });
        }
        if self.max_steps == 0 {
            return Err(ConfigError::ZeroMaxSteps);
        }
        if !(self.blowup_cap > 0.0) {
            return Err(ConfigError::NonPositiveCap(self.blowup_cap));
        }
        for s in [self.initial_step, self.max_step].into_iter().flatten() {
            if !finite_pos(s) {
                return Err(ConfigError::BadStep);
            }
        }
        Ok(())
    }
}

pub(crate) fn max_norm<const N: usize>(y: &[f64; N]) -> f64 {
    y.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
}
