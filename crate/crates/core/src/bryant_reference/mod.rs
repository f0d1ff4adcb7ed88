//! The Bryant steady soliton on ℝ³ as a reference object.
//!
//! In `x = L₂/R`, `y = R/ξ` the soliton is the unstable manifold of the
//! critical point `(1, ½)` of `x′ = −x + y + yx²`, `y′ = −xy² + 2x²y³`, a
//! curve `y = f(x)` running into the origin. The module traces this curve,
//! measures the margins of the known bounds on `f`, and integrates the
//! time-parametrized steady system from its S¹ orbit.

mod bounds;
mod curve;
mod smalltime;

pub use bounds::{verify_f_bounds, FBoundsReport, Margin};
pub use curve::{
    bryant_unstable_curve, invariant_residual, origin_series, BryantCurve, DEFAULT_LAUNCH, SERIES_SWITCH,
    TERMINAL_X,
};
pub use smalltime::{bryant_orbit_trajectory, bryant_smalltime, orbit_xy, SmallTimeReport, SMALLTIME_END};

use thiserror::Error;

use crate::ode_core::IntegrationError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BryantError {
    #[error("launch offset {0} must be positive and finite")]
    InvalidLaunch(f64),
    #[error("launch offset {h} is too far from the critical point: halving it moves the curve by {disagreement:e}")]
    LaunchTooFar { h: f64, disagreement: f64 },
    #[error("curve is not monotone near x = {x}")]
    NotMonotone { x: f64 },
    #[error("integration did not reach x = {target} (ended at t = {t_end})")]
    Incomplete { target: f64, t_end: f64 },
    #[error(transparent)]
    Integration(#[from] IntegrationError),
}
