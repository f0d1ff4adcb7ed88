//! Shooting from the two singular orbits and matching on the ξ = 0 orbit.
//!
//! The S¹ side is parametrized by δ₁ = η₃′(0), the S² side by δ₂ = η₀′(0) − 1 and
//! δ₃ = R(T). Both shots start from truncated odd/even series a short
//! distance from their orbit and are integrated in regularized charts until ξ
//! vanishes. Solitons are the zeros of the difference of the two meet points.

mod newton;
mod params;
mod scan;
mod series;
mod shoot;
mod sweep;

pub use newton::{find_root, jacobian, NewtonOptions, RootReport};
pub use params::{S1ShootParam, S2ShootParam, ShootConfig};
pub use scan::{scan_domain, scan_domain_with, ScanBox, ScanMinimum, ScanReport, DEFAULT_SUBDIVISIONS};
pub use series::{s1_series_eta, s1_series_eta_lambda, s1_series_state, s2_series_eta, s2_series_state, MAX_SERIES_EPS};
pub use shoot::{
    meet_point_derivatives, mismatch, shoot_curve_point, shoot_s1_to_xi, shoot_s2_to_xi, shoot_surface_point, MeetPoint,
    MismatchVector, Shot, Side,
};
pub use sweep::{sample_curve, sample_surface, CurveSample, SampleStatus, SurfaceSample, SweepError};

use thiserror::Error;

use crate::ode_core::{IntegrationError, Termination};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ShootError {
    #[error("series handoff distance {0} exceeds the admissible 1e-3")]
    EpsilonTooLarge(f64),
    #[error("{name} = {value} is outside the admissible region (pass the exploratory flag to override)")]
    Inadmissible { name: &'static str, value: f64 },
    #[error("event not reached: integration ended at t = {t_end} ({termination:?})")]
    EventNotReached { termination: Termination, t_end: f64 },
    #[error("R = {r} ≤ 0 at the meeting orbit")]
    NonPrincipal { r: f64 },
    #[error(transparent)]
    Integration(#[from] IntegrationError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RootError {
    #[error("Jacobian is singular at {at:?}")]
    SingularJacobian { at: [f64; 3] },
    #[error("no convergence after {iterations} iterations (residual {residual:e}, stalled: {stalled})")]
    MaxIterations { iterations: usize, residual: f64, stalled: bool, last: [f64; 3] },
    #[error("shooting failed at {at:?}: {source}")]
    ShootFailure { at: [f64; 3], source: ShootError },
}
