//! Monitors for the sign conditions and a priori estimates satisfied by
//! shrinking solitons.
//!
//! Every monitor measures and reports; none of them asserts. Thresholds that
//! only make sense in exact arithmetic (10⁻¹⁴⁶ closeness to the Gaussian,
//! δ₁ beyond 10³⁰⁰⁰) are carried in the reports as rigor-scale constants next
//! to the measured desk-scale values.

mod closeness;
mod delta2;
mod kmon;
mod pancake_limit;
mod signs;

pub use closeness::{delta3_integral_check, gaussian_closeness_at_xi10, Delta3Integral, GaussianCloseness, RIGOR_B2};
pub use delta2::{delta2_monitors, Delta2Monitors};
pub use kmon::{k_monitor, KMonitor};
pub use pancake_limit::{
    large_delta1_trace, rescaled_bryant_compare, rescaled_deviation, PancakeTraceReport, RescaledComparison,
    MIN_RESCALE_DELTA1,
};
pub use signs::{max_principle_report, sign_profile, EigenSign, Extremum, MaxPrincipleReport, SignReport, ZERO_BAND};

use thiserror::Error;

use crate::bryant_reference::BryantError;
use crate::ode_core::IntegrationError;
use crate::singular_shooting::{Shot, ShootError};
use crate::soliton_models::ChartTrajectory;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MonitorError {
    #[error("the trajectory never reaches ξ = {target}")]
    EventNotReached { target: f64 },
    #[error("extrapolation to the orbit is unstable: {fine} vs {coarse}")]
    ExtrapolationUnstable { fine: f64, coarse: f64 },
    #[error("{name} = {value} is outside the supported range")]
    OutOfRange { name: &'static str, value: f64 },
    #[error("monitor needs a shot from the other singular orbit")]
    WrongSide,
    #[error(transparent)]
    Shoot(#[from] ShootError),
    #[error(transparent)]
    Integration(#[from] IntegrationError),
    #[error(transparent)]
    Bryant(#[from] BryantError),
}

/// The window `[t_a, t_b]` of a chart trajectory, in either orientation.
#[derive(Debug, Clone, Copy)]
pub struct Segment<'a> {
    pub path: &'a ChartTrajectory,
    pub t_a: f64,
    pub t_b: f64,
}

impl<'a> Segment<'a> {
    pub fn new(path: &'a ChartTrajectory, t_a: f64, t_b: f64) -> Self {
        Self { path, t_a, t_b }
    }

    pub fn whole(path: &'a ChartTrajectory) -> Self {
        Self::new(path, path.t_start(), path.t_end())
    }

    /// From the series handoff up to the shot's terminal event.
    pub fn of_shot(shot: &'a Shot) -> Self {
        Self::new(&shot.path, shot.path.t_start(), shot.event_time)
    }

    pub fn contains(&self, t: f64) -> bool {
        (t - self.t_a) * (t - self.t_b) <= 0.0
    }

    /// Step points inside the window plus both ends, ordered from `t_a` to
    /// `t_b`, with every step split into `sub` equal pieces.
    pub fn sample_times(&self, sub: usize) -> Vec<f64> {
        let sub = sub.max(1);
        let dir = if self.t_b >= self.t_a { 1.0 } else { -1.0 };
        let mut knots = vec![self.t_a];
        knots.extend(
            self.path.traj.times().iter().copied().filter(|&t| (t - self.t_a) * dir > 0.0 && (self.t_b - t) * dir > 0.0),
        );
        knots.push(self.t_b);
        let mut out = Vec::with_capacity((knots.len() - 1) * sub + 1);
        for w in knots.windows(2) {
            for k in 0..sub {
                out.push(w[0] + (w[1] - w[0]) * k as f64 / sub as f64);
            }
        }
        out.push(self.t_b);
        out
    }
}
