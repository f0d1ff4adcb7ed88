//! Regularized coordinates near the singular orbits.
//!
//! Near the S¹ orbit (t → 0) the raw variables carry 1/t poles, near the S²
//! orbit (s = T − t → 0) the variables ξ and L₁ carry 1/s poles. Integrating
//! the regular parts instead keeps the curvature eigenvalues, which are O(1)
//! differences of O(1/t²) terms in raw form, accurate to working precision.

use serde::{Deserialize, Serialize};

use super::{curvature_eigs, soliton_rhs, CurvatureEigenvalues, ScaledState, SolitonState};
use crate::ode_core::{locate_event, EventError, EventSide, Trajectory};

/// S¹-chart field of the soliton equations with a general constant λ
/// (λ = 1 shrinking, λ = 0 steady).
pub fn s1_chart_rhs(lambda: f64, t: f64, e: &[f64; 4]) -> [f64; 4] {
    let [e0, e1, e2, e3] = *e;
    [
        -e1 * e1 - 4.0 * e2 / t - 2.0 * e2 * e2 - lambda,
        -2.0 * e1 / t - e0 * e1 - lambda,
        (-2.0 * e2 - e0 + 2.0 * e3) / t - e0 * e2 + e3 * e3 - lambda,
        -(e2 + e3) / t - e2 * e3,
    ]
}

/// Coordinate chart for the integration variables `η = (η₀, η₁, η₂, η₃)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Chart {
    /// `η = (ξ, L₁, L₂, R)`.
    Raw,
    /// S¹ orbit at `t = 0`: `ξ = 2/t + η₀`, `L₁ = η₁`, `L₂ = 1/t + η₂`, `R = 1/t + η₃`.
    S1Orbit,
    /// S² orbit at `t = orbit_time`, `s = orbit_time − t`:
    /// `ξ = s − 1/s − η₀`, `L₁ = −1/s − η₁`, `L₂ = −η₂`, `R = η₃`.
    /// The Gaussian cylinder is `η = (0, 0, 0, 1)` and is kept exactly by the
    /// chart field in floating point.
    S2Orbit { orbit_time: f64 },
}

impl Chart {
    /// Distance from the chart's singular orbit (or `t` itself for `Raw`).
    pub fn orbit_distance(&self, t: f64) -> f64 {
        match *self {
            Chart::Raw | Chart::S1Orbit => t,
            Chart::S2Orbit { orbit_time } => orbit_time - t,
        }
    }

    /// Derivative of `η` with respect to arc length `t`.
    pub fn rhs(&self, t: f64, e: &[f64; 4]) -> [f64; 4] {
        match *self {
            Chart::Raw => soliton_rhs(&SolitonState::from_array(*e)),
            Chart::S1Orbit => s1_chart_rhs(1.0, t, e),
            Chart::S2Orbit { orbit_time } => {
                let s = orbit_time - t;
                let [e0, e1, e2, e3] = *e;
                // d/dt = −d/ds
                [
                    2.0 * e1 / s + e1 * e1 + 2.0 * e2 * e2,
                    (e0 + e1) / s + e0 * e1 - s * e1,
                    e2 / s + (e0 - s) * e2 + (1.0 - e3 * e3),
                    e2 * e3,
                ]
            }
        }
    }

    pub fn to_state(&self, t: f64, e: &[f64; 4]) -> SolitonState {
        match *self {
            Chart::Raw => SolitonState::from_array(*e),
            Chart::S1Orbit => {
                let inv = 1.0 / t;
                SolitonState::new(2.0 * inv + e[0], e[1], inv + e[2], inv + e[3])
            }
            Chart::S2Orbit { orbit_time } => {
                let s = orbit_time - t;
                let inv = 1.0 / s;
                SolitonState::new(s - inv - e[0], -inv - e[1], -e[2], e[3])
            }
        }
    }

    pub fn from_state(&self, t: f64, s: &SolitonState) -> [f64; 4] {
        match *self {
            Chart::Raw => s.to_array(),
            Chart::S1Orbit => {
                let inv = 1.0 / t;
                [s.xi - 2.0 * inv, s.l1, s.l2 - inv, s.r - inv]
            }
            Chart::S2Orbit { orbit_time } => {
                let d = orbit_time - t;
                let inv = 1.0 / d;
                [d - inv - s.xi, -inv - s.l1, -s.l2, s.r]
            }
        }
    }

    /// Curvature eigenvalues with the pole terms cancelled analytically.
    pub fn curvature(&self, t: f64, e: &[f64; 4]) -> CurvatureEigenvalues {
        let [e0, e1, e2, e3] = *e;
        match *self {
            Chart::Raw => curvature_eigs(&SolitonState::from_array(*e)),
            Chart::S1Orbit => CurvatureEigenvalues {
                k_t1: (2.0 / t + e0) * e1 + 1.0 - e1 * e1,
                k_s: (2.0 / t) * (e3 - e2) + e3 * e3 - e2 * e2,
                k_m: -e1 * (1.0 / t + e2),
                k_t2: (e0 - 2.0 * e3) / t + e0 * e2 + 1.0 - e3 * e3 - e2 * e2,
            },
            Chart::S2Orbit { orbit_time } => {
                let s = orbit_time - t;
                CurvatureEigenvalues {
                    k_t1: (e0 - e1) / s + e0 * e1 - s * e1 - e1 * e1,
                    k_s: e3 * e3 - e2 * e2,
                    k_m: -(1.0 / s + e1) * e2,
                    k_t2: (1.0 / s - s + e0) * e2 + (1.0 - e3 * e3) - e2 * e2,
                }
            }
        }
    }

    /// `u′(t) = L₁ + 2L₂ − ξ`.
    pub fn potential_rate(&self, t: f64, e: &[f64; 4]) -> f64 {
        match *self {
            Chart::Raw | Chart::S1Orbit => e[1] + 2.0 * e[2] - e[0],
            Chart::S2Orbit { orbit_time } => e[0] - e[1] - 2.0 * e[2] - (orbit_time - t),
        }
    }

    /// Scaled variables with the leading poles divided out.
    pub fn scaled(&self, t: f64, e: &[f64; 4]) -> ScaledState {
        match *self {
            Chart::S1Orbit => {
                let den = 1.0 + t * e[3];
                ScaledState::new(e[1], (1.0 + t * e[2]) / den, den / (2.0 + t * e[0]), t / den)
            }
            _ => {
                let s = self.to_state(t, e);
                ScaledState::new(s.l1, s.l2 / s.r, s.r / s.xi, 1.0 / s.r)
            }
        }
    }
}

/// A trajectory in chart variables.
#[derive(Debug, Clone)]
pub struct ChartTrajectory {
    pub chart: Chart,
    pub traj: Trajectory<4>,
}

impl ChartTrajectory {
    pub fn new(chart: Chart, traj: Trajectory<4>) -> Self {
        Self { chart, traj }
    }

    pub fn state_at(&self, t: f64) -> SolitonState {
        self.chart.to_state(t, &self.traj.eval(t))
    }

    pub fn curvature_at(&self, t: f64) -> CurvatureEigenvalues {
        self.chart.curvature(t, &self.traj.eval(t))
    }

    pub fn scaled_at(&self, t: f64) -> ScaledState {
        self.chart.scaled(t, &self.traj.eval(t))
    }

    /// `(t, state)` at every stored sample.
    pub fn samples(&self) -> impl Iterator<Item = (f64, SolitonState)> + '_ {
        self.traj.times().iter().zip(self.traj.states()).map(|(&t, e)| (t, self.chart.to_state(t, e)))
    }

    /// `(t, eigenvalues)` at every stored sample.
    pub fn curvature_samples(&self) -> impl Iterator<Item = (f64, CurvatureEigenvalues)> + '_ {
        self.traj.times().iter().zip(self.traj.states()).map(|(&t, e)| (t, self.chart.curvature(t, e)))
    }

    /// Locates a zero of a function of the soliton state along the trajectory.
    pub fn locate<G>(&self, g: G, which: EventSide) -> Result<(f64, SolitonState), EventError>
    where
        G: Fn(&SolitonState) -> f64,
    {
        let chart = self.chart;
        let (t, e) = locate_event(&self.traj, |t, e| g(&chart.to_state(t, e)), which)?;
        Ok((t, chart.to_state(t, &e)))
    }

    pub fn t_start(&self) -> f64 {
        self.traj.t_start()
    }

    pub fn t_end(&self) -> f64 {
        self.traj.t_end()
    }
}
