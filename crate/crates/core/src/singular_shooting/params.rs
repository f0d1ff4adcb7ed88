use serde::{Deserialize, Serialize};

use super::ShootError;
use crate::ode_core::IntegratorConfig;

/// Free parameter of the S¹-orbit problem: `R = 1/t + δ₁t + O(t³)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct S1ShootParam {
    pub delta1: f64,
}

/// Free parameters of the S²-orbit problem: `−ξ = 1/s + δ₂s + O(s³)`, `R(T) = δ₃`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct S2ShootParam {
    pub delta2: f64,
    pub delta3: f64,
}

impl S1ShootParam {
    pub fn new(delta1: f64) -> Self {
        Self { delta1 }
    }

    /// Solitons have δ₁ ≥ 0.
    pub fn check(&self, exploratory: bool) -> Result<(), ShootError> {
        if !self.delta1.is_finite() || (!exploratory && self.delta1 < 0.0) {
            return Err(ShootError::Inadmissible { name: "delta1", value: self.delta1 });
        }
        Ok(())
    }
}

impl S2ShootParam {
    pub fn new(delta2: f64, delta3: f64) -> Self {
        Self { delta2, delta3 }
    }

    /// Solitons have δ₂ ≥ −1 and δ₃ ≥ 0.
    pub fn check(&self, exploratory: bool) -> Result<(), ShootError> {
        if !self.delta2.is_finite() || (!exploratory && self.delta2 < -1.0) {
            return Err(ShootError::Inadmissible { name: "delta2", value: self.delta2 });
        }
        if !self.delta3.is_finite() || (!exploratory && self.delta3 < 0.0) {
            return Err(ShootError::Inadmissible { name: "delta3", value: self.delta3 });
        }
        Ok(())
    }
}

/// Settings shared by all shots.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShootConfig {
    pub integrator: IntegratorConfig,
    /// Nominal series handoff distance from either orbit.
    pub t_eps: f64,
    /// Longest arc length integrated before giving up on the event.
    pub span: f64,
    /// Arc-length coordinate of the S² orbit. Shots are autonomous, so this
    /// only shifts the time axis of S²-side trajectories.
    pub s2_orbit_time: f64,
    /// Skip the admissibility checks δ₁ ≥ 0, δ₂ ≥ −1, δ₃ ≥ 0.
    pub exploratory: bool,
}

impl Default for ShootConfig {
    fn default() -> Self {
        Self {
            integrator: IntegratorConfig::default(),
            t_eps: 1e-4,
            span: 1e3,
            s2_orbit_time: 0.0,
            exploratory: false,
        }
    }
}

impl ShootConfig {
    /// Handoff distance on the S¹ side, shrunk for large δ₁ so that the
    /// series stays inside its natural scale `1/√δ₁`.
    pub fn s1_handoff(&self, delta1: f64) -> f64 {
        self.t_eps * (1.0 / delta1.abs().sqrt()).min(1.0)
    }

    /// Handoff distance on the S² side, shrunk by the scale of δ₂ and δ₃.
    pub fn s2_handoff(&self, p: &S2ShootParam) -> f64 {
        let kappa = 1.0f64.max(p.delta3.abs()).max(p.delta2.abs().sqrt());
        self.t_eps / kappa
    }
}
