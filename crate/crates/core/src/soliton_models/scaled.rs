use nalgebra::Matrix4;
use serde::{Deserialize, Serialize};

use super::{ModelError, SolitonState};

/// Scaled variables `w = L₁`, `x = L₂/R`, `y = R/ξ`, `z = 1/R`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScaledState {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl ScaledState {
    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Self { w, x, y, z }
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.w, self.x, self.y, self.z]
    }

    pub fn from_array(a: [f64; 4]) -> Self {
        Self::new(a[0], a[1], a[2], a[3])
    }
}

pub fn to_scaled(s: &SolitonState) -> Result<ScaledState, ModelError> {
    if s.xi == 0.0 {
        return Err(ModelError::DegenerateXi);
    }
    if !(s.r > 0.0) {
        return Err(ModelError::DegenerateZ(1.0 / s.r));
    }
    Ok(ScaledState { w: s.l1, x: s.l2 / s.r, y: s.r / s.xi, z: 1.0 / s.r })
}

pub fn from_scaled(s: &ScaledState) -> Result<SolitonState, ModelError> {
    if !(s.z > 0.0) {
        return Err(ModelError::DegenerateZ(s.z));
    }
    if s.y == 0.0 {
        return Err(ModelError::DegenerateXi);
    }
    Ok(SolitonState { xi: 1.0 / (s.y * s.z), l1: s.w, l2: s.x / s.z, r: 1.0 / s.z })
}

/// `(w′, x′, y′, z′)` of the scaled system.
pub fn scaled_rhs(s: &ScaledState) -> [f64; 4] {
    let ScaledState { w, x, y, z } = *s;
    [
        -w - y * z,
        -x + y - y * z * z + x * x * y,
        -x * y * y + y * y * y * (w * w * z * z + 2.0 * x * x + z * z),
        x * y * z,
    ]
}

/// Central-difference Jacobian of [`scaled_rhs`].
pub fn scaled_jacobian(s: &ScaledState, h: f64) -> Matrix4<f64> {
    let base = s.to_array();
    let mut jac = Matrix4::zeros();
    for j in 0..4 {
        let mut plus = base;
        let mut minus = base;
        plus[j] += h;
        minus[j] -= h;
        let fp = scaled_rhs(&ScaledState::from_array(plus));
        let fm = scaled_rhs(&ScaledState::from_array(minus));
        for i in 0..4 {
            jac[(i, j)] = (fp[i] - fm[i]) / (2.0 * h);
        }
    }
    jac
}

/// Gauge quantities `C = x/(y(1−z))`, `D = w/y − w²`, `E = x/y + z² − 1 − x²`.
/// `C` is `None` at `z = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaugeQuantities {
    pub c_gauge: Option<f64>,
    pub d_gauge: f64,
    pub e_gauge: f64,
}

pub fn gauge_quantities(s: &ScaledState) -> Result<GaugeQuantities, ModelError> {
    let ScaledState { w, x, y, z } = *s;
    if y == 0.0 {
        return Err(ModelError::UndefinedGauge);
    }
    let c_gauge = if z == 1.0 { None } else { Some(x / (y * (1.0 - z))) };
    Ok(GaugeQuantities { c_gauge, d_gauge: w / y - w * w, e_gauge: x / y + z * z - 1.0 - x * x })
}
