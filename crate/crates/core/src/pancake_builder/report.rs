use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::curvature::profile_curvature;
use super::profile::PancakeProfile;
use super::PancakeError;
use crate::ode_core::gauss_legendre_8;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProfileReport {
    pub length: f64,
    /// `∫ 8π² f₁ f₂² dr` over `[0, L+1]`.
    pub volume: f64,
    /// The same integral over the neck `[blend end, L+1]`.
    pub neck_volume: f64,
    /// Volume of the unblended model with `f₂ = sin(πr/2)` on `[0, 1]`.
    pub idealized_volume: f64,
    /// Lower and upper bound on the diameter.
    pub diameter: (f64, f64),
    pub min_eigenvalue: f64,
    pub scalar_range: (f64, f64),
}

/// `8π²(L/2 + L²/2)`: cap `f₁ = L`, `f₂ = sin(πr/2)` on `[0, 1]`, then
/// `f₁ = L + 1 − r`, `f₂ = 1`.
pub fn idealized_volume(length: f64) -> f64 {
    8.0 * PI * PI * 0.5 * length * (1.0 + length)
}

pub fn profile_report(p: &PancakeProfile) -> Result<ProfileReport, PancakeError> {
    let k = profile_curvature(p)?;
    let density = |r: f64| {
        let j = p.jet(r);
        8.0 * PI * PI * j.f1[0] * j.f2[0] * j.f2[0]
    };
    let (a, b, end) = (p.blend.start(), p.blend.end(), p.end());
    let cap = gauss_legendre_8(density, 0.0, a, 16);
    let blend = gauss_legendre_8(density, a, b, 16);
    let neck = gauss_legendre_8(density, b, end, 16);
    let max_f1 = p.f1.iter().copied().fold(0.0, f64::max);
    let max_f2 = p.f2.iter().copied().fold(0.0, f64::max);
    Ok(ProfileReport {
        length: p.length,
        volume: cap + blend + neck,
        neck_volume: neck,
        idealized_volume: idealized_volume(p.length),
        diameter: (end, end + PI * max_f2 + PI * max_f1),
        min_eigenvalue: k.min_eigenvalue.0,
        scalar_range: (k.scalar_min.0, k.scalar_max.0),
    })
}
