//! Vector fields and algebraic quantities of the reduced soliton equations.
//!
//! The shrinking soliton equations are normalized to λ = 1. States are
//! `(ξ, L₁, L₂, R)` with `Lᵢ = fᵢ′/fᵢ`, `R = 1/f₂` and `ξ = L₁ + 2L₂ − u′`.

mod bryant;
mod charts;
mod profile;
mod scaled;
mod state;

pub use bryant::{bryant_rhs, bryant_xy_rhs, BryantState};
pub use charts::{s1_chart_rhs, Chart, ChartTrajectory};
pub use profile::{reconstruct_profile, second_order_residual, PotentialAnchor, Profile, ProfileNormalization};
pub use scaled::{
    from_scaled, gauge_quantities, scaled_jacobian, scaled_rhs, to_scaled, GaugeQuantities, ScaledState,
};
pub use state::{curvature_eigs, soliton_rhs, CurvatureEigenvalues, SolitonState};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("ξ = 0: scaled variables are undefined")]
    DegenerateXi,
    #[error("z = {0} must be positive")]
    DegenerateZ(f64),
    #[error("y = 0: gauge quantities are undefined")]
    UndefinedGauge,
    #[error("R = {r} ≤ 0 at t = {t}: not a principal orbit")]
    NonPrincipal { t: f64, r: f64 },
    #[error("profile needs at least 5 grid points, got {0}")]
    GridTooCoarse(usize),
    #[error("normalization {0} does not apply to this chart")]
    WrongNormalization(&'static str),
}
