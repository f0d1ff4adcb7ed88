//! Initial metrics for the pancake ancient solution.
//!
//! A metric `dr² + f₁(r)²dθ² + f₂(r)²g_{S²}` on `[0, L+1]`: a round cap
//! `f₂ = sin r`, `f₁ = L` near the S² orbit at `r = 0`, a flat neck
//! `f₁ = L + 1 − r`, `f₂ = 1` that closes up at the S¹ orbit `r = L + 1`, and
//! polynomial blends in between chosen so that every curvature eigenvalue is
//! non-negative.

mod curvature;
mod profile;
mod report;

pub use curvature::{eigenvalues_at, profile_curvature, CurvatureSample, ProfileCurvature};
pub use profile::{build_profile, BlendParams, Jet, OrbitResiduals, PancakeProfile, Region, MIN_GRID, MIN_LENGTH};
pub use report::{idealized_volume, profile_report, ProfileReport};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PancakeError {
    #[error("neck length {0} is below the supported minimum 10")]
    LengthTooSmall(f64),
    #[error("grid of {got} points is too coarse (need at least {min})")]
    GridTooCoarse { got: usize, min: usize },
    #[error("blend is infeasible: {0}")]
    BlendInfeasible(String),
}
