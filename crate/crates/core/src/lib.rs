//! Numerics for SO(2)×SO(3)-invariant gradient shrinking Ricci solitons on S⁴.
//!
//! The crate integrates the reduced soliton equations from both singular
//! orbits, matches the two shots at the orbit where ξ vanishes, and carries a
//! set of monitors for curvature signs, reference solutions (round sphere,
//! Gaussian ℝ²×S², Bryant soliton) and the pancake initial metrics.

pub mod bryant_reference;
pub mod estimate_verifier;
pub mod ode_core;
pub mod pancake_builder;
pub mod singular_shooting;
pub mod soliton_models;
