use serde::{Deserialize, Serialize};

/// State of the steady (λ = 0) system with `L₁ ≡ 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BryantState {
    pub xi: f64,
    pub l2: f64,
    pub r: f64,
}

/// `(ξ′, L₂′, R′) = (−2L₂², −ξL₂ + R², −L₂R)`.
pub fn bryant_rhs(s: &BryantState) -> [f64; 3] {
    [-2.0 * s.l2 * s.l2, -s.xi * s.l2 + s.r * s.r, -s.l2 * s.r]
}

/// Phase-plane field of the steady system in `x = L₂/R`, `y = R/ξ`.
pub fn bryant_xy_rhs(x: f64, y: f64) -> (f64, f64) {
    (-x + y + y * x * x, -x * y * y + 2.0 * x * x * y * y * y)
}
