use serde::{Deserialize, Serialize};

/// First-order soliton variables on a principal orbit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolitonState {
    pub xi: f64,
    pub l1: f64,
    pub l2: f64,
    pub r: f64,
}

impl SolitonState {
    pub const fn new(xi: f64, l1: f64, l2: f64, r: f64) -> Self {
        Self { xi, l1, l2, r }
    }

    pub fn from_array(a: [f64; 4]) -> Self {
        Self::new(a[0], a[1], a[2], a[3])
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.xi, self.l1, self.l2, self.r]
    }

    pub fn is_finite(&self) -> bool {
        self.to_array().iter().all(|v| v.is_finite())
    }
}

/// `(ξ′, L₁′, L₂′, R′)` of the shrinking soliton system.
pub fn soliton_rhs(s: &SolitonState) -> [f64; 4] {
    [
        -s.l1 * s.l1 - 2.0 * s.l2 * s.l2 - 1.0,
        -s.xi * s.l1 - 1.0,
        -s.xi * s.l2 + s.r * s.r - 1.0,
        -s.l2 * s.r,
    ]
}

/// Eigenvalues of the curvature operator on Λ².
///
/// Multiplicities are (1, 1, 2, 2). The formulas use the soliton equations,
/// so `k_t1` and `k_t2` are curvatures only along actual solutions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvatureEigenvalues {
    /// −f₁″/f₁
    pub k_t1: f64,
    /// (1 − f₂′²)/f₂²
    pub k_s: f64,
    /// −f₁′f₂′/(f₁f₂)
    pub k_m: f64,
    /// −f₂″/f₂
    pub k_t2: f64,
}

impl CurvatureEigenvalues {
    pub fn to_array(self) -> [f64; 4] {
        [self.k_t1, self.k_s, self.k_m, self.k_t2]
    }

    pub fn min(&self) -> f64 {
        self.to_array().into_iter().fold(f64::INFINITY, f64::min)
    }

    /// Scalar curvature, twice the trace of the curvature operator. The round
    /// sphere of sectional curvature 1/3 has scalar curvature 4.
    pub fn scalar_curvature(&self) -> f64 {
        2.0 * (self.k_t1 + self.k_s + 2.0 * self.k_m + 2.0 * self.k_t2)
    }

    pub const NAMES: [&'static str; 4] = ["k_t1", "k_s", "k_m", "k_t2"];
}

pub fn curvature_eigs(s: &SolitonState) -> CurvatureEigenvalues {
    CurvatureEigenvalues {
        k_t1: s.xi * s.l1 + 1.0 - s.l1 * s.l1,
        k_s: s.r * s.r - s.l2 * s.l2,
        k_m: -s.l1 * s.l2,
        k_t2: s.xi * s.l2 + 1.0 - s.r * s.r - s.l2 * s.l2,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn round_meet() -> SolitonState {
        SolitonState::new(0.0, -(2.0f64 / 3.0).sqrt(), 1.0 / 6.0f64.sqrt(), 1.0 / 2.0f64.sqrt())
    }

    #[test]
    fn rhs_examples() {
        assert_eq!(soliton_rhs(&SolitonState::new(0.0, 0.0, 0.0, 1.0)), [-1.0, -1.0, 0.0, 0.0]);
        assert_eq!(soliton_rhs(&SolitonState::new(1.0, 1.0, 1.0, 1.0)), [-4.0, -2.0, -1.0, -1.0]);
        let d = soliton_rhs(&round_meet());
        let expect = [-2.0, -1.0, -0.5, -1.0 / (2.0 * 3.0f64.sqrt())];
        for i in 0..4 {
            assert_abs_diff_eq!(d[i], expect[i], epsilon = 1e-15);
        }
    }

    #[test]
    fn round_sphere_curvatures() {
        let k = curvature_eigs(&round_meet());
        for v in k.to_array() {
            assert_abs_diff_eq!(v, 1.0 / 3.0, epsilon = 1e-15);
        }
        assert_abs_diff_eq!(k.scalar_curvature(), 4.0, epsilon = 1e-14);
    }

    #[test]
    fn gaussian_curvatures() {
        let k = curvature_eigs(&SolitonState::new(0.0, -1.0, 0.0, 1.0));
        assert_eq!(k.to_array(), [0.0, 1.0, 0.0, 0.0]);
        assert_eq!(k.scalar_curvature(), 2.0);
    }
}
