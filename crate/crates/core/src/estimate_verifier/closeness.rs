use serde::{Deserialize, Serialize};

use super::MonitorError;
use crate::ode_core::{adaptive_quadrature, EventSide};
use crate::soliton_models::ChartTrajectory;

/// Closeness to the Gaussian at ξ = 10 required by the exact argument.
/// Rigor-scale, far below double precision.
pub const RIGOR_B2: f64 = 1e-146;

/// Deviations from the Gaussian at the first orbit with ξ = 10, where the
/// Gaussian has `L₁ = −1/(5+√26)`, `L₂ = 0`, `R = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussianCloseness {
    pub t: f64,
    pub l1_dev: f64,
    pub r_dev: f64,
    pub l2_dev: f64,
    pub rigor_threshold: f64,
}

impl GaussianCloseness {
    pub fn max_dev(&self) -> f64 {
        self.l1_dev.max(self.r_dev).max(self.l2_dev)
    }
}

pub fn gaussian_closeness_at_xi10(path: &ChartTrajectory) -> Result<GaussianCloseness, MonitorError> {
    let (t, s) =
        path.locate(|s| s.xi - 10.0, EventSide::First).map_err(|_| MonitorError::EventNotReached { target: 10.0 })?;
    let l1 = -1.0 / (5.0 + 26.0f64.sqrt());
    Ok(GaussianCloseness {
        t,
        l1_dev: (s.l1 - l1).abs(),
        r_dev: (s.r - 1.0).abs(),
        l2_dev: s.l2.abs(),
        rigor_threshold: RIGOR_B2,
    })
}

/// `∫_{1/40}^{1/2} [s/(1/40 + s)² − s − 1/(4s)] ds` two ways.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Delta3Integral {
    pub closed_form: f64,
    pub quadrature: f64,
    pub quadrature_error: f64,
    /// `∫ s/(1/40 + s)² ds = ln 10.5 − 19/42`, bounded below by 1.89.
    pub first_term: f64,
}

impl Delta3Integral {
    pub fn exceeds_one(&self) -> bool {
        self.closed_form > 1.0 && self.quadrature > 1.0
    }
}

pub fn delta3_integral_check() -> Delta3Integral {
    let (a, lo, hi) = (1.0 / 40.0, 1.0 / 40.0, 0.5);
    let anti = |s: f64| (a + s).ln() + a / (a + s) - 0.5 * s * s - 0.25 * s.ln();
    let first = |s: f64| (a + s).ln() + a / (a + s);
    let integrand = |s: f64| s / ((a + s) * (a + s)) - s - 0.25 / s;
    let (quadrature, quadrature_error) = adaptive_quadrature(integrand, lo, hi, 1e-13);
    Delta3Integral { closed_form: anti(hi) - anti(lo), quadrature, quadrature_error, first_term: first(hi) - first(lo) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::singular_shooting::{shoot_s1_to_xi, shoot_s2_to_xi, S1ShootParam, S2ShootParam, ShootConfig};

    #[test]
    fn integral_two_ways() {
        let d = delta3_integral_check();
        let by_hand = 10.5f64.ln() - 19.0 / 42.0 - (0.125 - 1.0 / 3200.0) - 20.0f64.ln() / 4.0;
        assert!((d.closed_form - by_hand).abs() < 1e-14);
        assert!((d.closed_form - 1.025_373_736_4).abs() < 1e-9);
        assert!((d.quadrature - d.closed_form).abs() < 1e-10);
        assert!((d.first_term - 1.898_99).abs() < 1e-5 && d.first_term >= 1.89);
        assert!(d.exceeds_one());
    }

    #[test]
    fn exact_gaussian() {
        let shot = shoot_s2_to_xi(&S2ShootParam::new(-1.0, 1.0), 10.0, &ShootConfig::default()).unwrap();
        let c = gaussian_closeness_at_xi10(&shot.path).unwrap();
        assert!(c.max_dev() < 1e-8, "{c:?}");
        assert_eq!(c.rigor_threshold, 1e-146);
    }

    #[test]
    fn round_sphere_matches_closed_form() {
        let shot = shoot_s1_to_xi(&S1ShootParam::new(1.0 / 18.0), 10.0, &ShootConfig::default()).unwrap();
        let c = gaussian_closeness_at_xi10(&shot.path).unwrap();
        // ξ = (2cot a − tan a)/√3 with a = t/√3, decreasing on (0, π/2)
        let xi = |a: f64| (2.0 / a.tan() - a.tan()) / 3.0f64.sqrt();
        let (mut lo, mut hi) = (1e-6, 1.0);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if xi(mid) > 10.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let a = 0.5 * (lo + hi);
        let l1 = -a.tan() / 3.0f64.sqrt();
        let expected = (l1 + 1.0 / (5.0 + 26.0f64.sqrt())).abs();
        assert!((c.l1_dev - expected).abs() < 1e-9, "{} vs {expected}", c.l1_dev);
        assert!((c.t - 3.0f64.sqrt() * a).abs() < 1e-9);
        assert!(c.l1_dev > 0.01);
    }

    #[test]
    fn large_delta1_is_close_to_gaussian() {
        let shot = shoot_s1_to_xi(&S1ShootParam::new(1e4), 10.0, &ShootConfig::default()).unwrap();
        let c = gaussian_closeness_at_xi10(&shot.path).unwrap();
        assert!(c.max_dev() < 0.1, "{c:?}");
    }
}
