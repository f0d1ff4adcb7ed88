use serde::{Deserialize, Serialize};

use super::bounds::Margin;
use super::BryantError;
use crate::ode_core::{integrate, IntegratorConfig, Trajectory};
use crate::singular_shooting::s1_series_eta_lambda;
use crate::soliton_models::s1_chart_rhs;

pub const SMALLTIME_END: f64 = 1.0 / 9.0;

/// Steady system from its S¹ orbit in the S¹ chart (`L₁ ≡ 0`), started
/// at `t_eps` from the odd series with leading terms `η = (8δ₁t, 0, −2δ₁t, δ₁t)`.
pub fn bryant_orbit_trajectory(
    delta1: f64,
    t_eps: f64,
    t_end: f64,
    cfg: &IntegratorConfig,
) -> Result<Trajectory<4>, BryantError> {
    let start = s1_series_eta_lambda(delta1, 0.0, t_eps);
    let traj = integrate(|t, e| s1_chart_rhs(0.0, t, e), start, t_eps, t_end, cfg)?;
    traj.require_complete()?;
    Ok(traj)
}

/// `(x, y, z) = (L₂/R, R/ξ, 1/R)` from S¹-chart variables, poles cancelled.
pub fn orbit_xy(t: f64, e: &[f64; 4]) -> (f64, f64, f64) {
    let den = 1.0 + t * e[3];
    ((1.0 + t * e[2]) / den, den / (2.0 + t * e[0]), t / den)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SmallTimeReport {
    pub t_eps: f64,
    /// `z − sin(√6t)/√6`, `t − z`, `x − (1 − 2tan²(√(3/2)t))`, `1 − 3t²e^(−9t²) − x`.
    pub margins: Vec<Margin>,
    pub z_end: f64,
    pub x_end: f64,
}

impl SmallTimeReport {
    pub fn min_margin(&self) -> f64 {
        self.margins.iter().map(|m| m.min).fold(f64::INFINITY, f64::min)
    }
}

/// Margins of the small-time bounds on `z` and `x` for δ₁ = 1 over
/// `[t_eps, 1/9]`.
pub fn bryant_smalltime(t_eps: f64, cfg: &IntegratorConfig) -> Result<SmallTimeReport, BryantError> {
    let traj = bryant_orbit_trajectory(1.0, t_eps, SMALLTIME_END, cfg)?;
    let n = 4000;
    let ts: Vec<f64> = traj
        .times()
        .iter()
        .copied()
        .chain((0..=n).map(|i| t_eps + (SMALLTIME_END - t_eps) * i as f64 / n as f64))
        .collect();
    let xz = |t: f64| {
        let (x, _, z) = orbit_xy(t, &traj.eval(t));
        (x, z)
    };
    let s6 = 6.0f64.sqrt();
    let s32 = 1.5f64.sqrt();
    let range = (t_eps, SMALLTIME_END);
    let margins = vec![
        Margin::over("z - sin(sqrt6 t)/sqrt6", range, ts.iter().copied(), |t| Some(xz(t).1 - (s6 * t).sin() / s6)),
        Margin::over("t - z", range, ts.iter().copied(), |t| Some(t - xz(t).1)),
        Margin::over("x - (1 - 2 tan^2(sqrt(3/2) t))", range, ts.iter().copied(), |t| {
            Some(xz(t).0 - (1.0 - 2.0 * (s32 * t).tan().powi(2)))
        }),
        Margin::over("1 - 3t^2 exp(-9t^2) - x", range, ts.iter().copied(), |t| {
            Some(1.0 - 3.0 * t * t * (-9.0 * t * t).exp() - xz(t).0)
        }),
    ];
    let (x_end, z_end) = xz(SMALLTIME_END);
    Ok(SmallTimeReport { t_eps, margins, z_end, x_end })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bryant_reference::{bryant_unstable_curve, DEFAULT_LAUNCH};

    #[test]
    fn bounds_at_one_ninth() {
        let r = bryant_smalltime(1e-4, &IntegratorConfig::default()).unwrap();
        let t = SMALLTIME_END;
        assert!((6.0f64.sqrt() * t).sin() / 6.0f64.sqrt() <= r.z_end && r.z_end <= t);
        let lo = 1.0 - 2.0 * (1.5f64.sqrt() * t).tan().powi(2);
        let hi = 1.0 - 3.0 * t * t * (-9.0 * t * t).exp();
        assert!(lo <= r.x_end && r.x_end <= hi, "{lo} {} {hi}", r.x_end);
        assert!(r.min_margin() >= -1e-6, "{:#?}", r.margins);
    }

    #[test]
    fn margins_vanish_at_the_orbit() {
        let r = bryant_smalltime(1e-4, &IntegratorConfig::default()).unwrap();
        for m in &r.margins {
            assert!(m.min.abs() < 1e-7, "{m:?}");
        }
    }

    #[test]
    fn start_is_consistent_under_halving() {
        let cfg = IntegratorConfig::default();
        let a = bryant_orbit_trajectory(1.0, 1e-4, 0.5, &cfg).unwrap().last_state();
        let b = bryant_orbit_trajectory(1.0, 5e-5, 0.5, &cfg).unwrap().last_state();
        for i in 0..4 {
            assert!((a[i] - b[i]).abs() < 1e-12, "{a:?} {b:?}");
        }
    }

    #[test]
    fn locus_is_independent_of_speed() {
        let cfg = IntegratorConfig::default();
        let curve = bryant_unstable_curve(DEFAULT_LAUNCH, &cfg).unwrap();
        for d1 in [1.0, 4.0] {
            let traj = bryant_orbit_trajectory(d1, 1e-4 / d1.sqrt(), 3.0 / d1.sqrt(), &cfg).unwrap();
            for (t, e) in traj.times().iter().zip(traj.states()) {
                let (x, y, _) = orbit_xy(*t, e);
                if x < 0.999 && x > 0.05 {
                    assert!((y - curve.f(x).unwrap()).abs() < 1e-7, "δ₁ = {d1}, x = {x}");
                }
            }
        }
    }
}
