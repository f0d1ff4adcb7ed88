use serde::{Deserialize, Serialize};

use super::{MonitorError, Segment};
use crate::bryant_reference::{bryant_orbit_trajectory, SMALLTIME_END};
use crate::ode_core::{integrate, Trajectory};
use crate::singular_shooting::{s1_series_eta, shoot_s1_to_xi, S1ShootParam, ShootConfig, ShootError};
use crate::soliton_models::{Chart, ScaledState};

/// Smallest δ₁ accepted by [`rescaled_bryant_compare`].
pub const MIN_RESCALE_DELTA1: f64 = 100.0;

/// Closeness used by the exact argument, and the matching lower bound
/// δ₁ > δ⁻¹²⁰ on the S¹ parameter. Rigor-scale, not reachable in floating point.
const RIGOR_DELTA: f64 = 1e-25;
const RIGOR_DELTA1_EXPONENT: f64 = -120.0;

/// One-sided S¹ shot for large δ₁, followed to the orbit where `yz = 1/ξ = 1/10`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PancakeTraceReport {
    pub delta1: f64,
    pub event_t: f64,
    /// Scaled state `(w, x, y, z)` at the event.
    pub at_event: ScaledState,
    /// `D + 1` with `D = w/y − w²`.
    pub d_plus_one: f64,
    pub r_dev: f64,
    pub l2_dev: f64,
    /// Minimum of `x` over the stored samples up to the event.
    pub x_min: f64,
    /// Minimum of `E = z²·k_t2` over the stored samples up to the event.
    pub e_min: f64,
    /// Smallest distance of `(w, x, y, z)` to the critical line `(0, 0, 0, z)`, `z ∈ [0, 1]`.
    pub critical_line_distance: f64,
    pub rigor_delta: f64,
    pub rigor_delta1_exponent: f64,
}

pub fn large_delta1_trace(d1: f64, cfg: &ShootConfig) -> Result<PancakeTraceReport, MonitorError> {
    if !(d1 > 0.0 && d1.is_finite()) {
        return Err(MonitorError::OutOfRange { name: "delta1", value: d1 });
    }
    let shot = shoot_s1_to_xi(&S1ShootParam::new(d1), 10.0, cfg).map_err(|e| match e {
        ShootError::EventNotReached { .. } => MonitorError::EventNotReached { target: 10.0 },
        other => other.into(),
    })?;
    let path = &shot.path;
    let seg = Segment::of_shot(&shot);

    let (mut x_min, mut e_min, mut line) = (f64::INFINITY, f64::INFINITY, f64::INFINITY);
    for t in seg.sample_times(1) {
        let s = path.scaled_at(t);
        let k_t2 = path.curvature_at(t).k_t2;
        x_min = x_min.min(s.x);
        e_min = e_min.min(s.z * s.z * k_t2);
        let dz = (s.z - s.z.clamp(0.0, 1.0)).abs();
        line = line.min((s.w * s.w + s.x * s.x + s.y * s.y + dz * dz).sqrt());
    }

    let ev = path.scaled_at(shot.event_time);
    let st = shot.event_state;
    Ok(PancakeTraceReport {
        delta1: d1,
        event_t: shot.event_time,
        at_event: ev,
        d_plus_one: ev.w / ev.y - ev.w * ev.w + 1.0,
        r_dev: (st.r - 1.0).abs(),
        l2_dev: st.l2.abs(),
        x_min,
        e_min,
        critical_line_distance: line,
        rigor_delta: RIGOR_DELTA,
        rigor_delta1_exponent: RIGOR_DELTA1_EXPONENT,
    })
}

/// Deviation of the rescaled shot `η̃(τ) = p·η(pτ)`, `p = 1/√δ₁`, from the
/// steady δ₁ = 1 trajectory on `[t_eps, 1/9]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RescaledComparison {
    pub delta1: f64,
    pub p: f64,
    pub t_eps: f64,
    /// `(τ, |η̃(τ) − η_ref(τ)|∞)` on the comparison grid.
    pub profile: Vec<(f64, f64)>,
    pub sup_deviation: f64,
    /// `sup |η̃ − η_ref|∞ / (p²τ)`.
    pub c_obs: f64,
}

/// Compares `p·η(pτ)` from `shot` with `reference` on `[t_eps, 1/9]`.
/// Both trajectories are in S¹-chart variables.
pub fn rescaled_deviation(shot: &Trajectory<4>, p: f64, reference: &Trajectory<4>, t_eps: f64) -> RescaledComparison {
    let n = 2000;
    let mut taus: Vec<f64> = reference.times().iter().copied().filter(|&t| t >= t_eps && t <= SMALLTIME_END).collect();
    taus.extend((0..=n).map(|i| t_eps + (SMALLTIME_END - t_eps) * i as f64 / n as f64));
    taus.sort_by(f64::total_cmp);
    taus.dedup();

    let p2 = p * p;
    let mut profile = Vec::with_capacity(taus.len());
    let (mut sup, mut c_obs) = (0.0f64, 0.0f64);
    for tau in taus {
        let e = shot.eval(p * tau);
        let r = reference.eval(tau);
        let dev = (0..4).map(|i| (p * e[i] - r[i]).abs()).fold(0.0, f64::max);
        sup = sup.max(dev);
        c_obs = c_obs.max(dev / (p2 * tau));
        profile.push((tau, dev));
    }
    RescaledComparison { delta1: 1.0 / p2, p, t_eps, profile, sup_deviation: sup, c_obs }
}

/// Rescaled one-sided shot against the steady soliton from its S¹ orbit.
pub fn rescaled_bryant_compare(d1: f64, cfg: &ShootConfig) -> Result<RescaledComparison, MonitorError> {
    if !(d1 >= MIN_RESCALE_DELTA1 && d1.is_finite()) {
        return Err(MonitorError::OutOfRange { name: "delta1", value: d1 });
    }
    let p = 1.0 / d1.sqrt();
    let t_eps = cfg.t_eps;
    let t0 = cfg.s1_handoff(d1);
    let chart = Chart::S1Orbit;
    let shot = integrate(|t, e| chart.rhs(t, e), s1_series_eta(&S1ShootParam::new(d1), t0), t0, p * SMALLTIME_END, &cfg.integrator)?;
    shot.require_complete()?;
    let reference = bryant_orbit_trajectory(1.0, t_eps, SMALLTIME_END, &cfg.integrator)?;
    Ok(rescaled_deviation(&shot, p, &reference, t_eps))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trace_at_one_hundred() {
        let r = large_delta1_trace(1e2, &ShootConfig::default()).unwrap();
        assert!(r.x_min >= -1e-8, "{r:?}");
        assert!(r.e_min >= -1e-6, "{r:?}");
        assert!((r.at_event.y * r.at_event.z - 0.1).abs() < 1e-9);
        assert!(r.critical_line_distance >= 0.0);
    }

    #[test]
    fn trends_in_delta1() {
        let reps: Vec<_> = [1e2, 1e3, 1e4].iter().map(|&d| large_delta1_trace(d, &ShootConfig::default()).unwrap()).collect();
        for w in reps.windows(2) {
            assert!(w[1].d_plus_one.abs() < w[0].d_plus_one.abs(), "{:?}", reps);
            assert!(w[1].r_dev + w[1].l2_dev < w[0].r_dev + w[0].l2_dev);
        }
        assert!((reps[2].at_event.z - 1.0).abs() < 0.1, "{:?}", reps[2].at_event);
    }

    #[test]
    fn rejects_bad_delta1() {
        assert!(matches!(large_delta1_trace(0.0, &ShootConfig::default()), Err(MonitorError::OutOfRange { .. })));
        assert!(matches!(rescaled_bryant_compare(10.0, &ShootConfig::default()), Err(MonitorError::OutOfRange { .. })));
    }

    #[test]
    fn reference_against_itself() {
        let cfg = ShootConfig::default();
        let r = bryant_orbit_trajectory(1.0, cfg.t_eps, SMALLTIME_END, &cfg.integrator).unwrap();
        let c = rescaled_deviation(&r, 1.0, &r, cfg.t_eps);
        assert_eq!(c.sup_deviation, 0.0);
        assert_eq!(c.c_obs, 0.0);
    }

    #[test]
    fn deviation_scales_with_p_squared() {
        let cfg = ShootConfig::default();
        let a = rescaled_bryant_compare(1e4, &cfg).unwrap();
        let b = rescaled_bryant_compare(1e6, &cfg).unwrap();
        assert!(a.c_obs < 1e6 && a.c_obs > 0.0);
        let ratio = a.c_obs / b.c_obs;
        assert!((0.5..2.0).contains(&ratio), "{} {}", a.c_obs, b.c_obs);
    }
}
