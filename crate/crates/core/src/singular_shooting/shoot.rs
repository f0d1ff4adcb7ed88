use serde::{Deserialize, Serialize};

use super::series::{s1_series_eta, s2_series_eta, MAX_SERIES_EPS};
use super::{S1ShootParam, S2ShootParam, ShootConfig, ShootError};
use crate::ode_core::{integrate_until, EventSide, Termination};
use crate::soliton_models::{Chart, ChartTrajectory, SolitonState};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    S1,
    S2,
}

/// `(L₁, L₂, R)` on the orbit where ξ = 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeetPoint {
    pub l1: f64,
    pub l2: f64,
    pub r: f64,
}

impl MeetPoint {
    pub fn from_state(s: &SolitonState) -> Self {
        Self { l1: s.l1, l2: s.l2, r: s.r }
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.l1, self.l2, self.r]
    }

    pub fn dist_inf(&self, other: &MeetPoint) -> f64 {
        let (a, b) = (self.to_array(), other.to_array());
        (0..3).map(|i| (a[i] - b[i]).abs()).fold(0.0, f64::max)
    }
}

/// Difference `S¹-side meet point − S²-side meet point`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MismatchVector {
    pub dl1: f64,
    pub dl2: f64,
    pub dr: f64,
}

impl MismatchVector {
    pub fn to_array(self) -> [f64; 3] {
        [self.dl1, self.dl2, self.dr]
    }

    pub fn norm_inf(&self) -> f64 {
        self.dl1.abs().max(self.dl2.abs()).max(self.dr.abs())
    }
}

/// One integrated shot with its terminal event.
#[derive(Debug, Clone)]
pub struct Shot {
    pub side: Side,
    pub path: ChartTrajectory,
    /// Distance from the orbit at which the series handed over.
    pub handoff: f64,
    /// Arc length of the terminal event.
    pub event_time: f64,
    /// State at the terminal event.
    pub event_state: SolitonState,
}

impl Shot {
    pub fn meet(&self) -> MeetPoint {
        MeetPoint::from_state(&self.event_state)
    }

    /// Step-point samples from the handoff up to and including the event.
    pub fn samples_to_event(&self) -> Vec<(f64, SolitonState)> {
        let dir = self.path.traj.direction();
        let mut out: Vec<_> = self.path.samples().filter(|(t, _)| (self.event_time - t) * dir > 0.0).collect();
        out.push((self.event_time, self.event_state));
        out
    }

    /// Minimum of each curvature eigenvalue `[k_t1, k_s, k_m, k_t2]` over the
    /// step points up to the event.
    pub fn curvature_minima(&self) -> [f64; 4] {
        let dir = self.path.traj.direction();
        let mut mins = [f64::INFINITY; 4];
        let events = std::iter::once((self.event_time, self.path.curvature_at(self.event_time)));
        for (_, k) in self.path.curvature_samples().filter(|(t, _)| (self.event_time - t) * dir > 0.0).chain(events) {
            for (m, v) in mins.iter_mut().zip(k.to_array()) {
                *m = m.min(v);
            }
        }
        mins
    }
}

fn finish(side: Side, path: ChartTrajectory, handoff: f64, target_xi: f64) -> Result<Shot, ShootError> {
    if path.traj.termination() != Termination::Event {
        return Err(ShootError::EventNotReached { termination: path.traj.termination(), t_end: path.t_end() });
    }
    let (event_time, event_state) = path
        .locate(|s| s.xi - target_xi, EventSide::First)
        .map_err(|_| ShootError::EventNotReached { termination: Termination::Event, t_end: path.t_end() })?;
    if !(event_state.r > 0.0) {
        return Err(ShootError::NonPrincipal { r: event_state.r });
    }
    Ok(Shot { side, path, handoff, event_time, event_state })
}

fn shoot_s1(p: &S1ShootParam, cfg: &ShootConfig, target_xi: f64) -> Result<Shot, ShootError> {
    p.check(cfg.exploratory)?;
    let t0 = cfg.s1_handoff(p.delta1);
    if !(t0 > 0.0 && t0 <= MAX_SERIES_EPS) {
        return Err(ShootError::EpsilonTooLarge(t0));
    }
    let chart = Chart::S1Orbit;
    let traj = integrate_until(
        |t, e| chart.rhs(t, e),
        s1_series_eta(p, t0),
        t0,
        t0 + cfg.span,
        &cfg.integrator,
        |t, e| chart.to_state(t, e).xi - target_xi,
    )?;
    finish(Side::S1, ChartTrajectory::new(chart, traj), t0, target_xi)
}

fn shoot_s2(p: &S2ShootParam, cfg: &ShootConfig, target_xi: f64) -> Result<Shot, ShootError> {
    p.check(cfg.exploratory)?;
    let s0 = cfg.s2_handoff(p);
    if !(s0 > 0.0 && s0 <= MAX_SERIES_EPS) {
        return Err(ShootError::EpsilonTooLarge(s0));
    }
    let orbit = cfg.s2_orbit_time;
    let chart = Chart::S2Orbit { orbit_time: orbit };
    let traj = integrate_until(
        |t, e| chart.rhs(t, e),
        s2_series_eta(p, s0),
        orbit - s0,
        orbit - s0 - cfg.span,
        &cfg.integrator,
        |t, e| chart.to_state(t, e).xi - target_xi,
    )?;
    finish(Side::S2, ChartTrajectory::new(chart, traj), s0, target_xi)
}

/// Shoots from the S¹ orbit to the first orbit with ξ = 0.
pub fn shoot_curve_point(p: &S1ShootParam, cfg: &ShootConfig) -> Result<(MeetPoint, Shot), ShootError> {
    let shot = shoot_s1(p, cfg, 0.0)?;
    Ok((shot.meet(), shot))
}

/// Shoots from the S² orbit (backwards in arc length) to the orbit with ξ = 0.
pub fn shoot_surface_point(p: &S2ShootParam, cfg: &ShootConfig) -> Result<(MeetPoint, Shot), ShootError> {
    let shot = shoot_s2(p, cfg, 0.0)?;
    Ok((shot.meet(), shot))
}

/// Shoots from the S¹ orbit until ξ first falls to `target_xi`. For large
/// targets this stops well before the ξ = 0 orbit.
pub fn shoot_s1_to_xi(p: &S1ShootParam, target_xi: f64, cfg: &ShootConfig) -> Result<Shot, ShootError> {
    shoot_s1(p, cfg, target_xi)
}

/// Shoots from the S² orbit until ξ reaches `target_xi`, continuing past the
/// ξ = 0 orbit for positive targets.
pub fn shoot_s2_to_xi(p: &S2ShootParam, target_xi: f64, cfg: &ShootConfig) -> Result<Shot, ShootError> {
    shoot_s2(p, cfg, target_xi)
}

/// Mismatch `F(δ₁, δ₂, δ₃)` between the two meet points.
pub fn mismatch(d1: f64, d2: f64, d3: f64, cfg: &ShootConfig) -> Result<MismatchVector, ShootError> {
    let (a, _) = shoot_curve_point(&S1ShootParam::new(d1), cfg)?;
    let (b, _) = shoot_surface_point(&S2ShootParam::new(d2, d3), cfg)?;
    Ok(MismatchVector { dl1: a.l1 - b.l1, dl2: a.l2 - b.l2, dr: a.r - b.r })
}

/// Central-difference derivatives of the meet points with respect to each δ,
/// with step `h·max(1, |δⱼ|)`. Column 0 is ∂/∂δ₁ of the S¹ meet point,
/// columns 1 and 2 are ∂/∂δ₂ and ∂/∂δ₃ of the S² meet point. Rows are
/// (L₁, L₂, R).
pub fn meet_point_derivatives(delta: [f64; 3], h: f64, cfg: &ShootConfig) -> Result<[[f64; 3]; 3], ShootError> {
    let meet = |d: [f64; 3], col: usize| -> Result<[f64; 3], ShootError> {
        Ok(if col == 0 {
            shoot_curve_point(&S1ShootParam::new(d[0]), cfg)?.0.to_array()
        } else {
            shoot_surface_point(&S2ShootParam::new(d[1], d[2]), cfg)?.0.to_array()
        })
    };
    let mut out = [[0.0; 3]; 3];
    for col in 0..3 {
        let step = h * delta[col].abs().max(1.0);
        let mut plus = delta;
        let mut minus = delta;
        plus[col] += step;
        minus[col] -= step;
        let (mp, mm) = (meet(plus, col)?, meet(minus, col)?);
        for row in 0..3 {
            out[row][col] = (mp[row] - mm[row]) / (2.0 * step);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn round_meet() -> MeetPoint {
        MeetPoint { l1: -(2.0f64 / 3.0).sqrt(), l2: 1.0 / 6.0f64.sqrt(), r: 1.0 / 2.0f64.sqrt() }
    }

    #[test]
    fn round_sphere_from_both_sides() {
        let cfg = ShootConfig::default();
        let (a, shot) = shoot_curve_point(&S1ShootParam::new(1.0 / 18.0), &cfg).unwrap();
        assert!(a.dist_inf(&round_meet()) < 1e-7, "{a:?}");
        let t_star = 3.0f64.sqrt() * 2.0f64.sqrt().atan();
        assert!((shot.event_time - t_star).abs() < 1e-8);
        let (b, _) = shoot_surface_point(&S2ShootParam::new(-7.0 / 9.0, 1.0 / 3.0f64.sqrt()), &cfg).unwrap();
        assert!(b.dist_inf(&round_meet()) < 1e-7, "{b:?}");
    }

    #[test]
    fn gaussian_meet_point() {
        let cfg = ShootConfig::default();
        let (m, shot) = shoot_surface_point(&S2ShootParam::new(-1.0, 1.0), &cfg).unwrap();
        assert!(m.dist_inf(&MeetPoint { l1: -1.0, l2: 0.0, r: 1.0 }) < 1e-9, "{m:?}");
        assert!((cfg.s2_orbit_time - shot.event_time - 1.0).abs() < 1e-9);
        let (p, _) = shoot_surface_point(&S2ShootParam::new(-1.0 + 1e-3, 1.0), &cfg).unwrap();
        let d = p.dist_inf(&MeetPoint { l1: -1.0, l2: 0.0, r: 1.0 });
        assert!(d > 0.0 && d < 1e-2, "{d}");
    }

    #[test]
    fn admissibility() {
        let cfg = ShootConfig::default();
        assert!(matches!(
            shoot_curve_point(&S1ShootParam::new(-1.0), &cfg),
            Err(ShootError::Inadmissible { name: "delta1", .. })
        ));
        assert!(matches!(
            shoot_surface_point(&S2ShootParam::new(-1.5, 1.0), &cfg),
            Err(ShootError::Inadmissible { name: "delta2", .. })
        ));
        assert!(matches!(
            shoot_surface_point(&S2ShootParam::new(-0.5, -1.0), &cfg),
            Err(ShootError::Inadmissible { name: "delta3", .. })
        ));
        let loose = ShootConfig { exploratory: true, ..cfg };
        let _ = shoot_curve_point(&S1ShootParam::new(-1.0), &loose);
    }

    #[test]
    fn mismatch_examples() {
        let cfg = ShootConfig::default();
        let f = mismatch(1.0 / 18.0, -7.0 / 9.0, 1.0 / 3.0f64.sqrt(), &cfg).unwrap();
        assert!(f.norm_inf() < 1e-7, "{f:?}");
        let g = mismatch(1.0 / 18.0, -7.0 / 9.0, 0.6, &cfg).unwrap();
        assert!(g.norm_inf() > 1e-3, "{g:?}");
        let h = mismatch(1.0 / 18.0, -7.0 / 9.0, 0.6, &cfg).unwrap();
        assert_eq!(g, h);
    }

    #[test]
    fn gaussian_at_xi_ten() {
        let shot = shoot_s2_to_xi(&S2ShootParam::new(-1.0, 1.0), 10.0, &ShootConfig::default()).unwrap();
        let s = -shot.event_time;
        assert!((s - (5.0 + 26.0f64.sqrt())).abs() < 1e-9, "{s} {:?}", shot.event_state);
        assert!((shot.event_state.l1 + 1.0 / (5.0 + 26.0f64.sqrt())).abs() < 1e-10);
        let s1 = shoot_s1_to_xi(&S1ShootParam::new(1.0 / 18.0), 10.0, &ShootConfig::default()).unwrap();
        assert!((s1.event_state.xi - 10.0).abs() < 1e-9);
        assert!(s1.event_time < 0.3);
    }

    #[test]
    fn autonomy_of_s2_origin() {
        let p = S2ShootParam::new(-0.6, 0.8);
        let a = shoot_surface_point(&p, &ShootConfig::default()).unwrap().0;
        let cfg = ShootConfig { s2_orbit_time: 3.7, ..ShootConfig::default() };
        let b = shoot_surface_point(&p, &cfg).unwrap().0;
        assert!(a.dist_inf(&b) < 1e-9, "{a:?} {b:?}");
    }
}
