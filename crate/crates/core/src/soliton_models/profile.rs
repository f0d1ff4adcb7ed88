use serde::{Deserialize, Serialize};

use super::{Chart, ChartTrajectory, ModelError, SolitonState};
use crate::ode_core::EventSide;

/// How the multiplicative constant of `f₁ = exp(∫L₁)` is fixed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProfileNormalization {
    /// `f₁ → 0` with `f₁′ = −1` at the S² orbit. Requires the S² chart.
    CollapsingOrbit,
    /// Value of `f₁` at the S¹ orbit. Requires the S¹ chart.
    S1OrbitValue(f64),
    /// Value of `f₁` at a time inside the trajectory.
    AtTime { t: f64, f1: f64 },
}

/// Where the additive constant of `u` is fixed to zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PotentialAnchor {
    XiZero,
    TrajectoryEnd,
}

/// Warping functions and potential on a uniform grid.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Profile {
    pub t: Vec<f64>,
    pub f1: Vec<f64>,
    pub f2: Vec<f64>,
    pub u: Vec<f64>,
    pub df1: Vec<f64>,
    pub df2: Vec<f64>,
    pub du: Vec<f64>,
    pub states: Vec<SolitonState>,
    pub anchor: PotentialAnchor,
}

impl Profile {
    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }
}

/// Recovers `(f₁, f₂, u)` on `n` uniform points from the start of the
/// trajectory to its ξ = 0 orbit (or its end when ξ does not vanish).
///
/// `f₂ = 1/R`, `f₁ = exp(∫L₁)` normalized as requested, and `u` integrates
/// `u′ = L₁ + 2L₂ − ξ` with `u = 0` on the ξ = 0 orbit.
pub fn reconstruct_profile(
    ct: &ChartTrajectory,
    normalization: ProfileNormalization,
    n: usize,
) -> Result<Profile, ModelError> {
    if n < 5 {
        return Err(ModelError::GridTooCoarse(n));
    }
    let chart = ct.chart;
    let t0 = ct.t_start();
    let (t_stop, anchor) = match ct.locate(|s| s.xi, EventSide::First) {
        Ok((t, _)) => (t, PotentialAnchor::XiZero),
        Err(_) => (ct.t_end(), PotentialAnchor::TrajectoryEnd),
    };
    let grid: Vec<f64> =
        (0..n).map(|k| if k == n - 1 { t_stop } else { t0 + (t_stop - t0) * k as f64 / (n - 1) as f64 }).collect();

    let traj = &ct.traj;
    let eta1 = |_t: f64, e: &[f64; 4]| e[1];
    let urate = |t: f64, e: &[f64; 4]| chart.potential_rate(t, e);
    let mut g_int = Vec::with_capacity(n);
    let mut u_int = Vec::with_capacity(n);
    let (mut g_acc, mut u_acc) = (0.0, 0.0);
    for k in 0..n {
        if k > 0 {
            g_acc += traj.integral(eta1, grid[k - 1], grid[k]);
            u_acc += traj.integral(urate, grid[k - 1], grid[k]);
        }
        g_int.push(g_acc);
        u_int.push(u_acc);
    }

    // ln f₁(t) = c + base(t), with base built from the regular integral.
    let base = |k: usize| -> f64 {
        match chart {
            Chart::Raw | Chart::S1Orbit => g_int[k],
            Chart::S2Orbit { .. } => chart.orbit_distance(grid[k]).ln() - g_int[k],
        }
    };
    let e_start = traj.eval(t0);
    let c = match normalization {
        ProfileNormalization::CollapsingOrbit => {
            let Chart::S2Orbit { .. } = chart else {
                return Err(ModelError::WrongNormalization("collapsing_orbit"));
            };
            // ∫₀^{s₀} η₁ ds for η₁ odd and linear near the orbit.
            let s0 = chart.orbit_distance(t0);
            0.5 * e_start[1] * s0
        }
        ProfileNormalization::S1OrbitValue(f10) => {
            if chart != Chart::S1Orbit {
                return Err(ModelError::WrongNormalization("s1_orbit_value"));
            }
            f10.ln() + 0.5 * e_start[1] * t0
        }
        ProfileNormalization::AtTime { t, f1 } => {
            let g_at = traj.integral(eta1, t0, t);
            let base_at = match chart {
                Chart::Raw | Chart::S1Orbit => g_at,
                Chart::S2Orbit { .. } => chart.orbit_distance(t).ln() - g_at,
            };
            f1.ln() - base_at
        }
    };

    let u_anchor = u_int[n - 1];
    let mut p = Profile {
        t: grid.clone(),
        f1: Vec::with_capacity(n),
        f2: Vec::with_capacity(n),
        u: Vec::with_capacity(n),
        df1: Vec::with_capacity(n),
        df2: Vec::with_capacity(n),
        du: Vec::with_capacity(n),
        states: Vec::with_capacity(n),
        anchor,
    };
    for (k, &t) in grid.iter().enumerate() {
        let e = traj.eval(t);
        let s = chart.to_state(t, &e);
        if !(s.r > 0.0) {
            return Err(ModelError::NonPrincipal { t, r: s.r });
        }
        let f1 = (c + base(k)).exp();
        let f2 = 1.0 / s.r;
        p.f1.push(f1);
        p.f2.push(f2);
        p.u.push(u_int[k] - u_anchor);
        p.df1.push(s.l1 * f1);
        p.df2.push(s.l2 * f2);
        p.du.push(chart.potential_rate(t, &e));
        p.states.push(s);
    }
    Ok(p)
}

/// Largest residual of the second-order soliton equations (λ = 1) over the
/// interior grid points, with second derivatives by centered differences.
pub fn second_order_residual(p: &Profile) -> Result<f64, ModelError> {
    let n = p.len();
    if n < 5 {
        return Err(ModelError::GridTooCoarse(n));
    }
    let mut worst: f64 = 0.0;
    for k in 1..n - 1 {
        let hm = p.t[k] - p.t[k - 1];
        let hp = p.t[k + 1] - p.t[k];
        let second = |v: &[f64]| 2.0 * (hm * v[k + 1] - (hm + hp) * v[k] + hp * v[k - 1]) / (hm * hp * (hm + hp));
        let (f1, f2) = (p.f1[k], p.f2[k]);
        let (d1, d2, du) = (p.df1[k], p.df2[k], p.du[k]);
        let a1 = second(&p.f1) / f1;
        let a2 = second(&p.f2) / f2;
        let upp = second(&p.u);
        let mixed = d1 * d2 / (f1 * f2);
        let r1 = -a1 - 2.0 * a2 + upp - 1.0;
        let r2 = -a1 - 2.0 * mixed + du * d1 / f1 - 1.0;
        let r3 = -a2 - mixed + (1.0 - d2 * d2) / (f2 * f2) + du * d2 / f2 - 1.0;
        worst = worst.max(r1.abs()).max(r2.abs()).max(r3.abs());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ode_core::{integrate_until, IntegratorConfig};

    fn round_state(t: f64) -> SolitonState {
        let a = t / 3.0f64.sqrt();
        let r3 = 3.0f64.sqrt();
        let (l1, l2) = (-a.tan() / r3, 1.0 / (a.tan() * r3));
        SolitonState::new(l1 + 2.0 * l2, l1, l2, 1.0 / (r3 * a.sin()))
    }

    fn round_raw() -> ChartTrajectory {
        let cfg = IntegratorConfig::default();
        let t0 = 0.3;
        let traj = integrate_until(
            |t, e: &[f64; 4]| Chart::Raw.rhs(t, e),
            round_state(t0).to_array(),
            t0,
            2.5,
            &cfg,
            |_, e| e[0],
        )
        .unwrap();
        ChartTrajectory::new(Chart::Raw, traj)
    }

    #[test]
    fn round_sphere_profile_from_raw_chart() {
        let ct = round_raw();
        let t0 = 0.3;
        let f1_0 = 3.0f64.sqrt() * (t0 / 3.0f64.sqrt()).cos();
        let p = reconstruct_profile(&ct, ProfileNormalization::AtTime { t: t0, f1: f1_0 }, 400).unwrap();
        assert_eq!(p.anchor, PotentialAnchor::XiZero);
        let t_star = 3.0f64.sqrt() * 2.0f64.sqrt().atan();
        assert!((p.t[p.len() - 1] - t_star).abs() < 1e-10);
        for k in 0..p.len() {
            let a = p.t[k] / 3.0f64.sqrt();
            assert!((p.f1[k] - 3.0f64.sqrt() * a.cos()).abs() < 1e-9);
            assert!((p.f2[k] - 3.0f64.sqrt() * a.sin()).abs() < 1e-9);
            assert!(p.u[k].abs() < 1e-9);
            assert_eq!(p.f2[k], 1.0 / p.states[k].r);
        }
        assert!(second_order_residual(&p).unwrap() < 1e-5);
    }

    #[test]
    fn guards() {
        let ct = round_raw();
        assert_eq!(
            reconstruct_profile(&ct, ProfileNormalization::CollapsingOrbit, 100).unwrap_err(),
            ModelError::WrongNormalization("collapsing_orbit")
        );
        assert_eq!(
            reconstruct_profile(&ct, ProfileNormalization::S1OrbitValue(1.0), 100).unwrap_err(),
            ModelError::WrongNormalization("s1_orbit_value")
        );
        assert_eq!(
            reconstruct_profile(&ct, ProfileNormalization::AtTime { t: 0.3, f1: 1.0 }, 3).unwrap_err(),
            ModelError::GridTooCoarse(3)
        );
        let p = reconstruct_profile(&ct, ProfileNormalization::AtTime { t: 0.3, f1: 1.0 }, 100).unwrap();
        let tiny = Profile {
            t: p.t[..3].to_vec(),
            f1: p.f1[..3].to_vec(),
            f2: p.f2[..3].to_vec(),
            u: p.u[..3].to_vec(),
            df1: p.df1[..3].to_vec(),
            df2: p.df2[..3].to_vec(),
            du: p.du[..3].to_vec(),
            states: p.states[..3].to_vec(),
            anchor: p.anchor,
        };
        assert_eq!(second_order_residual(&tiny), Err(ModelError::GridTooCoarse(3)));
    }
}
