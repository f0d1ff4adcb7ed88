use serde::{Deserialize, Serialize};

use super::{MonitorError, Segment};
use crate::singular_shooting::{Shot, Side};

/// Richardson pair used for the orbit values, and its coarser check pair.
const FINE: f64 = 0.02;
const COARSE: f64 = 0.04;
const STABILITY_TOL: f64 = 1e-4;

/// `X = ξ − L₁` and `Y = ξL₁ + 1 − L₁²` along an S²-side shot.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Delta2Monitors {
    /// Distance `s` from the S² orbit of each sample.
    pub s: Vec<f64>,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    /// `Y` extrapolated to the orbit; equals `3(δ₂ + 1)/2` for a regular start.
    pub y_orbit: f64,
    /// `X` vanishes at the orbit; this is `dX/ds` there, `−(3δ₂ + 1)/2`.
    pub x_slope_orbit: f64,
}

/// Richardson extrapolation of an even function of `s` from `s` and `s/2`.
fn richardson(f: impl Fn(f64) -> f64, s: f64) -> f64 {
    (4.0 * f(0.5 * s) - f(s)) / 3.0
}

pub fn delta2_monitors(shot: &Shot) -> Result<Delta2Monitors, MonitorError> {
    if shot.side != Side::S2 {
        return Err(MonitorError::WrongSide);
    }
    let seg = Segment::of_shot(shot);
    let orbit = shot.path.chart.orbit_distance(0.0);
    let reach = (seg.t_b - orbit).abs();
    if shot.handoff > 0.25 * FINE || reach < COARSE {
        return Err(MonitorError::OutOfRange { name: "orbit distance covered", value: reach });
    }

    // X = s − η₀ + η₁ in the S² chart, free of the 1/s poles
    let at = |s: f64| {
        let t = orbit - s;
        let e = shot.path.traj.eval(t);
        (s - e[0] + e[1], shot.path.curvature_at(t).k_t1)
    };
    let orbit_value = |f: &dyn Fn(f64) -> f64| -> Result<f64, MonitorError> {
        let fine = richardson(f, FINE);
        let coarse = richardson(f, COARSE);
        if (fine - coarse).abs() > STABILITY_TOL * fine.abs().max(1.0) {
            return Err(MonitorError::ExtrapolationUnstable { fine, coarse });
        }
        Ok(fine)
    };
    let y_orbit = orbit_value(&|s| at(s).1)?;
    let x_slope_orbit = orbit_value(&|s| at(s).0 / s)?;

    let mut out = Delta2Monitors { s: Vec::new(), x: Vec::new(), y: Vec::new(), y_orbit, x_slope_orbit };
    for t in seg.sample_times(1) {
        let (x, y) = at(orbit - t);
        out.s.push(orbit - t);
        out.x.push(x);
        out.y.push(y);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::singular_shooting::{shoot_curve_point, shoot_surface_point, S1ShootParam, S2ShootParam, ShootConfig};

    fn monitors(d2: f64, d3: f64) -> Delta2Monitors {
        let (_, shot) = shoot_surface_point(&S2ShootParam::new(d2, d3), &ShootConfig::default()).unwrap();
        delta2_monitors(&shot).unwrap()
    }

    #[test]
    fn orbit_values() {
        let round = monitors(-7.0 / 9.0, 1.0 / 3.0f64.sqrt());
        assert!((round.y_orbit - 1.0 / 3.0).abs() < 1e-8, "{}", round.y_orbit);
        let g = monitors(-1.0, 1.0);
        assert!(g.y_orbit.abs() < 1e-12);
        assert!((g.x_slope_orbit - 1.0).abs() < 1e-10);
        let m = monitors(-0.5, 1.0);
        assert!((m.y_orbit - 0.75).abs() < 1e-5, "{}", m.y_orbit);
        assert!((m.x_slope_orbit - 0.25).abs() < 1e-5, "{}", m.x_slope_orbit);
    }

    #[test]
    fn y_orbit_tracks_delta2() {
        for d2 in [-0.9, -0.6, -0.2, 0.0] {
            let m = monitors(d2, 0.7);
            assert!((m.y_orbit - 1.5 * (d2 + 1.0)).abs() < 1e-5, "δ₂ = {d2}: {}", m.y_orbit);
            assert!((m.x_slope_orbit + 0.5 * (3.0 * d2 + 1.0)).abs() < 1e-5);
        }
    }

    #[test]
    fn gaussian_samples() {
        let g = monitors(-1.0, 1.0);
        for ((s, x), y) in g.s.iter().zip(&g.x).zip(&g.y) {
            assert!((x - s).abs() < 1e-12 && y.abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_s1_shots() {
        let (_, shot) = shoot_curve_point(&S1ShootParam::new(0.1), &ShootConfig::default()).unwrap();
        assert_eq!(delta2_monitors(&shot).unwrap_err(), MonitorError::WrongSide);
    }

    #[test]
    fn short_shots_are_out_of_range() {
        let p = S2ShootParam::new(-0.5, 1.0);
        let shot = crate::singular_shooting::shoot_s2_to_xi(&p, -30.0, &ShootConfig::default()).unwrap();
        assert!(matches!(delta2_monitors(&shot), Err(MonitorError::OutOfRange { .. })));
    }
}
