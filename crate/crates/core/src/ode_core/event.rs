use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::trajectory::Trajectory;

/// Which crossing to report when `g` changes sign more than once.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EventSide {
    #[default]
    First,
    Last,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EventError {
    #[error("event function does not change sign on the trajectory")]
    NoSignChange,
}

/// Finds a zero of `g(t, y(t))` on the trajectory.
///
/// Crossings are bracketed between consecutive samples, then refined on the
/// dense interpolant by a few bisections followed by Illinois-modified secant
/// steps until the bracket collapses to a few ulps.
pub fn locate_event<const N: usize, G>(
    traj: &Trajectory<N>,
    g: G,
    which: EventSide,
) -> Result<(f64, [f64; N]), EventError>
where
    G: Fn(f64, &[f64; N]) -> f64,
{
    let times = traj.times();
    let states = traj.states();
    let values: Vec<f64> = times.iter().zip(states).map(|(t, y)| g(*t, y)).collect();

    let crossing = |i: usize| -> bool {
        let (a, b) = (values[i], values[i + 1]);
        (a < 0.0 && b >= 0.0) || (a > 0.0 && b <= 0.0) || (a == 0.0 && i == 0)
    };
    let steps = values.len().saturating_sub(1);
    let idx = match which {
        EventSide::First => (0..steps).find(|&i| crossing(i)),
        EventSide::Last => (0..steps).rev().find(|&i| crossing(i)),
    }
    .ok_or(EventError::NoSignChange)?;

    if values[idx] == 0.0 {
        return Ok((times[idx], states[idx]));
    }
    if values[idx + 1] == 0.0 {
        return Ok((times[idx + 1], states[idx + 1]));
    }
    let t = refine(|t| g(t, &traj.eval(t)), times[idx], times[idx + 1], values[idx], values[idx + 1]);
    Ok((t, traj.eval(t)))
}

/// Root of a scalar function on a sign-changing bracket `[a, b]`.
pub(crate) fn refine<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, mut fa: f64, mut fb: f64) -> f64 {
    for _ in 0..6 {
        let m = 0.5 * (a + b);
        let fm = f(m);
        if fm == 0.0 {
            return m;
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
            fb = fm;
        }
    }
    let mut side = 0i8;
    for _ in 0..200 {
        let width_tol = 4.0 * f64::EPSILON * a.abs().max(b.abs()).max(f64::MIN_POSITIVE);
        if (b - a).abs() <= width_tol {
            break;
        }
        let mut c = (a * fb - b * fa) / (fb - fa);
        if !c.is_finite() || (c - a) * (c - b) > 0.0 {
            c = 0.5 * (a + b);
        }
        let fc = f(c);
        if fc == 0.0 {
            return c;
        }
        if fc.signum() == fb.signum() {
            b = c;
            fb = fc;
            if side == -1 {
                fa *= 0.5;
            }
            side = -1;
        } else {
            a = c;
            fa = fc;
            if side == 1 {
                fb *= 0.5;
            }
            side = 1;
        }
    }
    if fa.abs() < fb.abs() {
        a
    } else {
        b
    }
}
