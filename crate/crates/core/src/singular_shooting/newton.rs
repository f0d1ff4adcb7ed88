use nalgebra::{Matrix3, Vector3};
use serde::{Deserialize, Serialize};

use super::shoot::{shoot_curve_point, shoot_surface_point, MeetPoint};
use super::{RootError, S1ShootParam, S2ShootParam, ShootConfig, ShootError};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NewtonOptions {
    /// Converged once `|F|∞` drops below this.
    pub tol: f64,
    pub max_iterations: usize,
    /// Relative forward-difference step.
    pub fd_step: f64,
    pub max_halvings: usize,
}

impl Default for NewtonOptions {
    fn default() -> Self {
        Self { tol: 1e-9, max_iterations: 25, fd_step: 1e-6, max_halvings: 20 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RootReport {
    pub root: [f64; 3],
    pub residual: f64,
    pub iterations: usize,
    /// `|F|∞` after each accepted step, starting with the guess.
    pub history: Vec<f64>,
}

fn meets(d: [f64; 3], cfg: &ShootConfig) -> Result<(MeetPoint, MeetPoint), ShootError> {
    let a = shoot_curve_point(&S1ShootParam::new(d[0]), cfg)?.0;
    let b = shoot_surface_point(&S2ShootParam::new(d[1], d[2]), cfg)?.0;
    Ok((a, b))
}

/// Mismatch vector at `d`.
pub(super) fn residual_at(d: [f64; 3], cfg: &ShootConfig) -> Result<Vector3<f64>, ShootError> {
    let (a, b) = meets(d, cfg)?;
    Ok(residual_of(&a, &b))
}

fn residual_of(a: &MeetPoint, b: &MeetPoint) -> Vector3<f64> {
    Vector3::new(a.l1 - b.l1, a.l2 - b.l2, a.r - b.r)
}

fn jacobian_from(
    d: [f64; 3],
    base: (MeetPoint, MeetPoint),
    fd_step: f64,
    cfg: &ShootConfig,
) -> Result<Matrix3<f64>, ShootError> {
    let (a0, b0) = (Vector3::from(base.0.to_array()), Vector3::from(base.1.to_array()));
    let mut jac = Matrix3::zeros();

    let h = fd_step * d[0].abs().max(1.0);
    let a = Vector3::from(shoot_curve_point(&S1ShootParam::new(d[0] + h), cfg)?.0.to_array());
    jac.set_column(0, &((a - a0) / h));

    for col in 1..3 {
        let h = fd_step * d[col].abs().max(1.0);
        let mut p = S2ShootParam::new(d[1], d[2]);
        if col == 1 {
            p.delta2 += h;
        } else {
            p.delta3 += h;
        }
        let b = Vector3::from(shoot_surface_point(&p, cfg)?.0.to_array());
        jac.set_column(col, &(-(b - b0) / h));
    }
    Ok(jac)
}

/// Forward-difference Jacobian of the mismatch map at `d`.
pub fn jacobian(d: [f64; 3], fd_step: f64, cfg: &ShootConfig) -> Result<Matrix3<f64>, ShootError> {
    let base = meets(d, cfg)?;
    jacobian_from(d, base, fd_step, cfg)
}

/// Damped Newton iteration on the mismatch map.
///
/// A trial step is halved until the residual decreases; a shot that fails
/// at a trial point counts as no decrease. If all halvings fail the
/// iteration stops with `MaxIterations { stalled: true, .. }`.
pub fn find_root(guess: [f64; 3], cfg: &ShootConfig, opts: &NewtonOptions) -> Result<RootReport, RootError> {
    let fail = |at: [f64; 3]| move |source: ShootError| RootError::ShootFailure { at, source };

    let mut d = guess;
    let mut base = meets(d, cfg).map_err(fail(d))?;
    let mut f = residual_of(&base.0, &base.1);
    let mut norm = f.amax();
    let mut history = vec![norm];

    for it in 0..=opts.max_iterations {
        if norm < opts.tol {
            return Ok(RootReport { root: d, residual: norm, iterations: it, history });
        }
        if it == opts.max_iterations {
            break;
        }
        let jac = jacobian_from(d, base, opts.fd_step, cfg).map_err(fail(d))?;
        let step = jac.lu().solve(&(-f)).filter(|s| s.iter().all(|v| v.is_finite()));
        let Some(step) = step else {
            return Err(RootError::SingularJacobian { at: d });
        };

        let mut lambda = 1.0;
        let mut accepted = None;
        for _ in 0..=opts.max_halvings {
            let trial = [d[0] + lambda * step[0], d[1] + lambda * step[1], d[2] + lambda * step[2]];
            if let Ok(m) = meets(trial, cfg) {
                let ft = residual_of(&m.0, &m.1);
                if ft.amax() < norm {
                    accepted = Some((trial, m, ft));
                    break;
                }
            }
            lambda *= 0.5;
        }
        let Some((trial, m, ft)) = accepted else {
            return Err(RootError::MaxIterations { iterations: it, residual: norm, stalled: true, last: d });
        };
        d = trial;
        base = m;
        f = ft;
        norm = f.amax();
        history.push(norm);
    }
    Err(RootError::MaxIterations { iterations: opts.max_iterations, residual: norm, stalled: false, last: d })
}
