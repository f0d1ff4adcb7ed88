use thiserror::Error;

use super::tableau::*;
use super::trajectory::{DenseStep, Termination, Trajectory};
use super::{max_norm, ConfigError, IntegratorConfig};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IntegrationError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("empty integration interval (t0 = t1 = {0})")]
    EmptyInterval(f64),
    #[error("initial state is not finite")]
    NonFiniteInitial,
    #[error("step size underflow at t = {t}")]
    StepUnderflow { t: f64 },
    #[error("state norm exceeded the blow-up cap at t = {t}")]
    BlowUp { t: f64 },
    #[error("maximum number of steps reached at t = {t}")]
    MaxSteps { t: f64 },
}

impl<const N: usize> Trajectory<N> {
    /// Converts a non-success termination into the matching error.
    pub fn require_complete(&self) -> Result<&Self, IntegrationError> {
        let t = self.t_end();
        match self.termination {
            Termination::ReachedEnd | Termination::Event => Ok(self),
            Termination::BlowUp => Err(IntegrationError::BlowUp { t }),
            Termination::StepUnderflow => Err(IntegrationError::StepUnderflow { t }),
            Termination::MaxSteps => Err(IntegrationError::MaxSteps { t }),
        }
    }
}

const SAFE: f64 = 0.9;
const FAC1: f64 = 0.333;
const FAC2: f64 = 6.0;
const EXPO1: f64 = 1.0 / 8.0;

/// Integrates `y' = field(t, y)` from `t0` to `t1`.
///
/// Non-success terminations (blow-up, step underflow, step budget) do not
/// produce an `Err`; the returned trajectory is the valid prefix and records
/// the reason. Use [`Trajectory::require_complete`] to turn them into errors.
pub fn integrate<const N: usize, F>(
    field: F,
    y0: [f64; N],
    t0: f64,
    t1: f64,
    config: &IntegratorConfig,
) -> Result<Trajectory<N>, IntegrationError>
where
    F: Fn(f64, &[f64; N]) -> [f64; N],
{
    run(&field, y0, t0, t1, config, None::<&fn(f64, &[f64; N]) -> f64>)
}

/// Like [`integrate`], but stops after the first accepted step across which
/// `stop(t, y)` changes sign. The trajectory then ends just past the crossing
/// with termination [`Termination::Event`].
pub fn integrate_until<const N: usize, F, G>(
    field: F,
    y0: [f64; N],
    t0: f64,
    t1: f64,
    config: &IntegratorConfig,
    stop: G,
) -> Result<Trajectory<N>, IntegrationError>
where
    F: Fn(f64, &[f64; N]) -> [f64; N],
    G: Fn(f64, &[f64; N]) -> f64,
{
    run(&field, y0, t0, t1, config, Some(&stop))
}

/// Fixed-step integration without error control, used to measure the order
/// of the scheme.
pub fn integrate_fixed<const N: usize, F>(
    field: F,
    y0: [f64; N],
    t0: f64,
    t1: f64,
    steps: usize,
) -> Trajectory<N>
where
    F: Fn(f64, &[f64; N]) -> [f64; N],
{
    let h = (t1 - t0) / steps as f64;
    let mut traj = Trajectory::start(t0, y0);
    let (mut t, mut y) = (t0, y0);
    let mut k1 = field(t, &y);
    for i in 0..steps {
        let trial = trial_step(&field, t, &y, &k1, h);
        let t_new = if i + 1 == steps { t1 } else { t0 + h * (i + 1) as f64 };
        let k13 = field(t_new, &trial.y_new);
        let cont = dense_coefficients(&field, t, &y, &trial, &k1, &k13, h);
        traj.push(t_new, trial.y_new, DenseStep { t_old: t, h, cont });
        t = t_new;
        y = trial.y_new;
        k1 = k13;
    }
    traj
}

struct Trial<const N: usize> {
    y_new: [f64; N],
    k: [[f64; N]; 12],
}

fn combo<const N: usize>(y: &[f64; N], h: f64, terms: &[(f64, &[f64; N])]) -> [f64; N] {
    let mut out = *y;
    for i in 0..N {
        let mut acc = 0.0;
        for (c, k) in terms {
            acc += c * k[i];
        }
        out[i] += h * acc;
    }
    out
}

fn trial_step<const N: usize, F>(f: &F, t: f64, y: &[f64; N], k1: &[f64; N], h: f64) -> Trial<N>
where
    F: Fn(f64, &[f64; N]) -> [f64; N],
{
    let k2 = f(t + C2 * h, &combo(y, h, &[(A21, k1)]));
    let k3 = f(t + C3 * h, &combo(y, h, &[(A31, k1), (A32, &k2)]));
    let k4 = f(t + C4 * h, &combo(y, h, &[(A41, k1), (A43, &k3)]));
    let k5 = f(t + C5 * h, &combo(y, h, &[(A51, k1), (A53, &k3), (A54, &k4)]));
    let k6 = f(t + C6 * h, &combo(y, h, &[(A61, k1), (A64, &k4), (A65, &k5)]));
    let k7 = f(t + C7 * h, &combo(y, h, &[(A71, k1), (A74, &k4), (A75, &k5), (A76, &k6)]));
    let k8 = f(
        t + C8 * h,
        &combo(y, h, &[(A81, k1), (A84, &k4), (A85, &k5), (A86, &k6), (A87, &k7)]),
    );
    let k9 = f(
        t + C9 * h,
        &combo(y, h, &[(A91, k1), (A94, &k4), (A95, &k5), (A96, &k6), (A97, &k7), (A98, &k8)]),
    );
    let k10 = f(
        t + C10 * h,
        &combo(
            y,
            h,
            &[(A101, k1), (A104, &k4), (A105, &k5), (A106, &k6), (A107, &k7), (A108, &k8), (A109, &k9)],
        ),
    );
    let k11 = f(
        t + C11 * h,
        &combo(
            y,
            h,
            &[
                (A111, k1),
                (A114, &k4),
                (A115, &k5),
                (A116, &k6),
                (A117, &k7),
                (A118, &k8),
                (A119, &k9),
                (A1110, &k10),
            ],
        ),
    );
    let k12 = f(
        t + h,
        &combo(
            y,
            h,
            &[
                (A121, k1),
                (A124, &k4),
                (A125, &k5),
                (A126, &k6),
                (A127, &k7),
                (A128, &k8),
                (A129, &k9),
                (A1210, &k10),
                (A1211, &k11),
            ],
        ),
    );
    let y_new = combo(
        y,
        h,
        &[(B1, k1), (B6, &k6), (B7, &k7), (B8, &k8), (B9, &k9), (B10, &k10), (B11, &k11), (B12, &k12)],
    );
    Trial { y_new, k: [*k1, k2, k3, k4, k5, k6, k7, k8, k9, k10, k11, k12] }
}

/// Scaled error norm of the 8(5,3) pair; ≤ 1 means the step is acceptable.
fn error_norm<const N: usize>(y: &[f64; N], trial: &Trial<N>, h: f64, cfg: &IntegratorConfig) -> f64 {
    let k = &trial.k;
    let mut err = 0.0;
    let mut err2 = 0.0;
    for i in 0..N {
        let sk = cfg.atol + cfg.rtol * y[i].abs().max(trial.y_new[i].abs());
        let bsum = B1 * k[0][i]
            + B6 * k[5][i]
            + B7 * k[6][i]
            + B8 * k[7][i]
            + B9 * k[8][i]
            + B10 * k[9][i]
            + B11 * k[10][i]
            + B12 * k[11][i];
        let e2 = bsum - BHH1 * k[0][i] - BHH2 * k[8][i] - BHH3 * k[11][i];
        err2 += (e2 / sk).powi(2);
        let e = ER1 * k[0][i]
            + ER6 * k[5][i]
            + ER7 * k[6][i]
            + ER8 * k[7][i]
            + ER9 * k[8][i]
            + ER10 * k[9][i]
            + ER11 * k[10][i]
            + ER12 * k[11][i];
        err += (e / sk).powi(2);
    }
    let mut deno = err + 0.01 * err2;
    if deno <= 0.0 {
        deno = 1.0;
    }
    h.abs() * err * (1.0 / (deno * N as f64)).sqrt()
}

fn dense_coefficients<const N: usize, F>(
    f: &F,
    t: f64,
    y: &[f64; N],
    trial: &Trial<N>,
    k1: &[f64; N],
    k13: &[f64; N],
    h: f64,
) -> [[f64; N]; 8]
where
    F: Fn(f64, &[f64; N]) -> [f64; N],
{
    let k = &trial.k;
    let (k6, k7, k8, k9, k10, k11, k12) = (&k[5], &k[6], &k[7], &k[8], &k[9], &k[10], &k[11]);
    let k14 = f(
        t + C14 * h,
        &combo(
            y,
            h,
            &[
                (A141, k1),
                (A147, k7),
                (A148, k8),
                (A149, k9),
                (A1410, k10),
                (A1411, k11),
                (A1412, k12),
                (A1413, k13),
            ],
        ),
    );
    let k15 = f(
        t + C15 * h,
        &combo(
            y,
            h,
            &[
                (A151, k1),
                (A156, k6),
                (A157, k7),
                (A158, k8),
                (A1511, k11),
                (A1512, k12),
                (A1513, k13),
                (A1514, &k14),
            ],
        ),
    );
    let k16 = f(
        t + C16 * h,
        &combo(
            y,
            h,
            &[
                (A161, k1),
                (A166, k6),
                (A167, k7),
                (A168, k8),
                (A169, k9),
                (A1613, k13),
                (A1614, &k14),
                (A1615, &k15),
            ],
        ),
    );
    let d = [
        [D41, D46, D47, D48, D49, D410, D411, D412, D413, D414, D415, D416],
        [D51, D56, D57, D58, D59, D510, D511, D512, D513, D514, D515, D516],
        [D61, D66, D67, D68, D69, D610, D611, D612, D613, D614, D615, D616],
        [D71, D76, D77, D78, D79, D710, D711, D712, D713, D714, D715, D716],
    ];
    let stages: [&[f64; N]; 12] = [k1, k6, k7, k8, k9, k10, k11, k12, k13, &k14, &k15, &k16];
    let mut cont = [[0.0; N]; 8];
    for i in 0..N {
        let ydiff = trial.y_new[i] - y[i];
        let bspl = h * k1[i] - ydiff;
        cont[0][i] = y[i];
        cont[1][i] = ydiff;
        cont[2][i] = bspl;
        cont[3][i] = ydiff - h * k13[i] - bspl;
        for (row, coeffs) in d.iter().enumerate() {
            let mut acc = 0.0;
            for (c, st) in coeffs.iter().zip(stages.iter()) {
                acc += c * st[i];
            }
            cont[4 + row][i] = h * acc;
        }
    }
    cont
}

fn initial_step<const N: usize, F>(
    f: &F,
    t0: f64,
    y0: &[f64; N],
    f0: &[f64; N],
    dir: f64,
    hmax: f64,
    cfg: &IntegratorConfig,
) -> f64
where
    F: Fn(f64, &[f64; N]) -> [f64; N],
{
    let mut dnf = 0.0;
    let mut dny = 0.0;
    for i in 0..N {
        let sk = cfg.atol + cfg.rtol * y0[i].abs();
        dnf += (f0[i] / sk).powi(2);
        dny += (y0[i] / sk).powi(2);
    }
    let mut h = if dnf <= 1e-10 || dny <= 1e-10 { 1e-6 } else { (dny / dnf).sqrt() * 0.01 };
    h = h.min(hmax) * dir;
    let y1 = combo(y0, h, &[(1.0, f0)]);
    let f1 = f(t0 + h, &y1);
    let mut der2 = 0.0;
    for i in 0..N {
        let sk = cfg.atol + cfg.rtol * y0[i].abs();
        der2 += ((f1[i] - f0[i]) / sk).powi(2);
    }
    let der2 = der2.sqrt() / h.abs();
    let der12 = der2.max(dnf.sqrt());
    let h1 = if der12 <= 1e-15 || !der12.is_finite() {
        (h.abs() * 1e-3).max(1e-6)
    } else {
        (0.01 / der12).powf(1.0 / 8.0)
    };
    (100.0 * h.abs()).min(h1).min(hmax) * dir
}

fn run<const N: usize, F, G>(
    f: &F,
    y0: [f64; N],
    t0: f64,
    t1: f64,
    cfg: &IntegratorConfig,
    stop: Option<&G>,
) -> Result<Trajectory<N>, IntegrationError>
where
    F: Fn(f64, &[f64; N]) -> [f64; N],
    G: Fn(f64, &[f64; N]) -> f64,
{
    cfg.validate()?;
    if t0 == t1 || !t0.is_finite() || !t1.is_finite() {
        return Err(IntegrationError::EmptyInterval(t0));
    }
    if y0.iter().any(|v| !v.is_finite()) {
        return Err(IntegrationError::NonFiniteInitial);
    }
    let dir = (t1 - t0).signum();
    let hmax = cfg.max_step.unwrap_or(f64::INFINITY).min((t1 - t0).abs());
    let mut traj = Trajectory::start(t0, y0);
    if max_norm(&y0) > cfg.blowup_cap {
        traj.termination = Termination::BlowUp;
        return Ok(traj);
    }

    let mut t = t0;
    let mut y = y0;
    let mut k1 = f(t, &y);
    let mut h = match cfg.initial_step {
        Some(h0) => h0.min(hmax) * dir,
        None => initial_step(f, t0, &y0, &k1, dir, hmax, cfg),
    };
    let mut g_prev = stop.map(|g| g(t, &y));
    let mut rejected = false;
    let mut steps = 0usize;

    loop {
        if steps >= cfg.max_steps {
            traj.termination = Termination::MaxSteps;
            return Ok(traj);
        }
        if 0.1 * h.abs() <= t.abs() * f64::EPSILON || h.abs() < f64::MIN_POSITIVE {
            traj.termination = Termination::StepUnderflow;
            return Ok(traj);
        }
        let mut last = false;
        if (t + 1.01 * h - t1) * dir > 0.0 {
            h = t1 - t;
            last = true;
        }
        steps += 1;

        let trial = trial_step(f, t, &y, &k1, h);
        let err = error_norm(&y, &trial, h, cfg);

        if !err.is_finite() {
            h *= FAC1;
            rejected = true;
            continue;
        }

        let fac11 = err.powf(EXPO1);
        let fac = (1.0 / FAC2).max((1.0 / FAC1).min(fac11 / SAFE));
        let mut h_new = h / fac;

        if err <= 1.0 {
            let t_new = if last { t1 } else { t + h };
            let y_new = trial.y_new;
            if y_new.iter().any(|v| !v.is_finite()) || max_norm(&y_new) > cfg.blowup_cap {
                traj.termination = Termination::BlowUp;
                return Ok(traj);
            }
            let k13 = f(t_new, &y_new);
            if k13.iter().any(|v| !v.is_finite()) {
                traj.termination = Termination::BlowUp;
                return Ok(traj);
            }
            let cont = dense_coefficients(f, t, &y, &trial, &k1, &k13, t_new - t);
            traj.push(t_new, y_new, DenseStep { t_old: t, h: t_new - t, cont });
            t = t_new;
            y = y_new;
            k1 = k13;

            if let (Some(g), Some(gp)) = (stop, g_prev.as_mut()) {
                let gn = g(t, &y);
                if *gp == 0.0 {
                    *gp = gn;
                } else if gn == 0.0 || gn.signum() != gp.signum() {
                    traj.termination = Termination::Event;
                    return Ok(traj);
                }
            }
            if last {
                traj.termination = Termination::ReachedEnd;
                return Ok(traj);
            }
            if h_new.abs() > hmax {
                h_new = dir * hmax;
            }
            if rejected {
                h_new = dir * h_new.abs().min(h.abs());
            }
            rejected = false;
        } else {
            h_new = h / (1.0 / FAC1).min(fac11 / SAFE);
            rejected = true;
        }
        h = h_new;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn linear_decay_matches_exponential() {
        let cfg = IntegratorConfig::default();
        let traj = integrate(|_, y: &[f64; 1]| [-y[0]], [1.0], 0.0, 1.0, &cfg).unwrap();
        assert_eq!(traj.termination(), Termination::ReachedEnd);
        assert_eq!(traj.t_end(), 1.0);
        assert_relative_eq!(traj.last_state()[0], (-1.0f64).exp(), max_relative = 1e-10);
    }

    #[test]
    fn harmonic_oscillator_returns_home() {
        let cfg = IntegratorConfig::default();
        let two_pi = 2.0 * std::f64::consts::PI;
        let traj = integrate(|_, y: &[f64; 2]| [y[1], -y[0]], [1.0, 0.0], 0.0, two_pi, &cfg).unwrap();
        let [p, q] = traj.last_state();
        assert!((p - 1.0).abs() < 1e-9 && q.abs() < 1e-9);
        for s in traj.states() {
            assert!((s[0] * s[0] + s[1] * s[1] - 1.0).abs() < 10.0 * cfg.rtol);
        }
    }

    #[test]
    fn backward_integration() {
        let cfg = IntegratorConfig::default();
        let traj = integrate(|_, y: &[f64; 1]| [-y[0]], [1.0], 1.0, 0.0, &cfg).unwrap();
        assert_eq!(traj.direction(), -1.0);
        assert!(traj.times().windows(2).all(|w| w[1] < w[0]));
        assert_relative_eq!(traj.last_state()[0], 1.0f64.exp(), max_relative = 1e-10);
    }

    #[test]
    fn fixed_step_order_is_eight() {
        let f = |_: f64, y: &[f64; 1]| [-y[0]];
        let exact = (-4.0f64).exp();
        let e1 = (integrate_fixed(f, [1.0], 0.0, 4.0, 8).last_state()[0] - exact).abs();
        let e2 = (integrate_fixed(f, [1.0], 0.0, 4.0, 16).last_state()[0] - exact).abs();
        let rate = (e1 / e2).log2();
        assert!((rate - 8.0).abs() < 0.5, "observed rate {rate}");
    }

    #[test]
    fn dense_output_reproduces_samples_and_is_accurate() {
        let cfg = IntegratorConfig::default();
        let traj = integrate(|_, y: &[f64; 2]| [y[1], -y[0]], [1.0, 0.0], 0.0, 3.0, &cfg).unwrap();
        for (t, s) in traj.times().iter().zip(traj.states()) {
            assert_eq!(traj.eval(*t), *s);
        }
        for k in 0..100 {
            let t = 0.03 * k as f64;
            let y = traj.eval(t);
            assert!((y[0] - t.cos()).abs() < 1e-9, "t={t}");
        }
    }

    #[test]
    fn blow_up_is_reported() {
        let cfg = IntegratorConfig::default();
        // y' = y², y(0)=1 blows up at t=1
        let traj = integrate(|_, y: &[f64; 1]| [y[0] * y[0]], [1.0], 0.0, 2.0, &cfg).unwrap();
        assert!(matches!(traj.termination(), Termination::BlowUp | Termination::StepUnderflow));
        assert!(traj.t_end() < 1.0 + 1e-9, "{:?} {} {:?}", traj.termination(), traj.t_end(), traj.last_state());
        assert!(traj.states().iter().all(|s| s[0].is_finite() && s[0] <= cfg.blowup_cap));
        assert!(traj.require_complete().is_err());
    }

    #[test]
    fn max_steps_is_reported() {
        let cfg = IntegratorConfig { max_steps: 3, ..IntegratorConfig::default() };
        let traj = integrate(|_, y: &[f64; 2]| [y[1], -y[0]], [1.0, 0.0], 0.0, 100.0, &cfg).unwrap();
        assert_eq!(traj.termination(), Termination::MaxSteps);
        assert!(matches!(traj.require_complete(), Err(IntegrationError::MaxSteps { .. })));
    }

    #[test]
    fn invalid_inputs_rejected() {
        let cfg = IntegratorConfig::default();
        let f = |_: f64, y: &[f64; 1]| [-y[0]];
        assert!(matches!(integrate(f, [1.0], 0.0, 0.0, &cfg), Err(IntegrationError::EmptyInterval(_))));
        assert!(matches!(integrate(f, [f64::NAN], 0.0, 1.0, &cfg), Err(IntegrationError::NonFiniteInitial)));
        let bad = IntegratorConfig { rtol: 0.0, ..cfg };
        assert!(matches!(integrate(f, [1.0], 0.0, 1.0, &bad), Err(IntegrationError::Config(_))));
    }

    #[test]
    fn stop_function_ends_trajectory() {
        let cfg = IntegratorConfig::default();
        let traj = integrate_until(|_, y: &[f64; 1]| [-1.0 + 0.0 * y[0]], [1.0], 0.0, 5.0, &cfg, |_, y| y[0]).unwrap();
        assert_eq!(traj.termination(), Termination::Event);
        assert!(traj.t_end() >= 1.0 && traj.t_end() < 5.0);
    }

    #[test]
    fn cumulative_integral_of_polynomial() {
        let cfg = IntegratorConfig::default();
        let traj = integrate(|_, _y: &[f64; 1]| [1.0], [0.0], 0.0, 2.0, &cfg).unwrap();
        let cum = traj.cumulative_integral(|_, y| y[0] * y[0]);
        assert_relative_eq!(*cum.last().unwrap(), 8.0 / 3.0, max_relative = 1e-13);
        assert_relative_eq!(traj.integral(|t, _| t, 0.5, 1.5), 1.0, max_relative = 1e-13);
        assert_relative_eq!(traj.integral(|t, _| t, 1.5, 0.5), -1.0, max_relative = 1e-13);
    }

    #[test]
    fn reproducible_bit_for_bit() {
        let cfg = IntegratorConfig::default();
        let f = |t: f64, y: &[f64; 2]| [y[1], -y[0] + t.sin()];
        let a = integrate(f, [0.3, 0.1], 0.0, 7.0, &cfg).unwrap();
        let b = integrate(f, [0.3, 0.1], 0.0, 7.0, &cfg).unwrap();
        assert_eq!(a.times(), b.times());
        assert_eq!(a.states(), b.states());
    }
}
