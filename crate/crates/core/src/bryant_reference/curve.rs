use super::BryantError;
use crate::ode_core::{integrate_until, refine, IntegratorConfig, Termination, Trajectory};
use crate::soliton_models::bryant_xy_rhs;

pub const DEFAULT_LAUNCH: f64 = 1e-4;
/// Below this `x` the curve is taken from the origin series.
pub const SERIES_SWITCH: f64 = 0.03;
/// Smallest `x` reported by [`BryantCurve::samples`].
pub const TERMINAL_X: f64 = 1e-6;

/// Largest change of `f` tolerated when the launch offset is halved.
const LAUNCH_TOL: f64 = 1e-7;
const LAUNCH_PROBES: [f64; 9] = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9];

/// Coefficients `c₃, c₅, …` of `f(x) = x + c₃x³ + c₅x⁵ + …` at the origin.
/// The series is asymptotic (the coefficients grow factorially); at
/// `x ≤ 0.03` the first omitted term is below 1e-17.
const ORIGIN_COEFFS: [f64; 6] = [-2.0, 2.0, -12.0, -64.0, -928.0, -13688.0];

/// Asymptotic expansion of `f` at the origin.
pub fn origin_series(x: f64) -> f64 {
    let x2 = x * x;
    let tail = ORIGIN_COEFFS.iter().rev().fold(0.0, |acc, c| acc * x2 + c);
    x + x * x2 * tail
}

/// `(−x + f + fx²) f′ − (−xf² + 2x²f³)`.
pub fn invariant_residual(x: f64, f: f64, df: f64) -> f64 {
    (-x + f + f * x * x) * df - (-x * f * f + 2.0 * x * x * f * f * f)
}

/// The curve `y = f(x)` on `[0, 1]`.
#[derive(Debug, Clone)]
pub struct BryantCurve {
    /// Launch offset from `x = 1`.
    pub h: f64,
    pub launch: (f64, f64),
    /// Unstable eigen-direction at `(1, ½)`.
    pub direction: (f64, f64),
    pub x_switch: f64,
    traj: Trajectory<2>,
}

impl BryantCurve {
    /// Time-parametrized launch-to-switch segment.
    pub fn trajectory(&self) -> &Trajectory<2> {
        &self.traj
    }

    /// `f(x)` for `x ∈ [0, 1]`.
    pub fn f(&self, x: f64) -> Option<f64> {
        if !(0.0..=1.0).contains(&x) {
            return None;
        }
        if x <= self.x_switch {
            return Some(origin_series(x));
        }
        if x >= self.launch.0 {
            return Some(launch_expansion(x));
        }
        let states = self.traj.states();
        let times = self.traj.times();
        // x decreases along the trajectory
        let k = states.partition_point(|s| s[0] >= x);
        if k == 0 || k >= states.len() {
            return None;
        }
        let (ta, tb) = (times[k - 1], times[k]);
        let (fa, fb) = (states[k - 1][0] - x, states[k][0] - x);
        let t = if fb == 0.0 { tb } else { refine(|t| self.traj.eval(t)[0] - x, ta, tb, fa, fb) };
        Some(self.traj.eval(t)[1])
    }

    /// Samples `(x, f(x))` with `x` strictly decreasing from the launch
    /// point to [`TERMINAL_X`]: the integrated steps, then a logarithmic
    /// grid on the series part.
    pub fn samples(&self) -> Vec<(f64, f64)> {
        let mut out: Vec<(f64, f64)> =
            self.traj.states().iter().filter(|s| s[0] > self.x_switch).map(|s| (s[0], s[1])).collect();
        let n = 200;
        let (a, b) = (self.x_switch.ln(), TERMINAL_X.ln());
        out.extend((0..=n).map(|i| {
            let x = (a + (b - a) * i as f64 / n as f64).exp();
            (x, origin_series(x))
        }));
        out
    }

    /// Largest `|invariant_residual|` at `n + 1` equally spaced points of
    /// `[lo, hi]`, with `f′` from central differences. Returns the value and
    /// its location.
    pub fn max_invariant_residual(&self, lo: f64, hi: f64, n: usize) -> Option<(f64, f64)> {
        let h = 1e-4;
        let mut worst = (0.0, lo);
        for i in 0..=n.max(1) {
            let x = lo + (hi - lo) * i as f64 / n.max(1) as f64;
            let df = (self.f(x + h)? - self.f(x - h)?) / (2.0 * h);
            let r = invariant_residual(x, self.f(x)?, df).abs();
            if r > worst.0 {
                worst = (r, x);
            }
        }
        Some(worst)
    }
}

/// Second-order expansion of the unstable manifold at `(1, ½)`:
/// `f(x) = x/2 + (2/5)(x − 1)²`.
fn launch_expansion(x: f64) -> f64 {
    0.5 * x + 0.4 * (x - 1.0) * (x - 1.0)
}

fn trace(h: f64, cfg: &IntegratorConfig) -> Result<BryantCurve, BryantError> {
    let launch = (1.0 - h, launch_expansion(1.0 - h));
    let field = |_: f64, s: &[f64; 2]| {
        let (dx, dy) = bryant_xy_rhs(s[0], s[1]);
        [dx, dy]
    };
    let traj = integrate_until(field, [launch.0, launch.1], 0.0, 1e8, cfg, |_, s| s[0] - SERIES_SWITCH)?;
    if traj.termination() != Termination::Event {
        return Err(BryantError::Incomplete { target: SERIES_SWITCH, t_end: traj.t_end() });
    }
    for w in traj.states().windows(2) {
        let (dx, dy) = bryant_xy_rhs(w[0][0], w[0][1]);
        if !(w[1][0] < w[0][0] && w[1][1] < w[0][1] && dx < 0.0 && dy < 0.0) {
            return Err(BryantError::NotMonotone { x: w[0][0] });
        }
    }
    Ok(BryantCurve { h, launch, direction: (2.0, 1.0), x_switch: SERIES_SWITCH, traj })
}

/// Traces the unstable manifold of `(1, ½)` from the launch point
/// `(1 − h, ½ − h/2 + (2/5)h²)` down to `x = 0.03` and continues it with
/// the origin series. The launch is accepted only if halving `h` moves the
/// curve by less than 1e-7.
pub fn bryant_unstable_curve(h: f64, cfg: &IntegratorConfig) -> Result<BryantCurve, BryantError> {
    if !(h > 0.0 && h.is_finite() && h < 1.0 - SERIES_SWITCH) {
        return Err(BryantError::InvalidLaunch(h));
    }
    let curve = trace(h, cfg)?;
    let half = trace(0.5 * h, cfg)?;
    let disagreement = LAUNCH_PROBES
        .iter()
        .map(|&x| match (curve.f(x), half.f(x)) {
            (Some(a), Some(b)) => (a - b).abs(),
            _ => f64::INFINITY,
        })
        .fold(0.0, f64::max);
    if !(disagreement <= LAUNCH_TOL) {
        return Err(BryantError::LaunchTooFar { h, disagreement });
    }
    Ok(curve)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve() -> BryantCurve {
        bryant_unstable_curve(DEFAULT_LAUNCH, &IntegratorConfig::default()).unwrap()
    }

    #[test]
    fn halving_the_launch_agrees() {
        let cfg = IntegratorConfig::default();
        let a = bryant_unstable_curve(1e-4, &cfg).unwrap();
        let b = bryant_unstable_curve(5e-5, &cfg).unwrap();
        for i in 1..100 {
            let x = i as f64 / 100.0;
            assert!((a.f(x).unwrap() - b.f(x).unwrap()).abs() < 1e-7, "x = {x}");
        }
    }

    #[test]
    fn endpoints() {
        let c = curve();
        assert_eq!(c.f(1.0), Some(0.5));
        let d = (c.f(1.0 - 1e-3).unwrap() - c.f(1.0 - 2e-3).unwrap()) / 1e-3;
        assert!((d - 0.5).abs() < 2e-3, "{d}");
        let x = 1e-4;
        assert!((c.f(x).unwrap() / x - 1.0).abs() < 1e-2);
        assert_eq!(c.f(1.5), None);
    }

    #[test]
    fn series_matches_integration_in_overlap() {
        let cfg = IntegratorConfig::default();
        let field = |_: f64, s: &[f64; 2]| {
            let (dx, dy) = bryant_xy_rhs(s[0], s[1]);
            [dx, dy]
        };
        let c = curve();
        let start = [0.1, c.f(0.1).unwrap()];
        let traj = integrate_until(field, start, 0.0, 1e8, &cfg, |_, s| s[0] - 0.04).unwrap();
        for s in traj.states().iter().filter(|s| s[0] < 0.06) {
            assert!((s[1] - origin_series(s[0])).abs() < 1e-10, "{s:?}");
        }
    }

    #[test]
    fn samples_are_strictly_decreasing_in_range() {
        let s = curve().samples();
        assert!(s.windows(2).all(|w| w[1].0 < w[0].0));
        assert!(s.iter().all(|&(_, y)| (0.0..=0.5).contains(&y)));
        assert!((s.last().unwrap().0 - TERMINAL_X).abs() < 1e-18);
    }

    #[test]
    fn invariant_manifold_residual() {
        let c = curve();
        let h = 1e-4;
        for i in 0..=89 {
            let x = 0.1 + i as f64 * 0.01;
            let df = (c.f(x + h).unwrap() - c.f(x - h).unwrap()) / (2.0 * h);
            let r = invariant_residual(x, c.f(x).unwrap(), df);
            assert!(r.abs() < 1e-6, "x = {x}: {r:e}");
        }
        let (worst, _) = c.max_invariant_residual(0.1, 0.99, 890).unwrap();
        assert!(worst < 1e-6);
        for x in [1e-3, 1e-2, 0.02] {
            let df = (origin_series(x + 1e-6) - origin_series(x - 1e-6)) / 2e-6;
            assert!(invariant_residual(x, origin_series(x), df).abs() < 1e-14);
        }
    }

    #[test]
    fn bad_launches() {
        let cfg = IntegratorConfig::default();
        assert_eq!(bryant_unstable_curve(0.0, &cfg).unwrap_err(), BryantError::InvalidLaunch(0.0));
        assert!(matches!(bryant_unstable_curve(0.2, &cfg), Err(BryantError::LaunchTooFar { .. })));
    }
}
