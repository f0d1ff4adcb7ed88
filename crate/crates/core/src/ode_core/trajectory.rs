use serde::{Deserialize, Serialize};

use super::quadrature::GL8;

/// Why an integration stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Termination {
    ReachedEnd,
    Event,
    BlowUp,
    StepUnderflow,
    MaxSteps,
}

impl Termination {
    pub fn is_success(self) -> bool {
        matches!(self, Termination::ReachedEnd | Termination::Event)
    }
}

/// Continuous-extension coefficients of one accepted step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DenseStep<const N: usize> {
    pub t_old: f64,
    pub h: f64,
    pub cont: [[f64; N]; 8],
}

impl<const N: usize> DenseStep<N> {
    /// Evaluates the degree-7 interpolant at the normalized position `s ∈ [0, 1]`.
    pub fn eval_at(&self, s: f64) -> [f64; N] {
        let s1 = 1.0 - s;
        let c = &self.cont;
        let mut out = [0.0; N];
        for i in 0..N {
            let conpar = c[4][i] + s * (c[5][i] + s1 * (c[6][i] + s * c[7][i]));
            out[i] = c[0][i] + s * (c[1][i] + s1 * (c[2][i] + s * (c[3][i] + s1 * conpar)));
        }
        out
    }
}

/// A dense numerical solution. Sample times are strictly monotone in the
/// direction of integration; `dense[i]` spans `times[i]..times[i + 1]`.
#[derive(Debug, Clone)]
pub struct Trajectory<const N: usize> {
    pub(crate) times: Vec<f64>,
    pub(crate) states: Vec<[f64; N]>,
    pub(crate) dense: Vec<DenseStep<N>>,
    pub(crate) termination: Termination,
}

impl<const N: usize> Trajectory<N> {
    pub(crate) fn start(t0: f64, y0: [f64; N]) -> Self {
        Self { times: vec![t0], states: vec![y0], dense: Vec::new(), termination: Termination::ReachedEnd }
    }

    pub(crate) fn push(&mut self, t: f64, y: [f64; N], step: DenseStep<N>) {
        self.times.push(t);
        self.states.push(y);
        self.dense.push(step);
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn states(&self) -> &[[f64; N]] {
        &self.states
    }

    pub fn dense_steps(&self) -> &[DenseStep<N>] {
        &self.dense
    }

    pub fn termination(&self) -> Termination {
        self.termination
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn t_start(&self) -> f64 {
        self.times[0]
    }

    pub fn t_end(&self) -> f64 {
        *self.times.last().expect("trajectory has at least one sample")
    }

    pub fn first_state(&self) -> [f64; N] {
        self.states[0]
    }

    pub fn last_state(&self) -> [f64; N] {
        *self.states.last().expect("trajectory has at least one sample")
    }

    /// +1 when time increases along the trajectory, −1 otherwise.
    pub fn direction(&self) -> f64 {
        if self.times.len() < 2 || self.times[1] > self.times[0] {
            1.0
        } else {
            -1.0
        }
    }

    /// True when `t` lies in the closed time span of the trajectory.
    pub fn contains(&self, t: f64) -> bool {
        let (a, b) = (self.t_start(), self.t_end());
        t >= a.min(b) && t <= a.max(b)
    }

    /// Index `i` of the step with `times[i] <= t < times[i+1]` (in the
    /// direction of integration), clamped to the valid range.
    pub(crate) fn step_index(&self, t: f64) -> usize {
        let n = self.dense.len();
        if n == 0 {
            return 0;
        }
        let dir = self.direction();
        // partition_point over the monotone sequence dir * times
        let k = self.times.partition_point(|&ti| dir * ti <= dir * t);
        k.saturating_sub(1).min(n - 1)
    }

    /// Interpolated state at time `t`. Sample times reproduce their samples
    /// exactly. Times outside the span are extrapolated by the nearest step.
    pub fn eval(&self, t: f64) -> [f64; N] {
        if self.dense.is_empty() {
            return self.states[0];
        }
        if t == self.t_end() {
            return self.last_state();
        }
        let i = self.step_index(t);
        if t == self.times[i] {
            return self.states[i];
        }
        let step = &self.dense[i];
        step.eval_at((t - step.t_old) / step.h)
    }

    /// Cumulative integral of `g(t, y(t))` from the first sample, evaluated at
    /// every sample time with 8-point Gauss–Legendre on each step of the
    /// interpolant. The integral is oriented (negative steps give negative
    /// contributions).
    pub fn cumulative_integral<G>(&self, g: G) -> Vec<f64>
    where
        G: Fn(f64, &[f64; N]) -> f64,
    {
        let mut out = Vec::with_capacity(self.times.len());
        let mut acc = 0.0;
        out.push(0.0);
        for step in &self.dense {
            acc += step_integral(step, &g, 0.0, 1.0);
            out.push(acc);
        }
        out
    }

    /// Oriented integral of `g(t, y(t))` from `ta` to `tb` over the interpolant.
    pub fn integral<G>(&self, g: G, ta: f64, tb: f64) -> f64
    where
        G: Fn(f64, &[f64; N]) -> f64,
    {
        if ta == tb || self.dense.is_empty() {
            return 0.0;
        }
        let dir = self.direction();
        let (lo, hi, sign) = if dir * ta <= dir * tb { (ta, tb, 1.0) } else { (tb, ta, -1.0) };
        let i0 = self.step_index(lo);
        let i1 = self.step_index(hi);
        let mut acc = 0.0;
        for i in i0..=i1 {
            let step = &self.dense[i];
            let s_lo = if i == i0 { (lo - step.t_old) / step.h } else { 0.0 };
            let s_hi = if i == i1 { (hi - step.t_old) / step.h } else { 1.0 };
            if s_hi > s_lo {
                acc += step_integral(step, &g, s_lo, s_hi);
            }
        }
        sign * acc
    }

    /// Uniformly spaced samples of the interpolant on `[ta, tb]`.
    pub fn resample(&self, ta: f64, tb: f64, n: usize) -> Vec<(f64, [f64; N])> {
        assert!(n >= 2, "resample needs at least two points");
        (0..n)
            .map(|k| {
                let t = if k == n - 1 { tb } else { ta + (tb - ta) * (k as f64) / ((n - 1) as f64) };
                (t, self.eval(t))
            })
            .collect()
    }
}

fn step_integral<const N: usize, G>(step: &DenseStep<N>, g: &G, s_lo: f64, s_hi: f64) -> f64
where
    G: Fn(f64, &[f64; N]) -> f64,
{
    let half = 0.5 * (s_hi - s_lo);
    let mid = 0.5 * (s_hi + s_lo);
    let mut acc = 0.0;
    for &(x, w) in GL8.iter() {
        for sign in [-1.0, 1.0] {
            let s = mid + sign * half * x;
            let t = step.t_old + s * step.h;
            acc += w * g(t, &step.eval_at(s));
        }
    }
    acc * half * step.h
}
