use serde::{Deserialize, Serialize};

use super::Segment;
use crate::soliton_models::SolitonState;

/// `K = √(L₂² + (R − 1)²)` on a uniform grid with its difference quotient.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KMonitor {
    pub t: Vec<f64>,
    pub k: Vec<f64>,
    /// Central differences at the interior points, `NaN` at both ends.
    pub dk: Vec<f64>,
    /// Grid step (signed like the segment).
    pub h: f64,
    /// Largest amount by which `K(−½ − max(0, ξ)) ≤ K′ ≤ (½ + max(0, −ξ))K` fails.
    pub max_violation: f64,
    /// Smallest slack of the two inequalities (negative when violated).
    pub min_margin: f64,
    /// Largest gap between the difference quotient and `K′ = (L₂(R−1) − ξL₂²)/K`.
    pub fd_error: f64,
}

fn k_of(s: &SolitonState) -> f64 {
    s.l2.hypot(s.r - 1.0)
}

fn dk_exact(s: &SolitonState) -> f64 {
    let k = k_of(s);
    if k == 0.0 {
        return 0.0;
    }
    (s.l2 * (s.r - 1.0) - s.xi * s.l2 * s.l2) / k
}

/// Samples `K` at `n + 1` equally spaced points of the segment.
pub fn k_monitor(seg: &Segment, n: usize) -> KMonitor {
    let n = n.max(2);
    let h = (seg.t_b - seg.t_a) / n as f64;
    let t: Vec<f64> = (0..=n).map(|i| if i == n { seg.t_b } else { seg.t_a + h * i as f64 }).collect();
    let states: Vec<SolitonState> = t.iter().map(|&ti| seg.path.state_at(ti)).collect();
    let k: Vec<f64> = states.iter().map(k_of).collect();

    let mut dk = vec![f64::NAN; n + 1];
    let (mut max_violation, mut min_margin, mut fd_error) = (0.0f64, f64::INFINITY, 0.0f64);
    for i in 1..n {
        let d = (k[i + 1] - k[i - 1]) / (2.0 * h);
        dk[i] = d;
        let xi = states[i].xi;
        let lower = k[i] * (-0.5 - xi.max(0.0));
        let upper = k[i] * (0.5 + (-xi).max(0.0));
        let slack = (d - lower).min(upper - d);
        min_margin = min_margin.min(slack);
        max_violation = max_violation.max(-slack);
        fd_error = fd_error.max((d - dk_exact(&states[i])).abs());
    }
    KMonitor { t, k, dk, h: h.abs(), max_violation, min_margin, fd_error }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::singular_shooting::{shoot_surface_point, S2ShootParam, ShootConfig};

    fn monitor(d2: f64, d3: f64, n: usize) -> KMonitor {
        let (_, shot) = shoot_surface_point(&S2ShootParam::new(d2, d3), &ShootConfig::default()).unwrap();
        k_monitor(&Segment::of_shot(&shot), n)
    }

    #[test]
    fn gaussian_has_vanishing_k() {
        let m = monitor(-1.0, 1.0, 200);
        assert!(m.k.iter().all(|&k| k == 0.0));
        assert_eq!(m.max_violation, 0.0);
    }

    #[test]
    fn round_sphere_against_closed_form() {
        let m = monitor(-7.0 / 9.0, 1.0 / 3.0f64.sqrt(), 400);
        let big_t = 3.0f64.sqrt() * std::f64::consts::FRAC_PI_2;
        for (&t, &k) in m.t.iter().zip(&m.k) {
            let a = (big_t + t) / 3.0f64.sqrt();
            let l2 = 1.0 / (a.tan() * 3.0f64.sqrt());
            let r = 1.0 / (3.0f64.sqrt() * a.sin());
            assert!((k - l2.hypot(r - 1.0)).abs() < 1e-8, "t = {t}");
        }
        assert!(m.min_margin > 0.0, "{}", m.min_margin);
    }

    #[test]
    fn violations_are_finite_difference_sized() {
        let n = 400;
        let m = monitor(-0.9, 0.8, n);
        assert!(m.max_violation <= 10.0 * m.h * m.h, "{} vs h = {}", m.max_violation, m.h);
    }

    #[test]
    fn difference_error_is_second_order() {
        let coarse = monitor(-0.9, 0.8, 100).fd_error;
        let fine = monitor(-0.9, 0.8, 200).fd_error;
        let ratio = coarse / fine;
        assert!((3.5..4.5).contains(&ratio), "{coarse} {fine}");
    }
}
