use super::{S1ShootParam, S2ShootParam, ShootError};
use crate::soliton_models::{Chart, SolitonState};

/// Largest handoff distance accepted by the series starts.
pub const MAX_SERIES_EPS: f64 = 1e-3;

fn check_eps(eps: f64) -> Result<(), ShootError> {
    if !(eps > 0.0 && eps <= MAX_SERIES_EPS) {
        return Err(ShootError::EpsilonTooLarge(eps));
    }
    Ok(())
}

/// Odd series of the S¹-chart regular parts for a general constant λ:
/// `η = ((8δ₁ − λ)t, −λt/3, −2δ₁t, δ₁t) + O(t³)` with the cubic terms
/// fixed by the equations.
pub fn s1_series_eta_lambda(delta1: f64, lambda: f64, t: f64) -> [f64; 4] {
    let (d, l) = (delta1, lambda);
    let (dd, dl, ll) = (d * d, d * l, l * l);
    let t3 = t * t * t;
    [
        (8.0 * d - l) * t + (-232.0 * dd / 25.0 + 16.0 * dl / 25.0 - 11.0 * ll / 225.0) * t3,
        -l * t / 3.0 + (8.0 * dl / 15.0 - ll / 15.0) * t3,
        -2.0 * d * t + (124.0 * dd / 25.0 - 12.0 * dl / 25.0 + 2.0 * ll / 225.0) * t3,
        d * t + (-37.0 * dd / 50.0 + 3.0 * dl / 25.0 - ll / 450.0) * t3,
    ]
}

/// Regular parts at distance `t` from the S¹ orbit through third order;
/// leading terms `η = ((8δ₁ − 1)t, −t/3, −2δ₁t, δ₁t)`.
pub fn s1_series_eta(p: &S1ShootParam, t: f64) -> [f64; 4] {
    s1_series_eta_lambda(p.delta1, 1.0, t)
}

/// Regular parts at distance `s` from the S² orbit through third order
/// (fourth for the even component); leading terms
/// `η = ((δ₂+1)s, −(δ₂+1)s/2, (δ₃²−1)s/2, δ₃ − (δ₃−1)δ₃(δ₃+1)s²/4)`.
pub fn s2_series_eta(p: &S2ShootParam, s: f64) -> [f64; 4] {
    let (d2, d3) = (p.delta2, p.delta3);
    let (q2, q3) = (d2 * d2, d3 * d3);
    let m = (d3 - 1.0) * d3 * (d3 + 1.0);
    let (s2, s3) = (s * s, s * s * s);
    [
        (d2 + 1.0) * s - (2.0 * q2 + 3.0 * d2 + 2.0 * q3 * q3 - 4.0 * q3 + 3.0) / 10.0 * s3,
        -0.5 * (d2 + 1.0) * s + (7.0 * q2 + 8.0 * d2 + 2.0 * q3 * q3 - 4.0 * q3 + 3.0) / 40.0 * s3,
        0.5 * (q3 - 1.0) * s - (d2 + q3) * (q3 - 1.0) / 8.0 * s3,
        d3 - 0.25 * m * s2 + m * (d2 + 2.0 * q3 - 1.0) / 32.0 * s2 * s2,
    ]
}

/// Series state at arc length `t_eps` from the S¹ orbit; error O(t_eps⁵).
pub fn s1_series_state(p: &S1ShootParam, t_eps: f64) -> Result<SolitonState, ShootError> {
    check_eps(t_eps)?;
    Ok(Chart::S1Orbit.to_state(t_eps, &s1_series_eta(p, t_eps)))
}

/// Series state at distance `s_eps` from the S² orbit; error O(s_eps⁵).
pub fn s2_series_state(p: &S2ShootParam, s_eps: f64) -> Result<SolitonState, ShootError> {
    check_eps(s_eps)?;
    let chart = Chart::S2Orbit { orbit_time: 0.0 };
    Ok(chart.to_state(-s_eps, &s2_series_eta(p, s_eps)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn s1_formula() {
        let s = s1_series_state(&S1ShootParam::new(0.0), 1e-4).unwrap();
        assert_abs_diff_eq!(s.xi, 2e4 - 1e-4, epsilon = 1e-11);
        assert_abs_diff_eq!(s.l1, -1e-4 / 3.0, epsilon = 1e-13);
        assert_abs_diff_eq!(s.l2, 1e4, epsilon = 1e-11);
        assert_abs_diff_eq!(s.r, 1e4, epsilon = 1e-11);
        assert_eq!(s1_series_state(&S1ShootParam::new(1.0), 2e-3), Err(ShootError::EpsilonTooLarge(2e-3)));
        assert!(s1_series_state(&S1ShootParam::new(1.0), 0.0).is_err());
    }

    #[test]
    fn s2_gaussian_and_round() {
        let s = 1e-3;
        let g = s2_series_state(&S2ShootParam::new(-1.0, 1.0), s).unwrap();
        assert_abs_diff_eq!(-g.xi, 1.0 / s - s, epsilon = 1e-12);
        assert_abs_diff_eq!(-g.l1, 1.0 / s, epsilon = 1e-12);
        assert_eq!(g.l2, 0.0);
        assert_eq!(g.r, 1.0);

        let r = s2_series_state(&S2ShootParam::new(-7.0 / 9.0, 1.0 / 3.0f64.sqrt()), s).unwrap();
        // closed-form round sphere near t = T = √3π/2
        let t = 3.0f64.sqrt() * std::f64::consts::FRAC_PI_2 - s;
        let a = t / 3.0f64.sqrt();
        let l1 = -a.tan() / 3.0f64.sqrt();
        let l2 = 1.0 / (a.tan() * 3.0f64.sqrt());
        assert_abs_diff_eq!(r.l1, l1, epsilon = 1e-9);
        assert_abs_diff_eq!(r.xi, l1 + 2.0 * l2, epsilon = 1e-9);
        assert_abs_diff_eq!(r.l2, l2, epsilon = 1e-14);
        assert_abs_diff_eq!(r.r, 1.0 / (3.0f64.sqrt() * a.sin()), epsilon = 1e-14);
    }

    #[test]
    fn round_sphere_through_third_order() {
        // R = 1/(√3 sin(t/√3)), L₂ = cot(t/√3)/√3, L₁ = −tan(t/√3)/√3, ξ = L₁ + 2L₂
        let t = 1e-2;
        let a = t / 3.0f64.sqrt();
        let st = Chart::S1Orbit.to_state(t, &s1_series_eta(&S1ShootParam::new(1.0 / 18.0), t));
        let l1 = -a.tan() / 3.0f64.sqrt();
        let l2 = 1.0 / (a.tan() * 3.0f64.sqrt());
        assert_abs_diff_eq!(st.r, 1.0 / (3.0f64.sqrt() * a.sin()), epsilon = 1e-11);
        assert_abs_diff_eq!(st.l2, l2, epsilon = 1e-11);
        assert_abs_diff_eq!(st.l1, l1, epsilon = 1e-11);
        assert_abs_diff_eq!(st.xi, l1 + 2.0 * l2, epsilon = 1e-11);
    }

    #[test]
    fn steady_series_has_no_l1() {
        let e = s1_series_eta_lambda(1.0, 0.0, 0.1);
        assert_eq!(e[1], 0.0);
        assert_abs_diff_eq!(e[3], 0.1 - 0.74e-3, epsilon = 1e-15);
    }

    #[test]
    fn s2_degenerate_delta3_one() {
        let st = s2_series_state(&S2ShootParam::new(0.0, 1.0), 1e-3).unwrap();
        assert_eq!(st.l2, 0.0);
        assert_eq!(st.r, 1.0);
    }
}
