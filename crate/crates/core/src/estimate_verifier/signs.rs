use serde::{Deserialize, Serialize};

use super::Segment;
use crate::ode_core::refine;

/// Eigenvalues smaller than this in magnitude everywhere count as identically zero.
pub const ZERO_BAND: f64 = 1e-9;

const SUBSTEPS: usize = 4;
const NAMES: [&str; 4] = ["k_t1", "k_s", "k_m", "k_t2"];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Extremum {
    pub value: f64,
    pub at: f64,
}

impl Extremum {
    fn none(sign: f64) -> Self {
        Self { value: sign * f64::INFINITY, at: f64::NAN }
    }
}

/// Minima of `k_t1 = ξL₁ + 1 − L₁²` and `k_s = R² − L₂²`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MaxPrincipleReport {
    pub k_t1: Extremum,
    pub k_s: Extremum,
}

impl MaxPrincipleReport {
    pub fn holds(&self, eps: f64) -> bool {
        self.k_t1.value >= -eps && self.k_s.value >= -eps
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenSign {
    pub name: String,
    pub min: Extremum,
    pub max: Extremum,
    /// `|k| < ZERO_BAND` at every sample.
    pub identically_zero: bool,
    /// Interior times where the eigenvalue crosses zero.
    pub sign_changes: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SignReport {
    /// In the order `k_t1, k_s, k_m, k_t2`.
    pub eigenvalues: Vec<EigenSign>,
}

impl SignReport {
    pub fn get(&self, name: &str) -> Option<&EigenSign> {
        self.eigenvalues.iter().find(|e| e.name == name)
    }

    pub fn total_sign_changes(&self) -> usize {
        self.eigenvalues.iter().map(|e| e.sign_changes.len()).sum()
    }
}

fn eigen_at(seg: &Segment, t: f64) -> [f64; 4] {
    seg.path.curvature_at(t).to_array()
}

pub fn max_principle_report(segs: &[Segment]) -> MaxPrincipleReport {
    let (mut k_t1, mut k_s) = (Extremum::none(1.0), Extremum::none(1.0));
    for seg in segs {
        for t in seg.sample_times(SUBSTEPS) {
            let k = eigen_at(seg, t);
            if k[0] < k_t1.value {
                k_t1 = Extremum { value: k[0], at: t };
            }
            if k[1] < k_s.value {
                k_s = Extremum { value: k[1], at: t };
            }
        }
    }
    MaxPrincipleReport { k_t1, k_s }
}

/// Sign-change inventory of all four curvature eigenvalues. Values inside
/// the zero band are skipped when looking for a change of sign, and each
/// change is located on the dense output.
pub fn sign_profile(segs: &[Segment]) -> SignReport {
    let mut out: Vec<EigenSign> = NAMES
        .iter()
        .map(|n| EigenSign {
            name: n.to_string(),
            min: Extremum::none(1.0),
            max: Extremum::none(-1.0),
            identically_zero: true,
            sign_changes: Vec::new(),
        })
        .collect();

    for seg in segs {
        let times = seg.sample_times(SUBSTEPS);
        let values: Vec<[f64; 4]> = times.iter().map(|&t| eigen_at(seg, t)).collect();
        for (i, rep) in out.iter_mut().enumerate() {
            let mut last: Option<(f64, f64)> = None;
            for (&t, k) in times.iter().zip(&values) {
                let v = k[i];
                if v < rep.min.value {
                    rep.min = Extremum { value: v, at: t };
                }
                if v > rep.max.value {
                    rep.max = Extremum { value: v, at: t };
                }
                if v.abs() < ZERO_BAND {
                    continue;
                }
                rep.identically_zero = false;
                if let Some((tp, vp)) = last {
                    if vp.signum() != v.signum() {
                        let root = refine(|s| eigen_at(seg, s)[i], tp, t, vp, v);
                        rep.sign_changes.push(root);
                    }
                }
                last = Some((t, v));
            }
        }
    }
    SignReport { eigenvalues: out }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::singular_shooting::{
        shoot_curve_point, shoot_s1_to_xi, shoot_s2_to_xi, shoot_surface_point, S1ShootParam, S2ShootParam,
        ShootConfig,
    };

    #[test]
    fn round_sphere_is_constant_curvature() {
        let cfg = ShootConfig::default();
        let (_, a) = shoot_curve_point(&S1ShootParam::new(1.0 / 18.0), &cfg).unwrap();
        let (_, b) = shoot_surface_point(&S2ShootParam::new(-7.0 / 9.0, 1.0 / 3.0f64.sqrt()), &cfg).unwrap();
        let segs = [Segment::of_shot(&a), Segment::of_shot(&b)];
        let mp = max_principle_report(&segs);
        assert!((mp.k_t1.value - 1.0 / 3.0).abs() < 1e-8, "{mp:?}");
        assert!((mp.k_s.value - 1.0 / 3.0).abs() < 1e-8, "{mp:?}");
        let sp = sign_profile(&segs);
        assert_eq!(sp.total_sign_changes(), 0);
        for e in &sp.eigenvalues {
            assert!((e.min.value - 1.0 / 3.0).abs() < 1e-7 && (e.max.value - 1.0 / 3.0).abs() < 1e-7, "{e:?}");
            assert!(!e.identically_zero);
        }
    }

    #[test]
    fn gaussian_flags_mixed_curvature_as_zero() {
        let shot = shoot_s2_to_xi(&S2ShootParam::new(-1.0, 1.0), 10.0, &ShootConfig::default()).unwrap();
        let segs = [Segment::of_shot(&shot)];
        let mp = max_principle_report(&segs);
        assert!(mp.k_t1.value.abs() < 1e-8 && (mp.k_s.value - 1.0).abs() < 1e-8, "{mp:?}");
        let sp = sign_profile(&segs);
        let km = sp.get("k_m").unwrap();
        assert!(km.identically_zero && km.sign_changes.is_empty());
        assert_eq!(sp.total_sign_changes(), 0);
    }

    #[test]
    fn large_delta1_keeps_k_t2_positive() {
        let shot = shoot_s1_to_xi(&S1ShootParam::new(1e4), 10.0, &ShootConfig::default()).unwrap();
        let sp = sign_profile(&[Segment::of_shot(&shot)]);
        let k = sp.get("k_t2").unwrap();
        assert!(k.min.value > 0.0 && k.sign_changes.is_empty(), "{k:?}");
    }

    #[test]
    fn non_soliton_shot_is_only_measured() {
        let (_, shot) = shoot_curve_point(&S1ShootParam::new(5.0), &ShootConfig::default()).unwrap();
        let mp = max_principle_report(&[Segment::of_shot(&shot)]);
        assert!(mp.k_t1.value.is_finite() && mp.k_s.value.is_finite());
    }

    #[test]
    fn sign_changes_are_interior_and_located() {
        let (_, shot) = shoot_curve_point(&S1ShootParam::new(5.0), &ShootConfig::default()).unwrap();
        let seg = Segment::of_shot(&shot);
        for e in sign_profile(&[seg]).eigenvalues {
            for t in e.sign_changes {
                assert!(seg.contains(t) && t != seg.t_a && t != seg.t_b);
                let i = NAMES.iter().position(|n| *n == e.name).unwrap();
                assert!(eigen_at(&seg, t)[i].abs() < 1e-8);
            }
        }
    }
}
