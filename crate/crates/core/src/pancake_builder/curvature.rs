use serde::{Deserialize, Serialize};

use super::profile::{PancakeProfile, Region, MIN_GRID};
use super::PancakeError;
use crate::soliton_models::CurvatureEigenvalues;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvatureSample {
    pub r: f64,
    pub eigenvalues: CurvatureEigenvalues,
    pub scalar: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProfileCurvature {
    pub samples: Vec<CurvatureSample>,
    /// Smallest eigenvalue, its name and location.
    pub min_eigenvalue: (f64, String, f64),
    pub scalar_min: (f64, f64),
    pub scalar_max: (f64, f64),
}

impl ProfileCurvature {
    /// Smallest `C` with `[min S, max S] ⊂ [1/C, C]`.
    pub fn scalar_constant(&self) -> f64 {
        self.scalar_max.0.max(1.0 / self.scalar_min.0)
    }
}

/// Curvature eigenvalues of `dr² + f₁²dθ² + f₂²g_{S²}` from the closed-form
/// jets, with the cap and neck values taken in the limit at the orbits.
pub fn eigenvalues_at(p: &PancakeProfile, r: f64) -> CurvatureEigenvalues {
    match p.region(r) {
        Region::Cap => CurvatureEigenvalues { k_t1: 0.0, k_s: 1.0, k_m: 0.0, k_t2: 1.0 },
        Region::Neck => CurvatureEigenvalues { k_t1: 0.0, k_s: 1.0, k_m: 0.0, k_t2: 0.0 },
        Region::Blend => {
            let j = p.jet(r);
            let ([f1, d1, dd1], [f2, d2, dd2]) = (j.f1, j.f2);
            CurvatureEigenvalues {
                k_t1: -dd1 / f1,
                k_s: (1.0 - d2 * d2) / (f2 * f2),
                k_m: -d1 * d2 / (f1 * f2),
                k_t2: -dd2 / f2,
            }
        }
    }
}

/// Golden-section search for the minimum of `f` on `[a, b]`.
fn golden_min(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> (f64, f64) {
    let inv_phi = (5.0f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while (b - a).abs() > 1e-12 * (1.0 + a.abs()) {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    (f(x), x)
}

/// Refines a grid minimum of `f` at index `i` when it lies in the blend.
fn refine_min(p: &PancakeProfile, f: &dyn Fn(f64) -> f64, i: usize, value: f64) -> (f64, f64) {
    let r = p.r[i];
    if p.region(r) != Region::Blend {
        return (value, r);
    }
    let lo = p.r[i.saturating_sub(1)].max(p.blend.start());
    let hi = p.r[(i + 1).min(p.r.len() - 1)].min(p.blend.end());
    let (v, at) = golden_min(f, lo, hi);
    if v < value {
        (v, at)
    } else {
        (value, r)
    }
}

pub fn profile_curvature(p: &PancakeProfile) -> Result<ProfileCurvature, PancakeError> {
    if p.r.len() < MIN_GRID {
        return Err(PancakeError::GridTooCoarse { got: p.r.len(), min: MIN_GRID });
    }
    let samples: Vec<CurvatureSample> = p
        .r
        .iter()
        .map(|&r| {
            let eigenvalues = eigenvalues_at(p, r);
            CurvatureSample { r, eigenvalues, scalar: eigenvalues.scalar_curvature() }
        })
        .collect();

    let argmin = |g: &dyn Fn(&CurvatureSample) -> f64| {
        samples.iter().enumerate().map(|(i, s)| (g(s), i)).fold((f64::INFINITY, 0), |m, v| if v.0 < m.0 { v } else { m })
    };

    let mut min_eigenvalue = (f64::INFINITY, String::new(), f64::NAN);
    for (k, name) in CurvatureEigenvalues::NAMES.iter().enumerate() {
        let (v, i) = argmin(&|s| s.eigenvalues.to_array()[k]);
        let (v, at) = refine_min(p, &|r| eigenvalues_at(p, r).to_array()[k], i, v);
        if v < min_eigenvalue.0 {
            min_eigenvalue = (v, name.to_string(), at);
        }
    }

    let scalar = |r: f64| eigenvalues_at(p, r).scalar_curvature();
    let (v, i) = argmin(&|s| s.scalar);
    let scalar_min = refine_min(p, &scalar, i, v);
    let (v, i) = argmin(&|s| -s.scalar);
    let (neg, at) = refine_min(p, &|r| -scalar(r), i, v);
    Ok(ProfileCurvature { samples, min_eigenvalue, scalar_min, scalar_max: (-neg, at) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pancake_builder::{build_profile, BlendParams};

    #[test]
    fn region_values() {
        let p = build_profile(10.0, BlendParams::default(), 2000).unwrap();
        let neck = eigenvalues_at(&p, 5.0);
        assert_eq!(neck.to_array(), [0.0, 1.0, 0.0, 0.0]);
        let cap = eigenvalues_at(&p, 0.25);
        assert_eq!(cap.to_array(), [0.0, 1.0, 0.0, 1.0]);
        // general formula agrees with the cap limit just inside the cap
        let j = p.jet(0.3);
        assert!(((1.0 - j.f2[1] * j.f2[1]) / (j.f2[0] * j.f2[0]) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn non_negative_and_l_uniform() {
        let mut c = 0.0f64;
        for l in [10.0, 20.0, 40.0] {
            let p = build_profile(l, BlendParams::default(), 10_000).unwrap();
            let k = profile_curvature(&p).unwrap();
            assert!(k.min_eigenvalue.0 >= -1e-9, "{:?}", k.min_eigenvalue);
            c = c.max(k.scalar_constant());
        }
        assert!(c > 6.0 && c < 20.0, "{c}");
    }

    #[test]
    fn grid_doubling_is_stable() {
        let a = profile_curvature(&build_profile(20.0, BlendParams::default(), 5_000).unwrap()).unwrap();
        let b = profile_curvature(&build_profile(20.0, BlendParams::default(), 10_000).unwrap()).unwrap();
        assert!((a.scalar_min.0 - b.scalar_min.0).abs() < 1e-6);
        assert!((a.scalar_max.0 - b.scalar_max.0).abs() < 1e-6);
        assert!((a.min_eigenvalue.0 - b.min_eigenvalue.0).abs() < 1e-6);
    }

    #[test]
    fn golden_section_finds_parabola_vertex() {
        let (v, x) = golden_min(|x| (x - 0.3) * (x - 0.3) + 2.0, 0.0, 1.0);
        assert!((x - 0.3).abs() < 1e-6 && (v - 2.0).abs() < 1e-12);
    }
}
