use nalgebra::{Matrix3, Vector3};
use serde::{Deserialize, Serialize};

use super::PancakeError;

pub const MIN_LENGTH: f64 = 10.0;
pub const MIN_GRID: usize = 1000;

/// The blend occupies `(center − half_width, center + half_width)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlendParams {
    pub center: f64,
    pub half_width: f64,
}

impl Default for BlendParams {
    fn default() -> Self {
        Self { center: 1.0, half_width: 0.5 }
    }
}

impl BlendParams {
    pub fn start(&self) -> f64 {
        self.center - self.half_width
    }

    pub fn end(&self) -> f64 {
        self.center + self.half_width
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Region {
    Cap,
    Blend,
    Neck,
}

/// Values and first two derivatives of `f₁` and `f₂` at one point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Jet {
    pub f1: [f64; 3],
    pub f2: [f64; 3],
}

/// Smoothness defects at the two singular orbits. All vanish for a metric
/// that closes up smoothly.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrbitResiduals {
    /// `f₂′(0) − 1`
    pub s2_slope: f64,
    /// `f₁′(L+1) + 1`
    pub s1_slope: f64,
    /// `max(|f₁′(0)|, |f₂″(0)|, |f₁″(L+1)|, |f₂′(L+1)|)`: odd/even parity at the orbits.
    pub parity: f64,
}

impl OrbitResiduals {
    pub fn max(&self) -> f64 {
        self.s2_slope.abs().max(self.s1_slope.abs()).max(self.parity)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PancakeProfile {
    pub length: f64,
    pub blend: BlendParams,
    /// `f₂′` on the blend as a quartic in `u = (r − start)/width`.
    pub f2_blend: [f64; 5],
    pub r: Vec<f64>,
    pub f1: Vec<f64>,
    pub f2: Vec<f64>,
    pub df1: Vec<f64>,
    pub df2: Vec<f64>,
    pub d2f1: Vec<f64>,
    pub d2f2: Vec<f64>,
}

/// Quintic smoothstep and its first two derivatives in `u`.
fn smoothstep(u: f64) -> [f64; 3] {
    let u2 = u * u;
    [u2 * u * (10.0 - 15.0 * u + 6.0 * u2), 30.0 * u2 * (1.0 - u) * (1.0 - u), 60.0 * u * (1.0 - u) * (1.0 - 2.0 * u)]
}

/// Antiderivative of the smoothstep vanishing at 0.
fn smoothstep_integral(u: f64) -> f64 {
    let u2 = u * u;
    u2 * u2 * (2.5 - 3.0 * u + u2)
}

fn quartic(c: &[f64; 5], u: f64) -> [f64; 3] {
    let v = c[0] + u * (c[1] + u * (c[2] + u * (c[3] + u * c[4])));
    let d = c[1] + u * (2.0 * c[2] + u * (3.0 * c[3] + u * 4.0 * c[4]));
    let i = u * (c[0] + u * (c[1] / 2.0 + u * (c[2] / 3.0 + u * (c[3] / 4.0 + u * c[4] / 5.0))));
    [i, v, d]
}

/// Quartic `g(u)` with `g(0) = cos a`, `g′(0) = −W sin a`, `g(1) = g′(1) = 0`
/// and `W∫₀¹g = 1 − sin a`, so that `f₂ = sin a + W∫g` meets `sin r` and 1 in C².
fn f2_blend_coefficients(b: &BlendParams) -> Result<[f64; 5], PancakeError> {
    let (a, w) = (b.start(), 2.0 * b.half_width);
    let (c0, c1) = (a.cos(), -w * a.sin());
    let m = Matrix3::new(1.0, 1.0, 1.0, 2.0, 3.0, 4.0, 1.0 / 3.0, 1.0 / 4.0, 1.0 / 5.0);
    let rhs = Vector3::new(-c0 - c1, -c1, (1.0 - a.sin()) / w - c0 - c1 / 2.0);
    let sol = m.lu().solve(&rhs).ok_or_else(|| PancakeError::BlendInfeasible("singular blend system".into()))?;
    let c = [c0, c1, sol[0], sol[1], sol[2]];

    // f₂″ ≤ 0 on the blend is what keeps −f₂″/f₂ non-negative.
    let n = 10_000;
    let worst = (0..=n).map(|i| quartic(&c, i as f64 / n as f64)[2]).fold(f64::NEG_INFINITY, f64::max);
    if worst > 1e-12 {
        return Err(PancakeError::BlendInfeasible(format!("f2' increases on the blend (slope up to {worst:.3e})")));
    }
    Ok(c)
}

impl PancakeProfile {
    pub fn end(&self) -> f64 {
        self.length + 1.0
    }

    pub fn region(&self, r: f64) -> Region {
        if r <= self.blend.start() {
            Region::Cap
        } else if r < self.blend.end() {
            Region::Blend
        } else {
            Region::Neck
        }
    }

    /// Closed-form values and derivatives at any `r ∈ [0, L+1]`.
    pub fn jet(&self, r: f64) -> Jet {
        let (a, w) = (self.blend.start(), 2.0 * self.blend.half_width);
        let l = self.length;
        match self.region(r) {
            Region::Cap => Jet { f1: [l, 0.0, 0.0], f2: [r.sin(), r.cos(), -r.sin()] },
            Region::Neck => Jet { f1: [l + 1.0 - r, -1.0, 0.0], f2: [1.0, 0.0, 0.0] },
            Region::Blend => {
                let u = (r - a) / w;
                let s = smoothstep(u);
                let g = quartic(&self.f2_blend, u);
                Jet {
                    f1: [l - w * smoothstep_integral(u), -s[0], -s[1] / w],
                    f2: [a.sin() + w * g[0], g[1], g[2] / w],
                }
            }
        }
    }

    pub fn orbit_residuals(&self) -> OrbitResiduals {
        let (j0, j1) = (self.jet(0.0), self.jet(self.end()));
        OrbitResiduals {
            s2_slope: j0.f2[1] - 1.0,
            s1_slope: j1.f1[1] + 1.0,
            parity: j0.f1[1].abs().max(j0.f2[2].abs()).max(j1.f1[2].abs()).max(j1.f2[1].abs()),
        }
    }
}

/// Builds the profile on `grid_n` equally spaced points of `[0, L+1]`.
pub fn build_profile(length: f64, blend: BlendParams, grid_n: usize) -> Result<PancakeProfile, PancakeError> {
    if !(length >= MIN_LENGTH) || !length.is_finite() {
        return Err(PancakeError::LengthTooSmall(length));
    }
    if grid_n < MIN_GRID {
        return Err(PancakeError::GridTooCoarse { got: grid_n, min: MIN_GRID });
    }
    if !(blend.half_width > 0.0 && blend.start() > 0.0 && blend.end() < length + 1.0) {
        return Err(PancakeError::BlendInfeasible(format!(
            "blend interval ({}, {}) must lie inside (0, L+1)",
            blend.start(),
            blend.end()
        )));
    }
    let f2_blend = f2_blend_coefficients(&blend)?;
    let mut p = PancakeProfile {
        length,
        blend,
        f2_blend,
        r: Vec::with_capacity(grid_n),
        f1: Vec::with_capacity(grid_n),
        f2: Vec::with_capacity(grid_n),
        df1: Vec::with_capacity(grid_n),
        df2: Vec::with_capacity(grid_n),
        d2f1: Vec::with_capacity(grid_n),
        d2f2: Vec::with_capacity(grid_n),
    };
    let end = length + 1.0;
    for i in 0..grid_n {
        let r = if i + 1 == grid_n { end } else { end * i as f64 / (grid_n - 1) as f64 };
        let j = p.jet(r);
        p.r.push(r);
        p.f1.push(j.f1[0]);
        p.f2.push(j.f2[0]);
        p.df1.push(j.f1[1]);
        p.df2.push(j.f2[1]);
        p.d2f1.push(j.f1[2]);
        p.d2f2.push(j.f2[2]);
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn profile(l: f64) -> PancakeProfile {
        build_profile(l, BlendParams::default(), 4001).unwrap()
    }

    #[test]
    fn endpoints_and_orbits() {
        let p = profile(10.0);
        assert_eq!(p.f1[0], 10.0);
        assert_eq!(*p.f2.last().unwrap(), 1.0);
        assert_eq!(p.f2[0], 0.0);
        assert_eq!(*p.f1.last().unwrap(), 0.0);
        assert!(p.orbit_residuals().max() < 1e-8);
        assert!(p.f1[..p.f1.len() - 1].iter().all(|&v| v > 0.0));
        assert!(p.f2[1..].iter().all(|&v| v > 0.0));
    }

    #[test]
    fn blends_are_c2_at_the_junctions() {
        let p = profile(20.0);
        for r in [p.blend.start(), p.blend.end()] {
            let (lo, hi) = (p.jet(r - 1e-12), p.jet(r + 1e-12));
            for k in 0..3 {
                assert!((lo.f1[k] - hi.f1[k]).abs() < 1e-9, "f1 derivative {k} at {r}");
                assert!((lo.f2[k] - hi.f2[k]).abs() < 1e-9, "f2 derivative {k} at {r}");
            }
        }
    }

    #[test]
    fn derivatives_match_finite_differences() {
        let p = profile(10.0);
        let h = 1e-5;
        for r in [0.55, 0.8, 1.0, 1.2, 1.45] {
            let (m, c, pl) = (p.jet(r - h), p.jet(r), p.jet(r + h));
            for i in 1..3 {
                let d1 = (pl.f1[i - 1] - m.f1[i - 1]) / (2.0 * h);
                let d2 = (pl.f2[i - 1] - m.f2[i - 1]) / (2.0 * h);
                assert!((d1 - c.f1[i]).abs() < 1e-7 && (d2 - c.f2[i]).abs() < 1e-7, "r = {r}, order {i}");
            }
        }
    }

    #[test]
    fn monotone_blends() {
        let p = profile(10.0);
        for (i, &r) in p.r.iter().enumerate() {
            if p.region(r) == Region::Blend {
                assert!(p.d2f1[i] <= 0.0 && p.d2f2[i] <= 1e-15 && p.df2[i] >= -1e-15 && p.df1[i] <= 0.0);
            }
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(build_profile(5.0, BlendParams::default(), 2000), Err(PancakeError::LengthTooSmall(_))));
        assert!(matches!(build_profile(10.0, BlendParams::default(), 10), Err(PancakeError::GridTooCoarse { .. })));
        let narrow = BlendParams { center: 1.0, half_width: 0.2 };
        assert!(matches!(build_profile(10.0, narrow, 2000), Err(PancakeError::BlendInfeasible(_))));
        let outside = BlendParams { center: 0.5, half_width: 0.6 };
        assert!(matches!(build_profile(10.0, outside, 2000), Err(PancakeError::BlendInfeasible(_))));
    }
}
