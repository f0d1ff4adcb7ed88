use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::shoot::{shoot_curve_point, shoot_surface_point, MeetPoint};
use super::{S1ShootParam, S2ShootParam, ShootConfig};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SweepError {
    #[error("need at least {min} samples per axis, got {got}")]
    TooFewSamples { min: usize, got: usize },
    #[error("invalid range [{lo}, {hi}]")]
    BadRange { lo: f64, hi: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", content = "reason", rename_all = "snake_case")]
pub enum SampleStatus {
    Ok,
    Failed(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveSample {
    pub delta1: f64,
    pub status: SampleStatus,
    pub meet: Option<MeetPoint>,
    /// Trajectory minima of `[k_t1, k_s, k_m, k_t2]`.
    pub curvature_min: Option<[f64; 4]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurfaceSample {
    pub delta2: f64,
    pub delta3: f64,
    pub status: SampleStatus,
    pub meet: Option<MeetPoint>,
    pub curvature_min: Option<[f64; 4]>,
}

fn check_range(lo: f64, hi: f64) -> Result<(), SweepError> {
    if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
        return Err(SweepError::BadRange { lo, hi });
    }
    Ok(())
}

fn linspace(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |i| if i + 1 == n { hi } else { lo + (hi - lo) * i as f64 / (n - 1) as f64 })
}

/// Shoots the S¹ side at `n` log-uniform values of δ₁ in `range`.
/// Failed shots are kept with their reason.
pub fn sample_curve(range: (f64, f64), n: usize, cfg: &ShootConfig) -> Result<Vec<CurveSample>, SweepError> {
    let (lo, hi) = range;
    check_range(lo, hi)?;
    if !(lo > 0.0) {
        return Err(SweepError::BadRange { lo, hi });
    }
    if n < 2 {
        return Err(SweepError::TooFewSamples { min: 2, got: n });
    }
    let deltas: Vec<f64> = linspace(lo.ln(), hi.ln(), n)
        .enumerate()
        .map(|(i, x)| if i == 0 { lo } else if i + 1 == n { hi } else { x.exp() })
        .collect();
    Ok(deltas
        .into_par_iter()
        .map(|d1| match shoot_curve_point(&S1ShootParam::new(d1), cfg) {
            Ok((meet, shot)) => CurveSample {
                delta1: d1,
                status: SampleStatus::Ok,
                meet: Some(meet),
                curvature_min: Some(shot.curvature_minima()),
            },
            Err(e) => CurveSample { delta1: d1, status: SampleStatus::Failed(e.to_string()), meet: None, curvature_min: None },
        })
        .collect())
}

/// Shoots the S² side on an `n2 × n3` uniform grid, δ₃ varying fastest.
pub fn sample_surface(
    d2_range: (f64, f64),
    d3_range: (f64, f64),
    n2: usize,
    n3: usize,
    cfg: &ShootConfig,
) -> Result<Vec<SurfaceSample>, SweepError> {
    check_range(d2_range.0, d2_range.1)?;
    check_range(d3_range.0, d3_range.1)?;
    for n in [n2, n3] {
        if n < 2 {
            return Err(SweepError::TooFewSamples { min: 2, got: n });
        }
    }
    let d3s: Vec<f64> = linspace(d3_range.0, d3_range.1, n3).collect();
    let nodes: Vec<(f64, f64)> =
        linspace(d2_range.0, d2_range.1, n2).flat_map(|d2| d3s.iter().map(move |&d3| (d2, d3))).collect();
    Ok(nodes
        .into_par_iter()
        .map(|(d2, d3)| match shoot_surface_point(&S2ShootParam::new(d2, d3), cfg) {
            Ok((meet, shot)) => SurfaceSample {
                delta2: d2,
                delta3: d3,
                status: SampleStatus::Ok,
                meet: Some(meet),
                curvature_min: Some(shot.curvature_minima()),
            },
            Err(e) => SurfaceSample {
                delta2: d2,
                delta3: d3,
                status: SampleStatus::Failed(e.to_string()),
                meet: None,
                curvature_min: None,
            },
        })
        .collect())
}
