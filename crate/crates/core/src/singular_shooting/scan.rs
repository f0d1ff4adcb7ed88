use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::newton::{jacobian, residual_at};
use super::shoot::{shoot_curve_point, shoot_surface_point, MeetPoint};
use super::sweep::SweepError;
use super::{S1ShootParam, S2ShootParam, ShootConfig};

/// Axis-aligned parameter box `[δ₁] × [δ₂] × [δ₃]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanBox {
    pub d1: (f64, f64),
    pub d2: (f64, f64),
    pub d3: (f64, f64),
}

impl Default for ScanBox {
    fn default() -> Self {
        Self { d1: (0.0, 10.0), d2: (-1.0, 0.0), d3: (0.0, 40.0) }
    }
}

impl ScanBox {
    fn axes(&self) -> [(f64, f64); 3] {
        [self.d1, self.d2, self.d3]
    }

    fn is_valid(&self) -> bool {
        self.axes().iter().all(|&(lo, hi)| lo.is_finite() && hi.is_finite() && lo < hi)
    }
}

/// A cell whose value of `|F|∞` is no larger than at any of its 26 neighbours.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanMinimum {
    pub index: [usize; 3],
    pub lo: [f64; 3],
    pub hi: [f64; 3],
    /// Best point found inside the cell and its `|F|∞`.
    pub best: [f64; 3],
    pub residual: f64,
    /// Residual at which the local Newton step `Δ = −J⁻¹F` from `best` would
    /// just reach the cell boundary: `|F|∞ / maxⱼ (|Δⱼ| / roomⱼ)`, where
    /// `roomⱼ` is the distance to the cell face in the direction of `Δⱼ`.
    /// `residual < bound` iff the linear model puts a root inside the cell.
    /// Zero when the Jacobian is singular or the shots fail.
    pub bound: f64,
    /// Set when Newton polishing from `best` converged inside the cell.
    pub root: Option<[f64; 3]>,
}

impl ScanMinimum {
    pub fn contains(&self, p: [f64; 3]) -> bool {
        (0..3).all(|j| self.lo[j] <= p[j] && p[j] <= self.hi[j])
    }

    pub fn below_bound(&self) -> bool {
        self.residual < self.bound
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    pub scan_box: ScanBox,
    pub resolution: usize,
    pub subdivisions: usize,
    pub evaluated: usize,
    /// Cells where every sub-grid shot failed.
    pub failed: usize,
    /// Sorted by residual.
    pub minima: Vec<ScanMinimum>,
}

/// Sub-grid points per cell and axis used by [`scan_domain`].
pub const DEFAULT_SUBDIVISIONS: usize = 8;
const POLISH_STEPS: usize = 10;
const POLISH_TOL: f64 = 1e-10;

/// Newton iteration from `start`, keeping only iterates inside `[lo, hi]`.
fn polish(start: [f64; 3], f0: f64, lo: [f64; 3], hi: [f64; 3], cfg: &ShootConfig) -> ([f64; 3], f64, bool) {
    let inside = |p: &[f64; 3]| (0..3).all(|j| lo[j] <= p[j] && p[j] <= hi[j]);
    let (mut d, mut v) = (start, f0);
    for _ in 0..POLISH_STEPS {
        if v < POLISH_TOL {
            return (d, v, true);
        }
        let Ok(f) = residual_at(d, cfg) else { break };
        let Ok(jac) = jacobian(d, 1e-6, cfg) else { break };
        let Some(step) = jac.lu().solve(&(-f)) else { break };
        let mut lambda = 1.0;
        let mut next = None;
        for _ in 0..10 {
            let trial: [f64; 3] = std::array::from_fn(|j| d[j] + lambda * step[j]);
            if inside(&trial) {
                if let Ok(ft) = residual_at(trial, cfg) {
                    if ft.amax() < v {
                        next = Some((trial, ft.amax()));
                        break;
                    }
                }
            }
            lambda *= 0.5;
        }
        let Some((p, pv)) = next else { break };
        d = p;
        v = pv;
    }
    (d, v, v < POLISH_TOL)
}

fn grid_bound(cell: &ScanMinimum, cfg: &ShootConfig) -> f64 {
    let (Ok(f), Ok(jac)) = (residual_at(cell.best, cfg), jacobian(cell.best, 1e-6, cfg)) else { return 0.0 };
    let Some(step) = jac.lu().solve(&(-f)) else { return 0.0 };
    let room = |j: usize| if step[j] > 0.0 { cell.hi[j] - cell.best[j] } else { cell.best[j] - cell.lo[j] };
    let reach = (0..3).filter(|&j| step[j] != 0.0).map(|j| step[j].abs() / room(j)).fold(0.0, f64::max);
    if reach == 0.0 {
        f64::INFINITY
    } else if reach.is_finite() {
        f.amax() / reach
    } else {
        0.0
    }
}

/// [`scan_domain_with`] at [`DEFAULT_SUBDIVISIONS`].
pub fn scan_domain(scan_box: &ScanBox, resolution: usize, cfg: &ShootConfig) -> Result<ScanReport, SweepError> {
    scan_domain_with(scan_box, resolution, DEFAULT_SUBDIVISIONS, cfg)
}

/// Scans a `resolution³` cell grid for grid-local minima of the cell-wise
/// smallest `|F|∞`.
///
/// Each cell is sampled on a `subdivisions³` sub-grid of sub-cell centres.
/// The mismatch separates into an S¹ part depending on δ₁ only and an S²
/// part depending on (δ₂, δ₃), so the whole scan costs `resolution·subdivisions`
/// S¹ shots and `(resolution·subdivisions)²` S² shots. The best sub-grid point
/// of every cell is then polished by Newton steps confined to the cell.
/// Failed shots count as +∞.
pub fn scan_domain_with(
    scan_box: &ScanBox,
    resolution: usize,
    subdivisions: usize,
    cfg: &ShootConfig,
) -> Result<ScanReport, SweepError> {
    if resolution < 2 {
        return Err(SweepError::TooFewSamples { min: 2, got: resolution });
    }
    if subdivisions < 1 {
        return Err(SweepError::TooFewSamples { min: 1, got: subdivisions });
    }
    if !scan_box.is_valid() {
        let (lo, hi) = scan_box.axes().into_iter().find(|&(lo, hi)| !(lo < hi)).unwrap_or((f64::NAN, f64::NAN));
        return Err(SweepError::BadRange { lo, hi });
    }
    let n = resolution;
    let m = n * subdivisions;
    let axes = scan_box.axes();
    let edge = |j: usize, i: usize| {
        if i == n {
            axes[j].1
        } else {
            axes[j].0 + (axes[j].1 - axes[j].0) * i as f64 / n as f64
        }
    };
    let fine = |j: usize, i: usize| axes[j].0 + (axes[j].1 - axes[j].0) * (i as f64 + 0.5) / m as f64;

    let s1: Vec<Option<[f64; 3]>> = (0..m)
        .into_par_iter()
        .map(|i| shoot_curve_point(&S1ShootParam::new(fine(0, i)), cfg).ok().map(|r| r.0.to_array()))
        .collect();
    let s2: Vec<Option<[f64; 3]>> = (0..m * m)
        .into_par_iter()
        .map(|ij| {
            let p = S2ShootParam::new(fine(1, ij / m), fine(2, ij % m));
            shoot_surface_point(&p, cfg).ok().map(|r: (MeetPoint, _)| r.0.to_array())
        })
        .collect();

    let at = |f: [usize; 3]| -> Option<[f64; 3]> {
        let (a, b) = (s1[f[0]]?, s2[f[1] * m + f[2]]?);
        Some(std::array::from_fn(|k| a[k] - b[k]))
    };
    let amax = |v: [f64; 3]| v.iter().fold(0.0f64, |acc, x| acc.max(x.abs()));
    let norm_at = |f: [usize; 3]| at(f).map_or(f64::INFINITY, amax);

    let unflat = |c: usize| [c / (n * n), (c / n) % n, c % n];
    let cells: Vec<ScanMinimum> = (0..n * n * n)
        .into_par_iter()
        .map(|c| {
            let idx = unflat(c);
            let mut fbest = [0; 3];
            let mut v = f64::INFINITY;
            for a in 0..subdivisions {
                for b in 0..subdivisions {
                    for k in 0..subdivisions {
                        let f = [idx[0] * subdivisions + a, idx[1] * subdivisions + b, idx[2] * subdivisions + k];
                        let fv = norm_at(f);
                        if fv < v {
                            (fbest, v) = (f, fv);
                        }
                    }
                }
            }
            let lo = std::array::from_fn(|j| edge(j, idx[j]));
            let hi = std::array::from_fn(|j| edge(j, idx[j] + 1));
            let start = std::array::from_fn(|j| fine(j, fbest[j]));
            if !v.is_finite() {
                return ScanMinimum { index: idx, lo, hi, best: start, residual: v, bound: 0.0, root: None };
            }
            let (best, residual, converged) = polish(start, v, lo, hi, cfg);
            ScanMinimum { index: idx, lo, hi, best, residual, bound: 0.0, root: converged.then_some(best) }
        })
        .collect();
    let failed = cells.iter().filter(|c| !c.residual.is_finite()).count();

    let inside = |x: i64| (0..n as i64).contains(&x);
    let mut minima: Vec<ScanMinimum> = cells
        .iter()
        .filter(|cell| {
            let v = cell.residual;
            v.is_finite()
                && !(0..27).filter(|&o| o != 13).any(|o| {
                    let off = [o / 9, (o / 3) % 3, o % 3].map(|x| x as i64 - 1);
                    let nb: [i64; 3] = std::array::from_fn(|j| cell.index[j] as i64 + off[j]);
                    nb.iter().all(|&x| inside(x))
                        && cells[((nb[0] * n as i64 + nb[1]) * n as i64 + nb[2]) as usize].residual < v
                })
        })
        .cloned()
        .collect();
    minima.par_iter_mut().for_each(|cell| cell.bound = grid_bound(cell, cfg));
    minima.sort_by(|a, b| a.residual.total_cmp(&b.residual));
    Ok(ScanReport { scan_box: *scan_box, resolution, subdivisions, evaluated: n * n * n, failed, minima })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn resolution_two_evaluates_eight_cells() {
        let rep = scan_domain(&ScanBox::default(), 2, &ShootConfig::default()).unwrap();
        assert_eq!(rep.evaluated, 8);
        assert!(!rep.minima.is_empty());
        assert!(scan_domain(&ScanBox::default(), 1, &ShootConfig::default()).is_err());
    }

    #[test]
    fn round_root_cell_is_a_minimum() {
        let b = ScanBox { d1: (0.0, 0.2), d2: (-0.9, -0.7), d3: (0.4, 0.8) };
        let rep = scan_domain(&b, 6, &ShootConfig::default()).unwrap();
        let root = [1.0 / 18.0, -7.0 / 9.0, 1.0 / 3.0f64.sqrt()];
        assert_eq!(rep.minima.len(), 1, "{:#?}", rep.minima);
        assert!(rep.minima[0].contains(root));
        assert!(rep.minima[0].below_bound());
        assert!(rep.minima[0].root.is_some());
    }

    #[test]
    fn box_without_root_has_positive_floor() {
        let b = ScanBox { d1: (1.0, 10.0), ..ScanBox::default() };
        let rep = scan_domain_with(&b, 4, 4, &ShootConfig::default()).unwrap();
        assert!(!rep.minima.is_empty());
        assert!(rep.minima.iter().all(|m| m.residual > 1e-2 && !m.below_bound() && m.root.is_none()), "{:#?}", rep.minima);
    }
}
