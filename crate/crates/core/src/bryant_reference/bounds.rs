use serde::{Deserialize, Serialize};

use super::curve::{BryantCurve, TERMINAL_X};

/// Smallest signed margin of one inequality over its range.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Margin {
    pub name: String,
    pub range: (f64, f64),
    pub min: f64,
    pub at: f64,
}

impl Margin {
    pub(crate) fn over<I, F>(name: &str, range: (f64, f64), points: I, margin: F) -> Self
    where
        I: IntoIterator<Item = f64>,
        F: Fn(f64) -> Option<f64>,
    {
        let mut out = Margin { name: name.to_string(), range, min: f64::INFINITY, at: f64::NAN };
        for p in points {
            if let Some(m) = margin(p) {
                if m < out.min {
                    out.min = m;
                    out.at = p;
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FBoundsReport {
    /// `f − x/2` on `[0, 1]`, `x/2 + (1−x)² − f` on `[¾, 1]`,
    /// `f − (x − x²)` on `[0, ¼]`, `x − f` on `[0, 1]`.
    pub margins: Vec<Margin>,
    pub f_at_0_3: f64,
}

impl FBoundsReport {
    pub fn min_margin(&self) -> f64 {
        self.margins.iter().map(|m| m.min).fold(f64::INFINITY, f64::min)
    }
}

const GRID: usize = 10_000;

/// Margins of the four bounds on `f`, minimized over the curve's own
/// samples and a uniform grid of each range (lower end clipped to 1e-6).
pub fn verify_f_bounds(curve: &BryantCurve) -> FBoundsReport {
    let samples = curve.samples();
    let points = |lo: f64, hi: f64| {
        let lo = lo.max(TERMINAL_X);
        let grid = (0..=GRID).map(move |i| lo + (hi - lo) * i as f64 / GRID as f64);
        samples.iter().map(|s| s.0).filter(move |&x| lo <= x && x <= hi).chain(grid).collect::<Vec<_>>()
    };
    let f = |x: f64| curve.f(x);
    let margins = vec![
        Margin::over("f - x/2", (0.0, 1.0), points(0.0, 1.0), |x| f(x).map(|y| y - 0.5 * x)),
        Margin::over("x/2 + (1-x)^2 - f", (0.75, 1.0), points(0.75, 1.0), |x| {
            f(x).map(|y| 0.5 * x + (1.0 - x) * (1.0 - x) - y)
        }),
        Margin::over("f - (x - x^2)", (0.0, 0.25), points(0.0, 0.25), |x| f(x).map(|y| y - (x - x * x))),
        Margin::over("x - f", (0.0, 1.0), points(0.0, 1.0), |x| f(x).map(|y| x - y)),
    ];
    FBoundsReport { margins, f_at_0_3: curve.f(0.3).unwrap_or(f64::NAN) }
}
