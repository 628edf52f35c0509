use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rankstats::ranks::descending_ranks;

/// Descriptive statistics of |rank difference| between two score vectors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Displacement {
    pub n: usize,
    pub mean: f64,
    pub std: f64,
    pub p50: f64,
    pub p75: f64,
    pub p90: f64,
}

/// Nearest-rank percentile of ascending-sorted data: the value at 1-based
/// position `ceil(q/100 · n)`.
pub fn nearest_rank_percentile(sorted: &[f64], q: f64) -> f64 {
    let n = sorted.len();
    let pos = ((q / 100.0) * n as f64).ceil() as usize;
    sorted[pos.clamp(1, n) - 1]
}

/// Absolute position changes between the descending rankings of `a` and `b`.
pub fn rank_differences(a: &[f64], b: &[f64]) -> Result<Vec<f64>> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch { left: a.len(), right: b.len() });
    }
    let (ra, rb) = (descending_ranks(a), descending_ranks(b));
    Ok(ra.iter().zip(&rb).map(|(x, y)| (x - y).abs()).collect())
}

pub fn rank_displacement(a: &[f64], b: &[f64]) -> Result<Displacement> {
    let mut d = rank_differences(a, b)?;
    let n = d.len();
    if n == 0 {
        return Err(Error::TooFewObservations { needed: 1, got: 0 });
    }
    let mean = d.iter().sum::<f64>() / n as f64;
    let std = if n > 1 {
        (d.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64).sqrt()
    } else {
        0.0
    };
    d.sort_by(|x, y| x.total_cmp(y));
    Ok(Displacement {
        n,
        mean,
        std,
        p50: nearest_rank_percentile(&d, 50.0),
        p75: nearest_rank_percentile(&d, 75.0),
        p90: nearest_rank_percentile(&d, 90.0),
    })
}
