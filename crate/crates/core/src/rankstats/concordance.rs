use crate::error::{Error, Result};
use crate::rankstats::ranks::{average_ranks, tie_groups};

/// Kendall's coefficient of concordance for `m` judges ranking `n` items.
///
/// Each row holds one judge's scores (or ranks) for the same items; rows
/// are converted to average ranks, and the denominator carries the usual
/// tie correction `Σ (t³ − t)` over every tie group of every judge.
pub fn kendall_w(rows: &[Vec<f64>]) -> Result<f64> {
    let m = rows.len();
    if m < 2 {
        return Err(Error::TooFewObservations { needed: 2, got: m });
    }
    let n = rows[0].len();
    if let Some(bad) = rows.iter().find(|r| r.len() != n) {
        return Err(Error::LengthMismatch { left: n, right: bad.len() });
    }
    if n < 2 {
        return Err(Error::TooFewObservations { needed: 2, got: n });
    }

    let mut rank_sums = vec![0.0; n];
    let mut tie_correction = 0.0;
    for row in rows {
        for (sum, r) in rank_sums.iter_mut().zip(average_ranks(row)) {
            *sum += r;
        }
        tie_correction += tie_groups(row)
            .into_iter()
            .map(|t| {
                let t = t as f64;
                t * t * t - t
            })
            .sum::<f64>();
    }
    let mean = rank_sums.iter().sum::<f64>() / n as f64;
    let s: f64 = rank_sums.iter().map(|r| (r - mean).powi(2)).sum();
    let (mf, nf) = (m as f64, n as f64);
    let denom = mf * mf * (nf * nf * nf - nf) - mf * tie_correction;
    if denom <= 0.0 {
        return Err(Error::UndefinedCorrelation("every ranking is fully tied".into()));
    }
    Ok((12.0 * s / denom).clamp(0.0, 1.0))
}
