//! Direct-formula reference implementations and random input generators
//! shared by the integration and acceptance tests. Nothing here calls into
//! the library's statistics code.

#![allow(dead_code)]

use citerank::CitationNetwork;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random sample of length 3..=12. Half of the draws are small integers so
/// ties occur.
pub fn sample(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    if rng.random_bool(0.5) {
        (0..n).map(|_| f64::from(rng.random_range(0..5u32))).collect()
    } else {
        (0..n).map(|_| rng.random_range(0.0..10.0)).collect()
    }
}

pub fn has_variance(x: &[f64]) -> bool {
    x.iter().any(|&v| v != x[0])
}

/// Textbook single-pass form: (nΣxy − ΣxΣy) / sqrt((nΣx² − (Σx)²)(nΣy² − (Σy)²)).
pub fn pearson(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let (sx, sy) = (x.iter().sum::<f64>(), y.iter().sum::<f64>());
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| a * b).sum();
    let sxx: f64 = x.iter().map(|a| a * a).sum();
    let syy: f64 = y.iter().map(|b| b * b).sum();
    (n * sxy - sx * sy) / ((n * sxx - sx * sx) * (n * syy - sy * sy)).sqrt()
}

/// Ascending rank by counting: 1 + #smaller + (#equal others) / 2.
pub fn rank_by_counting(x: &[f64]) -> Vec<f64> {
    x.iter()
        .enumerate()
        .map(|(i, &v)| {
            let smaller = x.iter().filter(|&&w| w < v).count() as f64;
            let equal = x.iter().enumerate().filter(|&(j, &w)| j != i && w == v).count() as f64;
            1.0 + smaller + equal / 2.0
        })
        .collect()
}

pub fn spearman(x: &[f64], y: &[f64]) -> f64 {
    pearson(&rank_by_counting(x), &rank_by_counting(y))
}

/// Kendall's W in the rank-sum-of-squares form
/// (12 ΣR² − 3m²n(n+1)²) / (m²(n³ − n) − m ΣT).
pub fn kendall_w(rows: &[Vec<f64>]) -> f64 {
    let m = rows.len() as f64;
    let n = rows[0].len();
    let nf = n as f64;
    let ranks: Vec<Vec<f64>> = rows.iter().map(|r| rank_by_counting(r)).collect();
    let sum_sq: f64 = (0..n)
        .map(|j| ranks.iter().map(|r| r[j]).sum::<f64>().powi(2))
        .sum();
    let mut ties = 0.0;
    for row in rows {
        let mut seen: Vec<f64> = Vec::new();
        for &v in row {
            if !seen.contains(&v) {
                seen.push(v);
                let t = row.iter().filter(|&&w| w == v).count() as f64;
                ties += t * t * t - t;
            }
        }
    }
    (12.0 * sum_sq - 3.0 * m * m * nf * (nf + 1.0).powi(2)) / (m * m * (nf.powi(3) - nf) - m * ties)
}

/// Residuals of the least-squares line of `y` on `z`.
fn residuals(y: &[f64], z: &[f64]) -> Vec<f64> {
    let n = y.len() as f64;
    let (mz, my) = (z.iter().sum::<f64>() / n, y.iter().sum::<f64>() / n);
    let szz: f64 = z.iter().map(|v| (v - mz).powi(2)).sum();
    let szy: f64 = z.iter().zip(y).map(|(a, b)| (a - mz) * (b - my)).sum();
    let slope = szy / szz;
    y.iter().zip(z).map(|(b, a)| b - my - slope * (a - mz)).collect()
}

/// Partial correlation as the correlation of regression residuals.
pub fn partial(x: &[f64], y: &[f64], z: &[f64]) -> f64 {
    pearson(&residuals(x, z), &residuals(y, z))
}

/// Descending rank by counting: 1 + #larger + (#equal others) / 2.
pub fn desc_rank_by_counting(x: &[f64]) -> Vec<f64> {
    let neg: Vec<f64> = x.iter().map(|v| -v).collect();
    rank_by_counting(&neg)
}

/// (mean, sample std, p50, p75, p90) of |rank difference|; percentiles are
/// the smallest observed value with at least q% of the data at or below it.
pub fn displacement(a: &[f64], b: &[f64]) -> (f64, f64, f64, f64, f64) {
    let (ra, rb) = (desc_rank_by_counting(a), desc_rank_by_counting(b));
    let d: Vec<f64> = ra.iter().zip(&rb).map(|(x, y)| (x - y).abs()).collect();
    let n = d.len() as f64;
    let mean = d.iter().sum::<f64>() / n;
    let std = if d.len() > 1 {
        (d.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
    } else {
        0.0
    };
    let pct = |q: f64| {
        let mut candidates = d.clone();
        candidates.sort_by(|x, y| x.partial_cmp(y).unwrap());
        *candidates
            .iter()
            .find(|&&v| d.iter().filter(|&&w| w <= v).count() as f64 * 100.0 >= q * n)
            .unwrap()
    };
    (mean, std, pct(50.0), pct(75.0), pct(90.0))
}

/// Random network with `n` nodes; roughly `density` of ordered pairs are
/// linked with weights 1..=9, and about a fifth of the nodes are forced
/// dangling.
pub fn random_network(rng: &mut ChaCha8Rng, n: usize, density: f64) -> CitationNetwork {
    let dangling: Vec<bool> = (0..n).map(|_| rng.random_bool(0.2)).collect();
    let mut edges = Vec::new();
    for s in 0..n {
        if dangling[s] {
            continue;
        }
        for t in 0..n {
            if s != t && rng.random_bool(density) {
                edges.push((s, t, rng.random_range(1..10u64)));
            }
        }
    }
    let ids = (0..n).map(|i| format!("u{i:03}")).collect();
    CitationNetwork::new(ids, edges, "random", false).unwrap()
}

pub fn l1(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum()
}

pub fn median(values: &mut [f64]) -> f64 {
    values.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = values.len();
    if n % 2 == 1 {
        values[n / 2]
    } else {
        (values[n / 2 - 1] + values[n / 2]) / 2.0
    }
}
