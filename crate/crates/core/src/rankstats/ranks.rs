//! Rank assignment with averaged ties.

use std::cmp::Ordering;

/// 1-based ascending ranks; tied values share the mean of their positions.
pub fn average_ranks(values: &[f64]) -> Vec<f64> {
    ranks_by(values, |a, b| a.partial_cmp(b).unwrap_or(Ordering::Equal))
}

/// 1-based ranks with the largest value ranked first; ties averaged.
pub fn descending_ranks(values: &[f64]) -> Vec<f64> {
    ranks_by(values, |a, b| b.partial_cmp(a).unwrap_or(Ordering::Equal))
}

fn ranks_by(values: &[f64], cmp: impl Fn(&f64, &f64) -> Ordering) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| cmp(&values[a], &values[b]));
    let mut ranks = vec![0.0; values.len()];
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && cmp(&values[order[start]], &values[order[end]]) == Ordering::Equal {
            end += 1;
        }
        // positions start+1 ..= end share their mean
        let mean = (start + 1 + end) as f64 / 2.0;
        for &i in &order[start..end] {
            ranks[i] = mean;
        }
        start = end;
    }
    ranks
}

/// Sizes of each tie group in `values`.
pub fn tie_groups(values: &[f64]) -> Vec<usize> {
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap_or(Ordering::Equal));
    let mut groups = Vec::new();
    let mut start = 0;
    while start < sorted.len() {
        let end = sorted[start..].iter().take_while(|&&v| v == sorted[start]).count() + start;
        groups.push(end - start);
        start = end;
    }
    groups
}
