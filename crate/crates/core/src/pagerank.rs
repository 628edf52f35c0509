//! PageRank on citation networks.
//!
//! Score flows from the citing to the cited institution. Each citing
//! institution splits its outgoing weight in proportion to its citation
//! counts, and the iteration
//!
//! ```text
//! π(n+1) = (1 − d)/N · 1 + d · W̃ π(n)
//! ```
//!
//! is run from the uniform vector until the L1 change drops below the
//! tolerance. Institutions without outgoing citations (dangling nodes) are
//! handled according to [`DanglingPolicy`].

use std::io::Write;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::citegraph::CitationNetwork;
use crate::error::{Error, Result};
use crate::fmt::fmt_num;

/// Largest network the dense oracle accepts.
pub const ORACLE_MAX_NODES: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DanglingPolicy {
    /// Mass sitting on dangling nodes is spread uniformly over all nodes
    /// before damping, keeping the iterate a probability vector.
    #[default]
    UniformRedistribution,
    /// Mass sitting on dangling nodes is dropped; only the teleport term
    /// reaches the rest of the network. The final vector is rescaled to
    /// sum to one.
    TeleportOnly,
}

impl std::str::FromStr for DanglingPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uniform" | "uniform_redistribution" => Ok(Self::UniformRedistribution),
            "teleport" | "teleport_only" => Ok(Self::TeleportOnly),
            other => Err(Error::InvalidConfig(format!("unknown dangling policy `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PageRankConfig {
    pub damping: f64,
    pub tolerance: f64,
    pub max_iterations: usize,
    pub dangling_policy: DanglingPolicy,
}

impl Default for PageRankConfig {
    fn default() -> Self {
        Self {
            damping: 0.85,
            tolerance: 1e-12,
            max_iterations: 1000,
            dangling_policy: DanglingPolicy::UniformRedistribution,
        }
    }
}

impl PageRankConfig {
    pub fn with_damping(mut self, damping: f64) -> Self {
        self.damping = damping;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..1.0).contains(&self.damping) {
            return Err(Error::InvalidConfig(format!("damping {} outside [0, 1)", self.damping)));
        }
        if !(self.tolerance > 0.0) {
            return Err(Error::InvalidConfig(format!("tolerance {} must be > 0", self.tolerance)));
        }
        if self.max_iterations == 0 {
            return Err(Error::InvalidConfig("max_iterations must be >= 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PageRankResult {
    pub scores: Vec<f64>,
    pub iterations_used: usize,
    pub converged: bool,
    pub final_delta: f64,
}

/// Column-stochastic transition structure, stored by target.
#[derive(Debug, Clone, PartialEq)]
pub struct Transition {
    /// For each target, `(source, share)` pairs in ascending source order.
    incoming: Vec<Vec<(usize, f64)>>,
    dangling: Vec<bool>,
}

impl Transition {
    pub fn len(&self) -> usize {
        self.dangling.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dangling.is_empty()
    }

    pub fn is_dangling(&self, node: usize) -> bool {
        self.dangling[node]
    }

    pub fn dangling(&self) -> &[bool] {
        &self.dangling
    }

    pub fn incoming(&self, target: usize) -> &[(usize, f64)] {
        &self.incoming[target]
    }

    /// Share of `source`'s outgoing citations that go to `target`.
    pub fn share(&self, source: usize, target: usize) -> f64 {
        self.incoming[target]
            .binary_search_by_key(&source, |&(s, _)| s)
            .map(|i| self.incoming[target][i].1)
            .unwrap_or(0.0)
    }
}

/// Normalizes each institution's outgoing weights to sum to one and flags
/// institutions that cite nobody.
pub fn normalize_weights(net: &CitationNetwork) -> Transition {
    let n = net.len();
    let mut out_weight = vec![0u64; n];
    for (s, _, w) in net.edges() {
        out_weight[s] += w;
    }
    let mut incoming = vec![Vec::new(); n];
    // edges() is ordered by source, so each incoming list ends up sorted.
    for (s, t, w) in net.edges() {
        incoming[t].push((s, w as f64 / out_weight[s] as f64));
    }
    Transition {
        incoming,
        dangling: out_weight.iter().map(|&w| w == 0).collect(),
    }
}

/// Power iteration from the uniform vector.
///
/// Returns the last iterate with `converged = false` when the iteration
/// budget runs out.
pub fn pagerank(net: &CitationNetwork, cfg: &PageRankConfig) -> Result<PageRankResult> {
    cfg.validate()?;
    let n = net.len();
    if n == 0 {
        return Err(Error::EmptyNetwork);
    }
    let trans = normalize_weights(net);
    let nf = n as f64;
    let d = cfg.damping;
    let teleport = (1.0 - d) / nf;

    let mut current = vec![1.0 / nf; n];
    let mut next = vec![0.0; n];
    let mut delta = f64::INFINITY;
    let mut iterations = 0;

    while iterations < cfg.max_iterations {
        iterations += 1;
        let dangling_share = match cfg.dangling_policy {
            DanglingPolicy::UniformRedistribution => {
                trans
                    .dangling
                    .iter()
                    .zip(&current)
                    .filter(|(&is_d, _)| is_d)
                    .map(|(_, &p)| p)
                    .sum::<f64>()
                    / nf
            }
            DanglingPolicy::TeleportOnly => 0.0,
        };
        for (target, slot) in next.iter_mut().enumerate() {
            let inflow: f64 = trans.incoming[target]
                .iter()
                .map(|&(s, share)| share * current[s])
                .sum();
            *slot = teleport + d * (inflow + dangling_share);
        }
        delta = next.iter().zip(&current).map(|(a, b)| (a - b).abs()).sum();
        if !delta.is_finite() {
            return Err(Error::NumericFailure(format!(
                "non-finite update at iteration {iterations}"
            )));
        }
        std::mem::swap(&mut current, &mut next);
        if delta < cfg.tolerance {
            break;
        }
    }

    let total: f64 = current.iter().sum();
    if !(total > 0.0) || !total.is_finite() {
        return Err(Error::NumericFailure(format!("score mass {total}")));
    }
    // uniform redistribution conserves mass already; only teleport-only
    // leaks it and needs rescaling
    if cfg.dangling_policy == DanglingPolicy::TeleportOnly {
        for p in &mut current {
            *p /= total;
        }
    }
    Ok(PageRankResult {
        scores: current,
        iterations_used: iterations,
        converged: delta < cfg.tolerance,
        final_delta: delta,
    })
}

/// Dense direct solve of the fixed-point equation, for cross-checking the
/// iterative solver on small networks.
pub fn pagerank_oracle(net: &CitationNetwork, cfg: &PageRankConfig) -> Result<Vec<f64>> {
    cfg.validate()?;
    let n = net.len();
    if n == 0 {
        return Err(Error::EmptyNetwork);
    }
    if n > ORACLE_MAX_NODES {
        return Err(Error::OracleTooLarge { n, limit: ORACLE_MAX_NODES });
    }
    let nf = n as f64;
    let d = cfg.damping;

    let mut out_weight = vec![0.0; n];
    for (s, _, w) in net.edges() {
        out_weight[s] += w as f64;
    }
    // transition[(i, j)] = probability of moving from j to i
    let mut transition = DMatrix::<f64>::zeros(n, n);
    for (s, t, w) in net.edges() {
        transition[(t, s)] += w as f64 / out_weight[s];
    }
    if cfg.dangling_policy == DanglingPolicy::UniformRedistribution {
        for j in (0..n).filter(|&j| out_weight[j] == 0.0) {
            for i in 0..n {
                transition[(i, j)] = 1.0 / nf;
            }
        }
    }
    let system = DMatrix::<f64>::identity(n, n) - transition * d;
    let rhs = DVector::<f64>::from_element(n, (1.0 - d) / nf);
    let solution = system
        .lu()
        .solve(&rhs)
        .ok_or_else(|| Error::NumericFailure("singular PageRank system".into()))?;
    let total = solution.sum();
    Ok(solution.iter().map(|p| p / total).collect())
}

/// Node indices ordered by descending score, ties by ascending id.
pub fn ranking_order(ids: &[String], scores: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| {
        scores[b]
            .partial_cmp(&scores[a])
            .unwrap_or(std::cmp::Ordering::Equal)
            .then_with(|| ids[a].cmp(&ids[b]))
    });
    order
}

/// Writes `rank,institution,pagerank_score` plus one column per entry of
/// `extra` (name, per-node values), sorted by descending score.
pub fn write_ranking_csv<W: Write>(
    ids: &[String],
    scores: &[f64],
    extra: &[(&str, &[f64])],
    writer: W,
) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    let mut header = vec!["rank", "institution", "pagerank_score"];
    header.extend(extra.iter().map(|(name, _)| *name));
    w.write_record(&header)?;
    for (rank, i) in ranking_order(ids, scores).into_iter().enumerate() {
        let mut row = vec![(rank + 1).to_string(), ids[i].clone(), fmt_num(scores[i])];
        row.extend(extra.iter().map(|(_, col)| fmt_num(col[i])));
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}
