//! Seeded synthetic citation networks with optional citation cartels.
//!
//! Every node draws a Poisson number of outgoing citations. The citation
//! events are shuffled and replayed one at a time; each picks its target
//! with probability proportional to `(in_degree + 1)^attachment_exponent`,
//! where the in-degree counts distinct citers so far. Self-citation is
//! excluded.
//!
//! A cartel is injected after the base network is complete, so the same
//! seed yields the same base network with or without it. Members are the
//! `member_count` nodes of lowest in-degree (ties by index); every ordered
//! pair of members gets its weight raised to
//! `(base weight + 1) · internal_weight_boost`.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson};
use serde::{Deserialize, Serialize};

use crate::citegraph::{in_degree, CitationNetwork};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CartelSpec {
    pub member_count: usize,
    pub internal_weight_boost: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SynthConfig {
    pub n_nodes: usize,
    pub attachment_exponent: f64,
    pub mean_out_citations: f64,
    pub cartel: Option<CartelSpec>,
    pub seed: u64,
}

impl SynthConfig {
    pub fn new(n_nodes: usize, seed: u64) -> Self {
        Self {
            n_nodes,
            attachment_exponent: 1.0,
            mean_out_citations: 10.0,
            cartel: None,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_nodes == 0 {
            return Err(Error::InvalidConfig("n_nodes must be positive".into()));
        }
        if !(self.attachment_exponent >= 0.0) || !self.attachment_exponent.is_finite() {
            return Err(Error::InvalidConfig("attachment_exponent must be >= 0".into()));
        }
        if !(self.mean_out_citations > 0.0) || !self.mean_out_citations.is_finite() {
            return Err(Error::InvalidConfig("mean_out_citations must be > 0".into()));
        }
        if let Some(c) = self.cartel {
            if c.member_count >= self.n_nodes {
                return Err(Error::InvalidConfig("cartel must be smaller than the network".into()));
            }
            if !(c.internal_weight_boost >= 1.0) {
                return Err(Error::InvalidConfig("internal_weight_boost must be >= 1".into()));
            }
        }
        Ok(())
    }
}

/// Fenwick tree over non-negative weights supporting weighted sampling.
struct WeightTree {
    tree: Vec<f64>,
    weights: Vec<f64>,
}

impl WeightTree {
    fn new(weights: Vec<f64>) -> Self {
        let mut t = Self { tree: vec![0.0; weights.len() + 1], weights: vec![0.0; weights.len()] };
        for (i, w) in weights.into_iter().enumerate() {
            t.set(i, w);
        }
        t
    }

    fn set(&mut self, i: usize, w: f64) {
        let delta = w - self.weights[i];
        self.weights[i] = w;
        let mut k = i + 1;
        while k < self.tree.len() {
            self.tree[k] += delta;
            k += k & k.wrapping_neg();
        }
    }

    fn total(&self) -> f64 {
        let mut k = self.weights.len();
        let mut s = 0.0;
        while k > 0 {
            s += self.tree[k];
            k &= k - 1;
        }
        s
    }

    /// Index whose cumulative weight interval contains `u ∈ [0, total)`.
    fn find(&self, mut u: f64) -> usize {
        let n = self.weights.len();
        let mut pos = 0;
        let mut step = n.next_power_of_two();
        while step > 0 {
            let next = pos + step;
            if next <= n && self.tree[next] <= u {
                u -= self.tree[next];
                pos = next;
            }
            step >>= 1;
        }
        // skip zero-weight slots that rounding may land on
        let mut i = pos.min(n - 1);
        while self.weights[i] == 0.0 && i + 1 < n {
            i += 1;
        }
        i
    }
}

pub fn generate(cfg: &SynthConfig) -> Result<CitationNetwork> {
    cfg.validate()?;
    let n = cfg.n_nodes;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let poisson = Poisson::new(cfg.mean_out_citations)
        .map_err(|e| Error::InvalidConfig(format!("mean_out_citations: {e}")))?;

    let mut events: Vec<usize> = Vec::new();
    for node in 0..n {
        let count = poisson.sample(&mut rng) as usize;
        events.extend(std::iter::repeat_n(node, count));
    }
    events.shuffle(&mut rng);

    let attraction = |k: usize| ((k + 1) as f64).powf(cfg.attachment_exponent);
    let mut indeg = vec![0usize; n];
    let mut tree = WeightTree::new(vec![attraction(0); n]);
    let mut weights = std::collections::BTreeMap::<(usize, usize), u64>::new();

    if n > 1 {
        for source in events {
            let own = tree.weights[source];
            tree.set(source, 0.0);
            let u = rng.random::<f64>() * tree.total();
            let target = tree.find(u);
            tree.set(source, own);

            let w = weights.entry((source, target)).or_insert(0);
            if *w == 0 {
                indeg[target] += 1;
                tree.set(target, attraction(indeg[target]));
            }
            *w += 1;
        }
    }

    let ids: Vec<String> = (0..n).map(|i| format!("inst{i:05}")).collect();
    let base = CitationNetwork::new(ids, weights.into_iter().map(|((s, t), w)| (s, t, w)), "synthetic", false)?;
    match cfg.cartel {
        Some(spec) => inject_cartel(&base, &cartel_members(&base, spec.member_count), spec.internal_weight_boost),
        None => Ok(base),
    }
}

/// The `count` nodes of lowest in-degree, ties broken by index.
pub fn cartel_members(net: &CitationNetwork, count: usize) -> Vec<usize> {
    let k = in_degree(net);
    let mut order: Vec<usize> = (0..net.len()).collect();
    order.sort_by_key(|&i| (k[i], i));
    order.truncate(count);
    order.sort_unstable();
    order
}

/// Makes every member cite every other member with weight
/// `(existing + 1) · boost`, rounded to the nearest integer.
pub fn inject_cartel(net: &CitationNetwork, members: &[usize], boost: f64) -> Result<CitationNetwork> {
    let mut edges: std::collections::BTreeMap<(usize, usize), u64> =
        net.edges().map(|(s, t, w)| ((s, t), w)).collect();
    for &a in members {
        for &b in members {
            if a != b {
                let current = edges.get(&(a, b)).copied().unwrap_or(0);
                edges.insert((a, b), ((current + 1) as f64 * boost).round() as u64);
            }
        }
    }
    CitationNetwork::new(
        net.node_ids().to_vec(),
        edges.into_iter().map(|((s, t), w)| (s, t, w)),
        net.subject(),
        net.self_loops_included(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_per_seed() {
        let cfg = SynthConfig::new(60, 7);
        let a = generate(&cfg).unwrap();
        let b = generate(&cfg).unwrap();
        assert_eq!(a.edges().collect::<Vec<_>>(), b.edges().collect::<Vec<_>>());
        let c = generate(&SynthConfig { seed: 8, ..cfg }).unwrap();
        assert_ne!(a.edges().collect::<Vec<_>>(), c.edges().collect::<Vec<_>>());
    }

    #[test]
    fn uniform_attachment_concentrates_near_mean() {
        let mut means = Vec::new();
        for seed in 0..5 {
            let cfg = SynthConfig { attachment_exponent: 0.0, ..SynthConfig::new(1000, seed) };
            let net = generate(&cfg).unwrap();
            let k = in_degree(&net);
            means.push(k.iter().sum::<usize>() as f64 / k.len() as f64);
            // uniform targets: no node should collect more than a few times the mean
            assert!(*k.iter().max().unwrap() < 40);
        }
        let mean = means.iter().sum::<f64>() / means.len() as f64;
        assert!((mean - 10.0).abs() < 0.5, "mean in-degree {mean}");
    }

    #[test]
    fn preferential_attachment_skews_degrees() {
        let uniform = generate(&SynthConfig { attachment_exponent: 0.0, ..SynthConfig::new(500, 3) }).unwrap();
        let pref = generate(&SynthConfig { attachment_exponent: 1.0, ..SynthConfig::new(500, 3) }).unwrap();
        let max_u = *in_degree(&uniform).iter().max().unwrap();
        let max_p = *in_degree(&pref).iter().max().unwrap();
        assert!(max_p > 2 * max_u, "{max_p} vs {max_u}");
    }

    #[test]
    fn cartel_raises_internal_weight() {
        let base_cfg = SynthConfig::new(100, 11);
        let base = generate(&base_cfg).unwrap();
        let cartel_cfg = SynthConfig {
            cartel: Some(CartelSpec { member_count: 5, internal_weight_boost: 20.0 }),
            ..base_cfg
        };
        let with = generate(&cartel_cfg).unwrap();
        let members = cartel_members(&base, 5);
        let internal = |net: &CitationNetwork| -> u64 {
            net.edges()
                .filter(|(s, t, _)| members.contains(s) && members.contains(t))
                .map(|(_, _, w)| w)
                .sum()
        };
        assert!(internal(&with) > internal(&base));
        assert!(internal(&with) >= 20 * 20);
        // outside the cartel nothing changes
        for (s, t, w) in base.edges() {
            if !(members.contains(&s) && members.contains(&t)) {
                assert_eq!(with.weight(s, t), w);
            }
        }
    }

    #[test]
    fn invalid_configs() {
        assert!(generate(&SynthConfig::new(0, 1)).is_err());
        let bad_cartel = SynthConfig {
            cartel: Some(CartelSpec { member_count: 10, internal_weight_boost: 2.0 }),
            ..SynthConfig::new(10, 1)
        };
        assert!(generate(&bad_cartel).is_err());
        let bad_boost = SynthConfig {
            cartel: Some(CartelSpec { member_count: 2, internal_weight_boost: 0.5 }),
            ..SynthConfig::new(10, 1)
        };
        assert!(generate(&bad_boost).is_err());
        assert!(generate(&SynthConfig { mean_out_citations: 0.0, ..SynthConfig::new(10, 1) }).is_err());
    }

    #[test]
    fn fenwick_sampling_respects_zero_weights() {
        let mut t = WeightTree::new(vec![1.0, 0.0, 2.0, 0.0]);
        assert_eq!(t.total(), 3.0);
        assert_eq!(t.find(0.5), 0);
        assert_eq!(t.find(1.0), 2);
        assert_eq!(t.find(2.999), 2);
        t.set(0, 0.0);
        assert_eq!(t.find(0.0), 2);
    }
}
