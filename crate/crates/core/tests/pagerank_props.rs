mod support;

use citerank::pagerank::{pagerank, pagerank_oracle, DanglingPolicy, PageRankConfig};
use citerank::synthnet::{cartel_members, generate, CartelSpec, SynthConfig};
use citerank::CitationNetwork;
use rand::seq::SliceRandom;
use rand::Rng;

#[test]
fn iterative_matches_dense_oracle() {
    let mut rng = support::rng(100);
    for policy in [DanglingPolicy::UniformRedistribution, DanglingPolicy::TeleportOnly] {
        let cfg = PageRankConfig { dangling_policy: policy, ..Default::default() };
        for _ in 0..100 {
            let n = rng.random_range(1..=50);
            let density = rng.random_range(0.02..0.4);
            let net = support::random_network(&mut rng, n, density);
            let it = pagerank(&net, &cfg).unwrap();
            assert!(it.converged);
            let dense = pagerank_oracle(&net, &cfg).unwrap();
            let err = support::l1(&it.scores, &dense);
            assert!(err < 1e-10, "n = {n}, L1 = {err:e}");
        }
    }
}

#[test]
fn normalization_and_positivity() {
    let mut rng = support::rng(101);
    for _ in 0..100 {
        let n = rng.random_range(2..=60);
        let net = support::random_network(&mut rng, n, 0.1);
        let d = rng.random_range(0.0..0.99);
        let r = pagerank(&net, &PageRankConfig::default().with_damping(d)).unwrap();
        let total: f64 = r.scores.iter().sum();
        assert!((total - 1.0).abs() <= 1e-12);
        let floor = (1.0 - d) / n as f64;
        assert!(r.scores.iter().all(|&p| p >= floor - 1e-15));
    }
}

#[test]
fn vanishing_damping_tends_to_uniform() {
    let mut rng = support::rng(102);
    let net = support::random_network(&mut rng, 40, 0.2);
    let r = pagerank(&net, &PageRankConfig::default().with_damping(1e-6)).unwrap();
    let dev = r.scores.iter().map(|p| (p - 1.0 / 40.0).abs()).fold(0.0, f64::max);
    assert!(dev < 1e-5);
}

#[test]
fn relabelling_permutes_scores() {
    let mut rng = support::rng(103);
    let net = support::random_network(&mut rng, 30, 0.15);
    let base = pagerank(&net, &PageRankConfig::default()).unwrap();
    for _ in 0..20 {
        let mut perm: Vec<usize> = (0..30).collect();
        perm.shuffle(&mut rng);
        let shuffled = net.permuted(&perm).unwrap();
        let r = pagerank(&shuffled, &PageRankConfig::default()).unwrap();
        for i in 0..30 {
            assert!((base.scores[i] - r.scores[perm[i]]).abs() < 1e-14);
        }
    }
}

#[test]
fn repeated_runs_are_bit_identical() {
    let net = generate(&SynthConfig::new(300, 5)).unwrap();
    let a = pagerank(&net, &PageRankConfig::default()).unwrap();
    let b = pagerank(&net, &PageRankConfig::default()).unwrap();
    assert_eq!(a, b);
}

/// Position (0 = top) of every node, descending by score, ties by index.
fn positions(scores: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[b].partial_cmp(&scores[a]).unwrap().then(a.cmp(&b)));
    let mut pos = vec![0.0; scores.len()];
    for (p, i) in order.into_iter().enumerate() {
        pos[i] = p as f64;
    }
    pos
}

fn as_f64(v: &[u64]) -> Vec<f64> {
    v.iter().map(|&x| x as f64).collect()
}

fn median_gain(before: &[f64], after: &[f64], members: &[usize]) -> f64 {
    let mut gains: Vec<f64> = members.iter().map(|&m| before[m] - after[m]).collect();
    support::median(&mut gains)
}

#[test]
fn cartels_gain_less_under_pagerank_than_raw_counts() {
    let cfg = PageRankConfig::default();
    let (mut by_count, mut by_rank) = (Vec::new(), Vec::new());
    for seed in 0..30 {
        let base_cfg = SynthConfig::new(100, seed);
        let base: CitationNetwork = generate(&base_cfg).unwrap();
        let with = generate(&SynthConfig {
            cartel: Some(CartelSpec { member_count: 5, internal_weight_boost: 20.0 }),
            ..base_cfg
        })
        .unwrap();
        let members = cartel_members(&base, 5);
        by_count.push(median_gain(
            &positions(&as_f64(&base.in_weight())),
            &positions(&as_f64(&with.in_weight())),
            &members,
        ));
        by_rank.push(median_gain(
            &positions(&pagerank(&base, &cfg).unwrap().scores),
            &positions(&pagerank(&with, &cfg).unwrap().scores),
            &members,
        ));
    }
    let (c, p) = (support::median(&mut by_count), support::median(&mut by_rank));
    assert!(c > p, "count gain {c} vs pagerank gain {p}");
}
