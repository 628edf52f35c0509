mod support;

use citerank::citegraph::{centrality_distribution, degree_centrality, in_degree};
use citerank::profile::{default_profiles, Indicator};
use citerank::scoring::{composite_score, compress, normalize_scores, ScoreTable};
use proptest::prelude::*;
use rand::Rng;

#[test]
fn degree_statistics_match_dense_double_loop() {
    let mut rng = support::rng(200);
    for _ in 0..100 {
        let n = rng.random_range(2..=50);
        let density = rng.random_range(0.0..0.5);
        let net = support::random_network(&mut rng, n, density);
        let k = in_degree(&net);
        let c = degree_centrality(&net).unwrap();
        for i in 0..n {
            let brute = (0..n).filter(|&j| j != i && net.adjacency(j, i) == 1).count();
            assert_eq!(k[i], brute);
            assert_eq!(c[i], brute as f64 / (n - 1) as f64);
            assert!(c[i] <= 1.0);
            assert_eq!(c[i] == 1.0, brute == n - 1);
        }
        for s in 0..n {
            for t in 0..n {
                assert_eq!(net.adjacency(s, t) == 1, net.weight(s, t) > 0);
            }
        }
        let dist = centrality_distribution(&net).unwrap();
        let total: f64 = dist.iter().map(|(_, p)| p).sum();
        assert!((total - 1.0).abs() < 1e-12);
        let counted: f64 = dist.iter().map(|(_, p)| p * n as f64).sum();
        assert!((counted - n as f64).abs() < 1e-9);
        assert!(dist.windows(2).all(|w| w[0].0 < w[1].0));
    }
}

#[test]
fn composite_all_hundred_for_every_profile() {
    for p in default_profiles() {
        let mut t = ScoreTable::new(&p.name, vec!["u".into()]);
        for ind in Indicator::ALL {
            t.insert(ind.score_column(), vec![100.0]).unwrap();
        }
        let s = composite_score(&t, &p).unwrap();
        assert!((s[0] - 100.0).abs() < 1e-12, "{}", p.name);
    }
}

fn raw_vector() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.0f64..1e6, 1..40).prop_filter("non-zero max", |v| v.iter().any(|&x| x > 0.0))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn compress_scale_invariant_and_order_preserving(raw in raw_vector(), k in 1e-3f64..1e3) {
        let a = compress(&raw).unwrap();
        let scaled: Vec<f64> = raw.iter().map(|v| v * k).collect();
        let b = compress(&scaled).unwrap();
        for (x, y) in a.iter().zip(&b) {
            prop_assert!((x - y).abs() < 1e-9);
            prop_assert!((0.0..=100.0).contains(x));
        }
        for i in 0..raw.len() {
            for j in 0..raw.len() {
                if raw[i] > raw[j] {
                    prop_assert!(a[i] > a[j]);
                }
            }
        }
    }

    #[test]
    fn normalize_scale_invariant_and_order_preserving(
        pr in prop::collection::vec(1e-6f64..1.0, 1..40),
        k in 1e-3f64..1e3,
    ) {
        let a = normalize_scores(&pr);
        let b = normalize_scores(&pr.iter().map(|v| v * k).collect::<Vec<_>>());
        prop_assert!(a.iter().any(|&v| v == 100.0));
        for (x, y) in a.iter().zip(&b) {
            prop_assert!((x - y).abs() < 1e-9);
            prop_assert!((0.0..=100.0).contains(x));
        }
        for i in 0..pr.len() {
            for j in 0..pr.len() {
                if pr[i] > pr[j] {
                    prop_assert!(a[i] > a[j]);
                }
            }
        }
    }

    #[test]
    fn composite_monotone_in_each_column(
        base in prop::collection::vec(0.0f64..100.0, 5),
        which in 0usize..4,
        bump in 0.001f64..50.0,
    ) {
        let fin = default_profiles().remove(1);
        let build = |vals: &[f64]| {
            let mut t = ScoreTable::new("FIN", vec!["u".into()]);
            for (ind, v) in Indicator::ALL.iter().zip(vals) {
                t.insert(ind.score_column(), vec![*v]).unwrap();
            }
            composite_score(&t, &fin).unwrap()[0]
        };
        let mut bumped = base.clone();
        bumped[which] += bump;
        prop_assert!(build(&bumped) > build(&base));
    }
}
