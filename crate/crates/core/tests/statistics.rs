//! Monte Carlo checks of the samplers and finite-n expectations. Seeds are
//! fixed; tolerances are about four standard errors.

use std::collections::BTreeMap;

use hyperlaw_core::census::{cycle_counts, value_of_ball, BallValue};
use hyperlaw_core::random::{sample_gnp, sample_poisson_tree, sample_poisson_tree_edge_rooted, Seed};
use hyperlaw_core::theory::{branching_value_distribution, expected_cycles_graph, expected_small_degree_vertices};

fn mean_and_se(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

fn tv<K: Ord>(a: &BTreeMap<K, f64>, b: &BTreeMap<K, f64>) -> f64 {
    let mut sum = 0.0;
    for (k, &x) in a {
        sum += (x - b.get(k).copied().unwrap_or(0.0)).abs();
    }
    for (k, &y) in b {
        if !a.contains_key(k) {
            sum += y;
        }
    }
    sum / 2.0
}

#[test]
fn edge_count_is_binomial() {
    let (n, d, p) = (30usize, 2usize, 0.01f64);
    let big_n = 4060.0;
    let counts: Vec<f64> = (0..2000).map(|t| sample_gnp(n, d, p, Seed::new(1, t)).unwrap().edge_count() as f64).collect();
    let (mean, se) = mean_and_se(&counts);
    assert!((mean - big_n * p).abs() <= 4.0 * se, "mean {mean}");
    let var = counts.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / 1999.0;
    let expected_var = big_n * p * (1.0 - p);
    assert!((var / expected_var - 1.0).abs() < 0.15, "variance {var} vs {expected_var}");
}

#[test]
fn tiny_space_matches_exact_law() {
    // G(4, p): 64 labelled graphs, each with probability p^k (1-p)^(6-k)
    for p in [0.3f64, 0.8] {
        let trials = 40_000u64;
        let mut freq: BTreeMap<Vec<Vec<u32>>, f64> = BTreeMap::new();
        for t in 0..trials {
            let h = sample_gnp(4, 1, p, Seed::new(2, t)).unwrap();
            *freq.entry(h.edges().map(|e| e.to_vec()).collect()).or_default() += 1.0 / trials as f64;
        }
        let pairs: Vec<Vec<u32>> = (0..4u32).flat_map(|a| (a + 1..4).map(move |b| vec![a, b])).collect();
        let mut exact = BTreeMap::new();
        for mask in 0u32..64 {
            let edges: Vec<Vec<u32>> = (0..6).filter(|i| mask >> i & 1 == 1).map(|i| pairs[i].clone()).collect();
            let k = edges.len() as i32;
            exact.insert(edges, p.powi(k) * (1.0 - p).powi(6 - k));
        }
        let dist = tv(&freq, &exact);
        assert!(dist <= 0.03, "p={p} tv={dist}");
    }
}

#[test]
fn streams_are_not_copies() {
    let a = sample_gnp(200, 1, 0.01, Seed::new(3, 0)).unwrap();
    let b = sample_gnp(200, 1, 0.01, Seed::new(3, 1)).unwrap();
    let c = sample_gnp(200, 1, 0.01, Seed::new(4, 0)).unwrap();
    assert_ne!(a, b);
    assert_ne!(a, c);
}

#[test]
fn poisson_tree_offspring() {
    let (mu, d) = (0.8f64, 2usize);
    let mut roots = Vec::new();
    let mut second = Vec::new();
    for t in 0..20_000 {
        let tree = sample_poisson_tree(2, mu, d, Seed::new(5, t)).unwrap();
        roots.push(tree.tree.degree(tree.root) as f64);
        second.push(tree.depth.iter().filter(|&&x| x == 2).count() as f64);
    }
    let (m, se) = mean_and_se(&roots);
    assert!((m - mu).abs() <= 4.0 * se, "root degree {m}");
    // each depth-1 vertex sprouts Poisson(mu) edges of d children
    let (m2, se2) = mean_and_se(&second);
    let expected = (d as f64 * mu) * (d as f64 * mu);
    assert!((m2 - expected).abs() <= 4.0 * se2, "depth-2 size {m2} vs {expected}");
}

#[test]
fn edge_rooted_tree_has_forced_edge() {
    for t in 0..200 {
        let tree = sample_poisson_tree_edge_rooted(2, 0.3, 1, Seed::new(6, t)).unwrap();
        assert!(tree.tree.degree(tree.root) >= 1);
        assert!(tree.tree.is_berge_acyclic());
    }
    assert_eq!(sample_poisson_tree_edge_rooted(0, 0.3, 1, Seed::new(6, 0)).unwrap().tree.edge_count(), 0);
}

fn sampled_value_law(r: u32, s: u32, mu: f64, d: usize, trials: u64) -> BTreeMap<BallValue, f64> {
    let mut freq = BTreeMap::new();
    for t in 0..trials {
        let tree = sample_poisson_tree(r, mu, d, Seed::new(7, t)).unwrap();
        *freq.entry(value_of_ball(&tree.tree, tree.root, r, s).unwrap()).or_default() += 1.0 / trials as f64;
    }
    freq
}

#[test]
fn branching_law_matches_sampled_trees() {
    for (r, s, mu, d) in [(2u32, 1u32, 1.0f64, 1usize), (1, 2, 0.7, 2), (2, 1, 0.4, 2)] {
        let exact: BTreeMap<BallValue, f64> =
            branching_value_distribution(r, s, mu, d).unwrap().into_iter().map(|(v, p)| (BallValue::Tree(v), p)).collect();
        let mass: f64 = exact.values().sum();
        assert!((mass - 1.0).abs() < 1e-9);
        let dist = tv(&sampled_value_law(r, s, mu, d, 20_000), &exact);
        assert!(dist <= 0.02, "r={r} s={s} mu={mu} d={d}: tv={dist}");
    }
}

#[test]
fn small_degree_expectation() {
    for (n, d, p, k) in [(2000u64, 1usize, 0.0005f64, 0u64), (2000, 1, 0.0005, 1), (300, 2, 2e-5, 0), (300, 2, 2e-5, 1)] {
        let xs: Vec<f64> = (0..100)
            .map(|t| {
                let h = sample_gnp(n as usize, d, p, Seed::new(8, t)).unwrap();
                (0..n as u32).filter(|&v| h.degree(v) as u64 == k).count() as f64
            })
            .collect();
        let (m, se) = mean_and_se(&xs);
        let e = expected_small_degree_vertices(n, d, p, k).unwrap();
        assert!((m - e).abs() <= 4.0 * se + 0.002 * e, "n={n} d={d} k={k}: {m} vs {e}");
    }
}

#[test]
fn triangle_expectation() {
    let (n, p) = (20u64, 0.1f64);
    let xs: Vec<f64> = (0..20_000).map(|t| cycle_counts(&sample_gnp(20, 1, p, Seed::new(9, t)).unwrap(), 3)[3] as f64).collect();
    let (m, se) = mean_and_se(&xs);
    let e = expected_cycles_graph(n, 3, p).unwrap();
    assert!((m - e).abs() <= 4.0 * se, "{m} vs {e}");
}
