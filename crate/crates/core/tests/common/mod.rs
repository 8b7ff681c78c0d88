//! Seeded generators shared by the integration and acceptance tests.
#![allow(dead_code)]

use hombound::scalar::rat;
use hombound::{Graph, Label, LabeledGraph, QuantumGraph, Rational, WeightedGraph};
use num::Zero;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
pub use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_graph(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    let mut edges = Vec::new();
    for j in 1..n {
        for i in 0..j {
            if rng.gen_bool(0.5) {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

/// Positive rational weights with small denominators.
pub fn random_weights(rng: &mut ChaCha8Rng, n: usize) -> Vec<Rational> {
    let raw: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=6)).collect();
    let total: i64 = raw.iter().sum();
    raw.iter().map(|&r| rat(r, total)).collect()
}

pub fn random_weighted(rng: &mut ChaCha8Rng, min_n: usize, max_n: usize) -> WeightedGraph<Rational> {
    let n = rng.gen_range(min_n..=max_n);
    let g = random_graph(rng, n);
    let mu = random_weights(rng, n);
    WeightedGraph::new(g, mu).unwrap()
}

/// A graph whose vertices `0..core.order()` carry `labels` and induce
/// `core`, followed by up to `max_free` unlabeled vertices.
pub fn random_labeled(rng: &mut ChaCha8Rng, core: &Graph, labels: &[Label], max_free: usize) -> LabeledGraph {
    let k = core.order();
    let free = rng.gen_range(0..=max_free);
    let n = k + free;
    let mut edges: Vec<(usize, usize)> = core.edges().collect();
    for j in k..n {
        for i in 0..j {
            if rng.gen_bool(0.5) {
                edges.push((i, j));
            }
        }
    }
    let g = Graph::from_edges(n, &edges).unwrap();
    let marks: Vec<(usize, Label)> = labels.iter().enumerate().map(|(v, &l)| (v, l)).collect();
    LabeledGraph::with_labels(g, &marks).unwrap()
}

/// A random combination of graphs sharing one labeled core.
pub fn random_quantum(rng: &mut ChaCha8Rng, core: &Graph, labels: &[Label], terms: usize, max_free: usize) -> QuantumGraph {
    let mut q = QuantumGraph::zero(labels.to_vec());
    for _ in 0..terms {
        let h = random_labeled(rng, core, labels, max_free);
        let mut c = rat(rng.gen_range(-5..=5), rng.gen_range(1..=4));
        if c.is_zero() {
            c = rat(1, 1);
        }
        q.add_term(h, c).unwrap();
    }
    q
}

/// A label set of size `0..=max` drawn from `1..=3`, in increasing order.
pub fn random_labels(rng: &mut ChaCha8Rng, max: usize) -> Vec<Label> {
    let size = rng.gen_range(0..=max);
    let mut all: Vec<Label> = vec![1, 2, 3];
    while all.len() > size {
        let i = rng.gen_range(0..all.len());
        all.remove(i);
    }
    all
}

/// Every graph on `n` vertices, in mask order over graph6 pairs.
pub fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    (0u64..1 << pairs.len()).map(move |mask| {
        let edges: Vec<_> = pairs.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &e)| e).collect();
        Graph::from_edges(n, &edges).unwrap()
    })
}
