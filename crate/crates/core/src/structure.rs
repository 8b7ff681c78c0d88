//! Homogeneous sets, primeness, stringency and foldings.

use crate::error::{Error, Result};
use crate::graph::Graph;

pub use crate::canon::is_asymmetric;

/// A sorted set of vertices of a host graph.
pub type VertexSet = Vec<usize>;

/// True iff every vertex outside `a` is complete or anticomplete to `a`.
///
/// # Panics
/// If `a` names a vertex outside the graph.
pub fn is_homogeneous(g: &Graph, a: &[usize]) -> bool {
    let n = g.order();
    let mut inside = vec![false; n];
    for &v in a {
        assert!(v < n, "vertex {v} outside graph of order {n}");
        inside[v] = true;
    }
    let Some(&first) = a.first() else {
        return true;
    };
    (0..n)
        .filter(|&x| !inside[x])
        .all(|x| a.iter().all(|&v| g.has_edge(x, v) == g.has_edge(x, first)))
}

/// The smallest homogeneous set containing `u` and `v`.
///
/// Grown by closure: an outside vertex that sees some member differently
/// from `u` must join. Each member is compared against the outside once,
/// word-parallel over the adjacency rows.
pub fn minimal_module(g: &Graph, u: usize, v: usize) -> VertexSet {
    let n = g.order();
    assert!(u < n && v < n && u != v, "need two distinct vertices of the graph");
    let rows = Rows::new(g);
    let inside = rows.closure(u, v);
    (0..n).filter(|&x| inside[x / 64] >> (x % 64) & 1 == 1).collect()
}

/// No homogeneous set `A` with `1 < |A| < n`. Graphs on at most two
/// vertices are prime.
pub fn is_prime(g: &Graph) -> bool {
    let n = g.order();
    let rows = Rows::new(g);
    (0..n).all(|u| (u + 1..n).all(|v| rows.closure_is_full(u, v)))
}

/// Adjacency rows as bitsets.
struct Rows {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl Rows {
    fn new(g: &Graph) -> Self {
        let n = g.order();
        let words = n.div_ceil(64).max(1);
        let mut bits = vec![0u64; n * words];
        for (a, b) in g.edges() {
            bits[a * words + b / 64] |= 1 << (b % 64);
            bits[b * words + a / 64] |= 1 << (a % 64);
        }
        Rows { n, words, bits }
    }

    fn row(&self, v: usize) -> &[u64] {
        &self.bits[v * self.words..(v + 1) * self.words]
    }

    fn closure(&self, u: usize, v: usize) -> Vec<u64> {
        let mut inside = vec![0u64; self.words];
        inside[u / 64] |= 1 << (u % 64);
        inside[v / 64] |= 1 << (v % 64);
        let mut pending = vec![v];
        while let Some(w) = pending.pop() {
            let (rw, ru) = (self.row(w), self.row(u));
            for k in 0..self.words {
                let mut fresh = (rw[k] ^ ru[k]) & !inside[k];
                if k == self.words - 1 && !self.n.is_multiple_of(64) {
                    fresh &= (1u64 << (self.n % 64)) - 1;
                }
                inside[k] |= fresh;
                while fresh != 0 {
                    let b = fresh.trailing_zeros() as usize;
                    pending.push(64 * k + b);
                    fresh &= fresh - 1;
                }
            }
        }
        inside
    }

    fn closure_is_full(&self, u: usize, v: usize) -> bool {
        let count: u32 = self.closure(u, v).iter().map(|w| w.count_ones()).sum();
        count as usize == self.n
    }
}

/// Prime with trivial automorphism group.
pub fn is_stringent(g: &Graph) -> bool {
    is_prime(g) && is_asymmetric(g)
}

/// Whether `phi: V(G) -> V(H)` preserves adjacency and non-adjacency on
/// every pair it does not identify.
pub fn is_folding(phi: &[usize], g: &Graph, h: &Graph) -> Result<bool> {
    if phi.len() != g.order() {
        return Err(Error::DimensionMismatch { expected: g.order(), got: phi.len() });
    }
    if let Some(&x) = phi.iter().find(|&&x| x >= h.order()) {
        return Err(Error::VertexOutOfRange { vertex: x, order: h.order() });
    }
    let n = g.order();
    Ok((0..n).all(|u| {
        (u + 1..n).all(|v| phi[u] == phi[v] || g.has_edge(u, v) == h.has_edge(phi[u], phi[v]))
    }))
}
