//! Strong homomorphism counts and induced homomorphism densities.
//!
//! Every density is a sum over maps `V(F) -> V(G)` that preserve both
//! adjacency and non-adjacency. Maps are enumerated vertex by vertex and a
//! branch is cut as soon as one constraint with an already placed vertex
//! fails.

use std::collections::BTreeMap;

use num::bigint::BigInt;
use num::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::{Graph, Label, LabeledGraph, WeightedGraph};
use crate::scalar::{rat, Rational, Scalar};

/// Images of labels in the target graph. Several labels may share an image.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PinMap(BTreeMap<Label, usize>);

impl PinMap {
    pub fn new() -> Self {
        PinMap(BTreeMap::new())
    }

    pub fn insert(&mut self, label: Label, vertex: usize) {
        self.0.insert(label, vertex);
    }

    pub fn get(&self, label: Label) -> Option<usize> {
        self.0.get(&label).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Label, usize)> + '_ {
        self.0.iter().map(|(&l, &v)| (l, v))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl FromIterator<(Label, usize)> for PinMap {
    fn from_iter<I: IntoIterator<Item = (Label, usize)>>(iter: I) -> Self {
        PinMap(iter.into_iter().collect())
    }
}

/// Accumulator used by the enumeration: integers for counting, scaled
/// integers for exact weights, `f64` for approximate weights.
pub trait Accum: Clone {
    fn acc_zero() -> Self;
    fn acc_one() -> Self;
    fn acc_is_zero(&self) -> bool;
    fn add_product(&mut self, w: &Self, sub: &Self);
}

impl Accum for u128 {
    fn acc_zero() -> Self {
        0
    }
    fn acc_one() -> Self {
        1
    }
    fn acc_is_zero(&self) -> bool {
        *self == 0
    }
    fn add_product(&mut self, w: &Self, sub: &Self) {
        *self += w * sub;
    }
}

impl Accum for f64 {
    fn acc_zero() -> Self {
        0.0
    }
    fn acc_one() -> Self {
        1.0
    }
    fn acc_is_zero(&self) -> bool {
        *self == 0.0
    }
    fn add_product(&mut self, w: &Self, sub: &Self) {
        *self += w * sub;
    }
}

impl Accum for BigInt {
    fn acc_zero() -> Self {
        Zero::zero()
    }
    fn acc_one() -> Self {
        One::one()
    }
    fn acc_is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_product(&mut self, w: &Self, sub: &Self) {
        *self += w * sub;
    }
}

impl Accum for Rational {
    fn acc_zero() -> Self {
        Zero::zero()
    }
    fn acc_one() -> Self {
        One::one()
    }
    fn acc_is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_product(&mut self, w: &Self, sub: &Self) {
        *self += w * sub;
    }
}

/// A pattern with some vertices pinned to target vertices; the remaining
/// (free) vertices are summed over.
pub struct Extension<'a> {
    pattern: &'a Graph,
    target: &'a Graph,
    assigned: Vec<Option<usize>>,
    free: Vec<usize>,
    consistent: bool,
}

impl<'a> Extension<'a> {
    pub fn new(pattern: &'a Graph, target: &'a Graph, fixed: Vec<Option<usize>>) -> Self {
        debug_assert_eq!(fixed.len(), pattern.order());
        let pinned: Vec<usize> = (0..pattern.order()).filter(|&v| fixed[v].is_some()).collect();
        let consistent = pinned.iter().all(|&u| {
            pinned.iter().all(|&v| {
                u >= v || pair_ok(pattern, target, u, v, fixed[u].unwrap(), fixed[v].unwrap())
            })
        });
        let free = (0..pattern.order()).filter(|&v| fixed[v].is_none()).collect();
        Extension { pattern, target, assigned: fixed, free, consistent }
    }

    pub fn free_count(&self) -> usize {
        self.free.len()
    }

    /// Sum over consistent extensions of the product of free-vertex weights.
    pub fn sum_generic<A: Accum>(&self, weights: &[A]) -> A {
        if !self.consistent {
            return A::acc_zero();
        }
        let mut assigned = self.assigned.clone();
        self.rec(0, &mut assigned, weights)
    }

    fn rec<A: Accum>(&self, k: usize, assigned: &mut [Option<usize>], weights: &[A]) -> A {
        if k == self.free.len() {
            return A::acc_one();
        }
        let v = self.free[k];
        let mut acc = A::acc_zero();
        'img: for w in 0..self.target.order() {
            for (u, img) in assigned.iter().enumerate() {
                if let Some(x) = *img {
                    if !pair_ok(self.pattern, self.target, u, v, x, w) {
                        continue 'img;
                    }
                }
            }
            assigned[v] = Some(w);
            let sub = self.rec(k + 1, assigned, weights);
            assigned[v] = None;
            if !sub.acc_is_zero() {
                acc.add_product(&weights[w], &sub);
            }
        }
        acc
    }
}

#[inline]
fn pair_ok(pattern: &Graph, target: &Graph, u: usize, v: usize, x: usize, y: usize) -> bool {
    if u == v {
        return true;
    }
    let want = pattern.has_edge(u, v);
    if x == y {
        !want
    } else {
        want == target.has_edge(x, y)
    }
}

/// Number of strong homomorphisms `F -> G`.
pub fn strong_hom_count(f: &Graph, g: &Graph) -> u128 {
    let ext = Extension::new(f, g, vec![None; f.order()]);
    ext.sum_generic(&vec![1u128; g.order()])
}

/// `t(F;G) = s(F,G) / |V(G)|^|V(F)|`, with `t(∅;G) = 1`.
pub fn density(f: &Graph, g: &Graph) -> Result<Rational> {
    if f.is_null() {
        return Ok(Rational::one());
    }
    if g.is_null() {
        return Err(Error::EmptyTarget);
    }
    let s = strong_hom_count(f, g);
    let denom = num::pow(BigInt::from(g.order()), f.order());
    Ok(Rational::new(BigInt::from(s), denom))
}

/// Probability that a `mu`-random map is a strong homomorphism.
pub fn weighted_density<S: Scalar>(f: &Graph, gw: &WeightedGraph<S>) -> Result<S> {
    if f.is_null() {
        return Ok(S::one());
    }
    let ext = Extension::new(f, gw.graph(), vec![None; f.order()]);
    Ok(S::weighted_extension_sum(&ext, gw.weights()))
}

/// `t(H, phi; G)`: probability that a `mu`-random extension of `phi` to the
/// unlabeled vertices of `H` is a strong homomorphism.
pub fn labeled_density<S: Scalar>(h: &LabeledGraph, phi: &PinMap, gw: &WeightedGraph<S>) -> Result<S> {
    let fixed = pinned_images(h, phi, gw.order())?;
    let ext = Extension::new(h.graph(), gw.graph(), fixed);
    Ok(S::weighted_extension_sum(&ext, gw.weights()))
}

pub(crate) fn pinned_images(h: &LabeledGraph, phi: &PinMap, order: usize) -> Result<Vec<Option<usize>>> {
    h.labels()
        .iter()
        .map(|l| match l {
            None => Ok(None),
            Some(l) => {
                let v = phi.get(*l).ok_or(Error::MissingPin(*l))?;
                if v >= order {
                    return Err(Error::VertexOutOfRange { vertex: v, order });
                }
                Ok(Some(v))
            }
        })
        .collect()
}

/// All pin maps under which the fully labeled `core` is realised (density
/// one), each with its probability `prod mu(phi(l))`.
pub fn core_embeddings<S: Scalar>(core: &LabeledGraph, gw: &WeightedGraph<S>) -> Result<Vec<(PinMap, S)>> {
    if !core.is_fully_labeled() {
        return Err(Error::NotFullyLabeled);
    }
    let mut out = Vec::new();
    let mut assigned = vec![None; core.order()];
    embed_rec(core, gw, 0, &mut assigned, &mut out);
    Ok(out)
}

fn embed_rec<S: Scalar>(
    core: &LabeledGraph,
    gw: &WeightedGraph<S>,
    k: usize,
    assigned: &mut Vec<Option<usize>>,
    out: &mut Vec<(PinMap, S)>,
) {
    let (pattern, target) = (core.graph(), gw.graph());
    if k == core.order() {
        let mut weight = S::one();
        let mut phi = PinMap::new();
        for (v, img) in assigned.iter().enumerate() {
            let x = img.unwrap();
            weight = weight * gw.weights()[x].clone();
            phi.insert(core.label_of(v).unwrap(), x);
        }
        out.push((phi, weight));
        return;
    }
    'img: for w in 0..target.order() {
        for u in 0..k {
            if !pair_ok(pattern, target, u, k, assigned[u].unwrap(), w) {
                continue 'img;
            }
        }
        assigned[k] = Some(w);
        embed_rec(core, gw, k + 1, assigned, out);
        assigned[k] = None;
    }
}

/// Every total map `labels -> V(G)` with its probability. Exponential in the
/// number of labels; used for averaging identities on small inputs.
pub fn all_pin_maps<S: Scalar>(labels: &[Label], gw: &WeightedGraph<S>) -> Vec<(PinMap, S)> {
    let mut out = vec![(PinMap::new(), S::one())];
    for &l in labels {
        let mut next = Vec::with_capacity(out.len() * gw.order());
        for (phi, w) in &out {
            for (x, mu) in gw.weights().iter().enumerate() {
                let mut p = phi.clone();
                p.insert(l, x);
                next.push((p, w.clone() * mu.clone()));
            }
        }
        out = next;
    }
    out
}

/// Uniform weights as exact rationals.
pub fn uniform_rational(g: &Graph) -> Result<WeightedGraph<Rational>> {
    let n = g.order();
    if n == 0 {
        return Err(Error::EmptyTarget);
    }
    WeightedGraph::new(g.clone(), vec![rat(1, n as i64); n])
}
