//! Blowups, implants, the bar and bipartite-double constructions,
//! lexicographic products and densities in them.

use std::collections::HashMap;

use num::One;

use crate::canon::{canonical_form, CanonKey};
use crate::density::weighted_density;
use crate::error::{parse_err, Error, Result};
use crate::graph::{parse_weighted, Graph, Label, LabeledGraph, WeightedGraph};
use crate::quantum::{QuantumGraph, MAX_CROSS_EDGES};
use crate::scalar::{Rational, Scalar};
use crate::structure::is_prime;

/// Multiplicities `a(v) >= 1` for the vertices of a base graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlowupVector(Vec<usize>);

impl BlowupVector {
    pub fn new(a: Vec<usize>) -> Result<Self> {
        if let Some(v) = a.iter().position(|&x| x == 0) {
            return Err(Error::InvalidParameter(format!("blowup multiplicity of vertex {v} is 0")));
        }
        Ok(BlowupVector(a))
    }

    pub fn ones(n: usize) -> Self {
        BlowupVector(vec![1; n])
    }

    /// Doubles the listed vertices and keeps the rest.
    pub fn doubling(n: usize, vertices: &[usize]) -> Self {
        let mut a = vec![1; n];
        for &v in vertices {
            a[v] = 2;
        }
        BlowupVector(a)
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }
}

/// Vertex classes of a blowup: class `v` starts with `v` itself, followed
/// by its extra copies, which are numbered after all original vertices.
fn copy_classes(a: &[usize]) -> Vec<Vec<usize>> {
    let mut next = a.len();
    a.iter()
        .enumerate()
        .map(|(v, &m)| {
            let mut class = vec![v];
            class.extend(next..next + m - 1);
            next += m - 1;
            class
        })
        .collect()
}

fn blowup_with_classes(f: &Graph, a: &BlowupVector) -> Result<(Graph, Vec<Vec<usize>>)> {
    if a.0.len() != f.order() {
        return Err(Error::DimensionMismatch { expected: f.order(), got: a.0.len() });
    }
    let classes = copy_classes(&a.0);
    let total = a.0.iter().sum();
    let mut g = Graph::empty(total);
    for (u, v) in f.edges() {
        for &x in &classes[u] {
            for &y in &classes[v] {
                g.set_edge(x, y, true);
            }
        }
    }
    Ok((g, classes))
}

/// `F^(a)`: every vertex `v` replaced by `a(v)` pairwise nonadjacent copies.
pub fn blowup(f: &Graph, a: &BlowupVector) -> Result<Graph> {
    blowup_with_classes(f, a).map(|(g, _)| g)
}

/// Labeled blowup: original vertices keep their labels, copies are
/// unlabeled.
pub fn blowup_labeled(f: &LabeledGraph, a: &BlowupVector) -> Result<LabeledGraph> {
    let (g, _) = blowup_with_classes(f.graph(), a)?;
    let mut labels = f.labels().to_vec();
    labels.resize(g.order(), None);
    LabeledGraph::new(g, labels)
}

/// Sum of `base` plus every subset of `optional` pairs.
fn sum_over_subsets(base: LabeledGraph, optional: &[(usize, usize)]) -> Result<QuantumGraph> {
    if optional.len() > MAX_CROSS_EDGES {
        return Err(Error::TermLimit { exponent: optional.len(), limit: MAX_CROSS_EDGES });
    }
    let mut q = QuantumGraph::zero(base.label_set());
    for mask in 0u64..1 << optional.len() {
        let mut h = base.clone();
        for (bit, &(x, y)) in optional.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                h.graph_mut().set_edge(x, y, true);
            }
        }
        q.add_term(h, Rational::one())?;
    }
    Ok(q)
}

/// `F~^(a)`: the blowup summed over all edge sets inside the copy classes.
pub fn tilde_blowup(f: &LabeledGraph, a: &BlowupVector) -> Result<QuantumGraph> {
    if !f.is_fully_labeled() {
        return Err(Error::NotFullyLabeled);
    }
    let (_, classes) = blowup_with_classes(f.graph(), a)?;
    let base = blowup_labeled(f, a)?;
    let optional: Vec<(usize, usize)> = classes
        .iter()
        .flat_map(|c| (0..c.len()).flat_map(move |i| (i + 1..c.len()).map(move |j| (c[i], c[j]))))
        .collect();
    sum_over_subsets(base, &optional)
}

/// `F~^I`: every vertex whose label is in `twins` gets one unlabeled twin,
/// with the edge between the two optional.
pub fn tilde_twins(f: &LabeledGraph, twins: &[Label]) -> Result<QuantumGraph> {
    let vertices = twins
        .iter()
        .map(|&l| f.vertex_of(l).ok_or(Error::UnknownLabel(l)))
        .collect::<Result<Vec<_>>>()?;
    tilde_blowup(f, &BlowupVector::doubling(f.order(), &vertices))
}

/// `(F (+)_i H, F (+~)_i H)`: `|V(H)|` unlabeled twins of the vertex labeled
/// `i` carrying a copy of `H`; the tilde version sums over the edges between
/// vertex `i` and the new vertices.
pub fn implant(f: &LabeledGraph, i: Label, h: &Graph) -> Result<(QuantumGraph, QuantumGraph)> {
    let vi = f.vertex_of(i).ok_or(Error::UnknownLabel(i))?;
    if h.is_null() {
        return Err(Error::InvalidParameter("implanted graph must have a vertex".into()));
    }
    let mut g = f.clone();
    let fresh: Vec<usize> = (0..h.order()).map(|_| g.push_vertex(None)).collect();
    for &x in &fresh {
        for u in f.graph().neighbors(vi) {
            g.graph_mut().set_edge(x, u, true);
        }
    }
    for (a, b) in h.edges() {
        g.graph_mut().set_edge(fresh[a], fresh[b], true);
    }
    let optional: Vec<(usize, usize)> = fresh.iter().map(|&x| (vi, x)).collect();
    let tilde = sum_over_subsets(g.clone(), &optional)?;
    Ok((QuantumGraph::from_graph(g), tilde))
}

#[derive(Clone, Debug)]
pub struct Decorations {
    /// `h = sum_i F~^{i}`.
    pub h: QuantumGraph,
    /// `F` plus an unlabeled isolated vertex.
    pub isolated: LabeledGraph,
    /// `F` plus an unlabeled vertex adjacent to everything.
    pub dominated: LabeledGraph,
}

pub fn decorations(f: &LabeledGraph) -> Result<Decorations> {
    if !f.is_fully_labeled() {
        return Err(Error::NotFullyLabeled);
    }
    let mut h = QuantumGraph::zero(f.label_set());
    for l in f.label_set() {
        h = h.add(&tilde_twins(f, &[l])?)?;
    }
    let mut isolated = f.clone();
    isolated.push_vertex(None);
    let mut dominated = f.clone();
    let z = dominated.push_vertex(None);
    for v in 0..f.order() {
        dominated.graph_mut().set_edge(v, z, true);
    }
    Ok(Decorations { h, isolated, dominated })
}

/// `H-bar`: `H` summed over all sets of extra edges inside `x` or inside `y`.
pub fn bar(h: &Graph, x: &[usize], y: &[usize]) -> Result<QuantumGraph> {
    let n = h.order();
    let mut side = vec![None; n];
    for (part, tag) in [(x, 0u8), (y, 1u8)] {
        for &v in part {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, order: n });
            }
            if side[v].is_some() {
                return Err(Error::InvalidParameter(format!("vertex {v} appears twice in the bipartition")));
            }
            side[v] = Some(tag);
        }
    }
    if let Some(v) = side.iter().position(Option::is_none) {
        return Err(Error::InvalidParameter(format!("vertex {v} is in neither part")));
    }
    let optional: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| side[u] == side[v] && !h.has_edge(u, v))
        .collect();
    sum_over_subsets(LabeledGraph::unlabeled(h.clone()), &optional)
}

/// Splits vertex `i` of `K` into `u_i = i` and `v_i = n + i` with `u_i ~ v_j`
/// iff `ij` is an edge. Returns the graph and its two sides.
pub fn bipartite_double(k: &Graph) -> (Graph, Vec<usize>, Vec<usize>) {
    let n = k.order();
    let mut g = Graph::empty(2 * n);
    for (i, j) in k.edges() {
        g.set_edge(i, n + j, true);
        g.set_edge(j, n + i, true);
    }
    (g, (0..n).collect(), (n..2 * n).collect())
}

/// `(A, mu) (x) (B, nu)`: vertex `(u, v)` has index `u * |B| + v`; pairs are
/// adjacent iff their `A` coordinates are, or the `A` coordinates agree and
/// the `B` coordinates are adjacent.
pub fn lex_product<S: Scalar>(a: &WeightedGraph<S>, b: &WeightedGraph<S>) -> Result<WeightedGraph<S>> {
    let (na, nb) = (a.order(), b.order());
    let mut g = Graph::empty(na * nb);
    for x in 0..na * nb {
        for y in x + 1..na * nb {
            let (u, v, s, t) = (x / nb, x % nb, y / nb, y % nb);
            if a.graph().has_edge(u, s) || (u == s && b.graph().has_edge(v, t)) {
                g.set_edge(x, y, true);
            }
        }
    }
    let mut mu = Vec::with_capacity(na * nb);
    for wa in a.weights() {
        for wb in b.weights() {
            mu.push(wa.clone() * wb.clone());
        }
    }
    WeightedGraph::new(g, mu)
}

/// `m`-fold lexicographic power, `m >= 1`.
pub fn lex_power<S: Scalar>(a: &WeightedGraph<S>, m: usize) -> Result<WeightedGraph<S>> {
    if m == 0 {
        return Err(Error::InvalidParameter("lexicographic power needs m >= 1".into()));
    }
    let mut out = a.clone();
    for _ in 1..m {
        out = lex_product(&out, a)?;
    }
    Ok(out)
}

/// `m_k(mu) = sum_v mu(v)^k`.
pub fn moment<S: Scalar>(mu: &[S], k: u32) -> S {
    mu.iter().fold(S::zero(), |acc, w| acc + w.powi(k))
}

/// An eventually periodic sequence of weighted graphs, read as the infinite
/// lexicographic product of `prefix` followed by `cycle` repeated forever.
#[derive(Clone, Debug, PartialEq)]
pub struct LexSpec<S> {
    prefix: Vec<WeightedGraph<S>>,
    cycle: Vec<WeightedGraph<S>>,
}

impl<S: Scalar> LexSpec<S> {
    pub fn new(prefix: Vec<WeightedGraph<S>>, cycle: Vec<WeightedGraph<S>>) -> Result<Self> {
        if cycle.is_empty() {
            return Err(Error::InvalidParameter("lex spec needs a nonempty cycle".into()));
        }
        if let Some(g) = prefix.iter().chain(&cycle).find(|g| g.order() < 2) {
            return Err(Error::InvalidParameter(format!(
                "every level needs at least two vertices, found {}",
                g.to_text()
            )));
        }
        Ok(LexSpec { prefix, cycle })
    }

    /// The infinite power of a single weighted graph.
    pub fn pure_power(a: WeightedGraph<S>) -> Result<Self> {
        LexSpec::new(Vec::new(), vec![a])
    }

    pub fn prefix(&self) -> &[WeightedGraph<S>] {
        &self.prefix
    }

    pub fn cycle(&self) -> &[WeightedGraph<S>] {
        &self.cycle
    }

    /// Level `i`, counting from 0.
    pub fn level(&self, i: usize) -> &WeightedGraph<S> {
        if i < self.prefix.len() {
            &self.prefix[i]
        } else {
            &self.cycle[(i - self.prefix.len()) % self.cycle.len()]
        }
    }

    /// The product of the levels after the first `m`. Each bag of the
    /// partition induced by the first `m` levels is a copy of it.
    pub fn shifted(&self, m: usize) -> Self {
        let (prefix, cycle) = if m <= self.prefix.len() {
            (self.prefix[m..].to_vec(), self.cycle.clone())
        } else {
            let r = (m - self.prefix.len()) % self.cycle.len();
            let mut cycle = self.cycle[r..].to_vec();
            cycle.extend_from_slice(&self.cycle[..r]);
            (Vec::new(), cycle)
        };
        LexSpec { prefix, cycle }
    }

    /// The first `n` levels as separate weighted graphs.
    pub fn levels(&self, n: usize) -> Vec<WeightedGraph<S>> {
        (0..n).map(|i| self.level(i).clone()).collect()
    }

    /// The finite product of the first `n >= 1` levels as one weighted graph.
    pub fn truncation(&self, n: usize) -> Result<WeightedGraph<S>> {
        if n == 0 {
            return Err(Error::InvalidParameter("truncation depth must be at least 1".into()));
        }
        let mut out = self.level(0).clone();
        for i in 1..n {
            out = lex_product(&out, self.level(i))?;
        }
        Ok(out)
    }

    pub fn to_text(&self) -> String {
        let list = |gs: &[WeightedGraph<S>]| {
            gs.iter().map(|g| format!("{{{}}}", g.to_text())).collect::<Vec<_>>().join(", ")
        };
        format!("prefix: [{}]; cycle: [{}]", list(&self.prefix), list(&self.cycle))
    }

    /// Parses `prefix: [g, ...]; cycle: [g, ...]` where each `g` is a
    /// weighted edge list in braces or a built-in name (uniform weights).
    pub fn parse(text: &str) -> Result<Self> {
        let mut pos = 0;
        let prefix = parse_level_list(text, &mut pos, "prefix:")?;
        skip_ws(text, &mut pos);
        if !text[pos..].starts_with(';') {
            return parse_err(pos, "expected \";\"");
        }
        pos += 1;
        let cycle = parse_level_list(text, &mut pos, "cycle:")?;
        skip_ws(text, &mut pos);
        if pos != text.len() {
            return parse_err(pos, "trailing input after lex spec");
        }
        LexSpec::new(prefix, cycle)
    }
}

fn skip_ws(text: &str, pos: &mut usize) {
    *pos += text[*pos..].len() - text[*pos..].trim_start().len();
}

fn parse_level_list<S: Scalar>(text: &str, pos: &mut usize, key: &str) -> Result<Vec<WeightedGraph<S>>> {
    skip_ws(text, pos);
    if !text[*pos..].starts_with(key) {
        return parse_err(*pos, format!("expected {key:?}"));
    }
    *pos += key.len();
    skip_ws(text, pos);
    if !text[*pos..].starts_with('[') {
        return parse_err(*pos, "expected \"[\"");
    }
    *pos += 1;
    let mut out = Vec::new();
    loop {
        skip_ws(text, pos);
        let rest = &text[*pos..];
        if rest.starts_with(']') && out.is_empty() {
            *pos += 1;
            return Ok(out);
        }
        if rest.starts_with('{') {
            let close = rest.find('}').ok_or(Error::Parse { pos: *pos, msg: "unclosed \"{\"".into() })?;
            let start = *pos + 1;
            let g = parse_weighted(&rest[1..close]).map_err(|e| shift_pos(e, start))?;
            out.push(g);
            *pos += close + 1;
        } else {
            let len = rest.find(|c: char| !c.is_ascii_alphanumeric()).unwrap_or(rest.len());
            let name = &rest[..len];
            let g = Graph::named(name).ok_or(Error::Parse { pos: *pos, msg: format!("unknown graph {name:?}") })?;
            out.push(WeightedGraph::uniform(g)?);
            *pos += len;
        }
        skip_ws(text, pos);
        if text[*pos..].starts_with(',') {
            *pos += 1;
        } else if text[*pos..].starts_with(']') {
            *pos += 1;
            return Ok(out);
        } else {
            return parse_err(*pos, "expected \",\" or \"]\"");
        }
    }
}

fn shift_pos(e: Error, by: usize) -> Error {
    match e {
        Error::Parse { pos, msg } => Error::Parse { pos: pos + by, msg },
        other => other,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LexMode {
    /// Prefix sum plus the closed-form geometric tail over the cycle.
    Exact,
    /// The first `N` levels only.
    Truncated(usize),
}

#[derive(Clone, Debug, PartialEq)]
pub struct LexValue<S> {
    pub value: S,
    /// Upper bound on `|true value - value|`; zero in exact mode.
    pub error_bound: S,
}

/// `t(H; W)` for `W` the infinite product described by `spec`, using
/// `t(H;W) = sum_i (prod_{j<i} m_k(mu_j)) t(H; F_i, mu_i)`. Valid for prime
/// `H` on `k >= 2` vertices with at least one edge; other patterns are
/// rejected.
pub fn lex_density<S: Scalar>(h: &Graph, spec: &LexSpec<S>, mode: LexMode) -> Result<LexValue<S>> {
    check_lex_pattern(h)?;
    let k = h.order() as u32;
    match mode {
        LexMode::Exact => {
            let mut value = S::zero();
            let mut weight = S::one();
            for g in spec.prefix() {
                value = value + weight.clone() * weighted_density(h, g)?;
                weight = weight * moment(g.weights(), k);
            }
            let mut round = S::zero();
            let mut round_weight = S::one();
            for g in spec.cycle() {
                round = round + round_weight.clone() * weighted_density(h, g)?;
                round_weight = round_weight * moment(g.weights(), k);
            }
            value = value + weight * round / (S::one() - round_weight);
            Ok(LexValue { value, error_bound: S::zero() })
        }
        LexMode::Truncated(n) => {
            let mut value = S::zero();
            let mut weight = S::one();
            let mut cache: HashMap<usize, (S, S)> = HashMap::new();
            for i in 0..n {
                let key = level_key(spec, i);
                let (t, m) = match cache.get(&key) {
                    Some(c) => c.clone(),
                    None => {
                        let g = spec.level(i);
                        let c = (weighted_density(h, g)?, moment(g.weights(), k));
                        cache.insert(key, c.clone());
                        c
                    }
                };
                value = value + weight.clone() * t;
                weight = weight * m;
            }
            let tail_max = (n..n + spec.prefix().len() + spec.cycle().len())
                .map(|i| moment(spec.level(i).weights(), k))
                .fold(S::zero(), |a, b| if b > a { b } else { a });
            let error_bound = weight / (S::one() - tail_max);
            Ok(LexValue { value, error_bound })
        }
    }
}

fn level_key<S>(spec: &LexSpec<S>, i: usize) -> usize {
    if i < spec.prefix.len() {
        i
    } else {
        spec.prefix.len() + (i - spec.prefix.len()) % spec.cycle.len()
    }
}

fn check_lex_pattern(h: &Graph) -> Result<()> {
    if h.order() < 2 || h.edge_count() == 0 {
        return Err(Error::InvalidParameter(
            "the level-sum formula needs a pattern with at least one edge".into(),
        ));
    }
    if !is_prime(h) {
        return Err(Error::NotPrime);
    }
    Ok(())
}

/// `t(H; L_1 (x) ... (x) L_N)` for any pattern `H`, without building the
/// product. A strong homomorphism into `A (x) B` is a folding `psi` of `H`
/// into `A` together with, for each vertex `a` of `A`, a strong
/// homomorphism of `H[psi^-1(a)]` into `B`; this recursion runs over the
/// levels and memoises sub-patterns by canonical form.
pub fn finite_lex_density<S: Scalar>(h: &Graph, levels: &[WeightedGraph<S>]) -> Result<S> {
    if levels.is_empty() {
        return Err(Error::InvalidParameter("need at least one level".into()));
    }
    Ok(LexEvaluator::new(levels).density(h, 0))
}

/// Reusable evaluator for many patterns over the same finite product.
pub struct LexEvaluator<'a, S> {
    levels: &'a [WeightedGraph<S>],
    memo: HashMap<(CanonKey, usize), S>,
}

impl<'a, S: Scalar> LexEvaluator<'a, S> {
    pub fn new(levels: &'a [WeightedGraph<S>]) -> Self {
        LexEvaluator { levels, memo: HashMap::new() }
    }

    pub fn density(&mut self, h: &Graph, depth: usize) -> S {
        if h.order() <= 1 {
            return S::one();
        }
        if depth == self.levels.len() {
            // inside a single atom the step graphon is zero
            return if h.edge_count() == 0 { S::one() } else { S::zero() };
        }
        let key = (canonical_form(&LabeledGraph::unlabeled(h.clone())), depth);
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let level = &self.levels[depth];
        let mut image = vec![usize::MAX; h.order()];
        let v = self.foldings(h, level, depth, 0, &mut image, S::one());
        self.memo.insert(key, v.clone());
        v
    }

    fn foldings(
        &mut self,
        h: &Graph,
        level: &WeightedGraph<S>,
        depth: usize,
        k: usize,
        image: &mut Vec<usize>,
        weight: S,
    ) -> S {
        let n = h.order();
        if k == n {
            let mut classes: Vec<Vec<usize>> = vec![Vec::new(); level.order()];
            for v in 0..n {
                classes[image[v]].push(v);
            }
            let mut total = weight;
            for c in classes.iter().filter(|c| c.len() >= 2) {
                let sub = self.density(&h.induced(c), depth + 1);
                if sub.is_zero() {
                    return S::zero();
                }
                total = total * sub;
            }
            return total;
        }
        let a = level.graph();
        let mut acc = S::zero();
        'img: for x in 0..level.order() {
            for u in 0..k {
                let y = image[u];
                if y != x && h.has_edge(u, k) != a.has_edge(y, x) {
                    continue 'img;
                }
            }
            image[k] = x;
            let w = weight.clone() * level.weights()[x].clone();
            acc = acc + self.foldings(h, level, depth, k + 1, image, w);
            image[k] = usize::MAX;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::are_isomorphic_labeled;
    use crate::graph::parse_weighted;
    use crate::scalar::rat;

    fn uniform(g: Graph) -> WeightedGraph<Rational> {
        WeightedGraph::uniform(g).unwrap()
    }

    fn one_label(g: Graph, v: usize) -> LabeledGraph {
        LabeledGraph::with_labels(g, &[(v, 1)]).unwrap()
    }

    #[test]
    fn blowup_examples() {
        let c4 = blowup(&Graph::complete(2), &BlowupVector::new(vec![2, 2]).unwrap()).unwrap();
        assert!(are_isomorphic_labeled(&LabeledGraph::unlabeled(c4), &LabeledGraph::unlabeled(Graph::cycle(4))));
        let p4 = Graph::path(4);
        assert_eq!(blowup(&p4, &BlowupVector::ones(4)).unwrap(), p4);
        assert_eq!(blowup(&Graph::complete(1), &BlowupVector::new(vec![3]).unwrap()).unwrap(), Graph::empty(3));
        assert!(blowup(&p4, &BlowupVector::ones(3)).is_err());
        assert!(BlowupVector::new(vec![1, 0]).is_err());
    }

    #[test]
    fn labeled_blowup_keeps_labels_on_originals() {
        let f = LabeledGraph::fully_labeled(Graph::complete(2));
        let b = blowup_labeled(&f, &BlowupVector::new(vec![1, 3]).unwrap()).unwrap();
        assert_eq!(b.order(), 4);
        assert_eq!(b.labels(), &[Some(1), Some(2), None, None]);
        assert!(b.graph().has_edge(0, 2) && b.graph().has_edge(0, 3) && !b.graph().has_edge(1, 2));
    }

    #[test]
    fn tilde_blowup_examples() {
        let k1 = LabeledGraph::fully_labeled(Graph::complete(1));
        let q = tilde_blowup(&k1, &BlowupVector::new(vec![2]).unwrap()).unwrap();
        assert_eq!(q.len(), 2);
        assert_eq!(q.coefficient_of(&one_label(Graph::complete(2), 0)), Rational::one());
        assert_eq!(q.coefficient_of(&one_label(Graph::empty(2), 0)), Rational::one());

        let k2 = LabeledGraph::fully_labeled(Graph::complete(2));
        let single = tilde_blowup(&k2, &BlowupVector::ones(2)).unwrap();
        assert_eq!(single, QuantumGraph::from_graph(k2.clone()));
        let q = tilde_blowup(&k2, &BlowupVector::new(vec![2, 2]).unwrap()).unwrap();
        assert_eq!(q.coefficient_sum(), rat(4, 1));
        assert_eq!(q.len(), 4);
    }

    #[test]
    fn implant_examples() {
        let k1 = LabeledGraph::fully_labeled(Graph::complete(1));
        let (plain, tilde) = implant(&k1, 1, &Graph::complete(1)).unwrap();
        assert_eq!(plain.coefficient_of(&one_label(Graph::empty(2), 0)), Rational::one());
        assert_eq!(tilde.coefficient_sum(), rat(2, 1));

        let k2 = LabeledGraph::fully_labeled(Graph::complete(2));
        let (plain, tilde) = implant(&k2, 1, &Graph::complete(1)).unwrap();
        // the twin of vertex 1 is the path end next to vertex 2
        let want = LabeledGraph::with_labels(Graph::path(3), &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(plain.coefficient_of(&want), Rational::one());
        let tri = LabeledGraph::with_labels(Graph::complete(3), &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(tilde.coefficient_of(&tri), Rational::one());
        assert_eq!(tilde.coefficient_sum(), rat(2, 1));

        for k in 1..=3 {
            let (_, t) = implant(&k2, 2, &Graph::path(k)).unwrap();
            assert_eq!(t.coefficient_sum(), rat(1 << k, 1));
        }
        assert!(matches!(implant(&k2, 7, &Graph::complete(1)), Err(Error::UnknownLabel(7))));
    }

    #[test]
    fn decoration_examples() {
        let k1 = LabeledGraph::fully_labeled(Graph::complete(1));
        let d = decorations(&k1).unwrap();
        assert_eq!(d.h.len(), 2);
        assert_eq!(d.isolated, one_label(Graph::empty(2), 0));
        assert_eq!(d.dominated, one_label(Graph::complete(2), 0));

        let k2 = LabeledGraph::fully_labeled(Graph::complete(2));
        let d = decorations(&k2).unwrap();
        assert!(d.h.len() <= 4);
        let k3 = LabeledGraph::with_labels(Graph::complete(3), &[(0, 1), (1, 2)]).unwrap();
        assert!(are_isomorphic_labeled(&d.dominated, &k3));
    }

    #[test]
    fn bar_examples() {
        let k2 = Graph::complete(2);
        assert_eq!(bar(&k2, &[0], &[1]).unwrap().len(), 1);
        let (m, x, y) = bipartite_double(&k2);
        assert_eq!(m.edge_count(), 2);
        let q = bar(&m, &x, &y).unwrap();
        assert_eq!(q.coefficient_sum(), rat(4, 1));
        assert!(bar(&m, &[0, 1], &[1, 2, 3]).is_err());
        assert!(bar(&m, &[0], &[1, 2]).is_err());
        // against a raw count over all maps into K_n
        for n in 1..=4 {
            let w = uniform(Graph::complete(n));
            let raw: Rational = q
                .terms()
                .map(|t| {
                    let g = t.graph.graph();
                    let k = g.order();
                    let hits = (0..n.pow(k as u32))
                        .filter(|&code| {
                            let img: Vec<usize> = (0..k).map(|i| code / n.pow(i as u32) % n).collect();
                            (0..k).all(|a| {
                                (a + 1..k).all(|b| {
                                    if img[a] == img[b] {
                                        !g.has_edge(a, b)
                                    } else {
                                        g.has_edge(a, b)
                                    }
                                })
                            })
                        })
                        .count();
                    t.coeff.clone() * rat(hits as i64, n.pow(k as u32) as i64)
                })
                .sum();
            assert_eq!(q.evaluate(None, &w).unwrap(), raw);
        }
    }

    #[test]
    fn bipartite_double_examples() {
        let (g, x, y) = bipartite_double(&Graph::complete(1));
        assert_eq!((g.order(), g.edge_count(), x, y), (2, 0, vec![0], vec![1]));
        let c5 = Graph::cycle(5);
        let (g, _, _) = bipartite_double(&c5);
        assert_eq!(g.edge_count(), 2 * c5.edge_count());
    }

    #[test]
    fn lex_product_examples() {
        let k2 = uniform(Graph::complete(2));
        let p = lex_product(&k2, &k2).unwrap();
        assert_eq!(p, uniform(Graph::complete(4)));
        let e2 = uniform(Graph::empty(2));
        let p = lex_product(&e2, &k2).unwrap();
        assert_eq!(p.graph().edges().collect::<Vec<_>>(), vec![(0, 1), (2, 3)]);
        let a = parse_weighted::<Rational>("n=2; edges: 0-1; mu: 1/3, 2/3").unwrap();
        let b = parse_weighted::<Rational>("n=3; edges: 0-1; mu: 1/2, 1/4, 1/4").unwrap();
        let p = lex_product(&a, &b).unwrap();
        assert_eq!(p.weights()[4], rat(1, 6));
        assert_eq!(p.weights()[0], rat(1, 6));
        assert_eq!(p.weights()[5], rat(1, 6));
    }

    #[test]
    fn moments() {
        assert_eq!(moment(&[rat(1, 2), rat(1, 2)], 2), rat(1, 2));
        assert_eq!(moment(&[rat(1, 3), rat(2, 3)], 2), rat(5, 9));
        assert_eq!(moment(&[rat(1, 3), rat(2, 3)], 1), rat(1, 1));
        let mu = [rat(1, 5), rat(3, 10), rat(1, 2)];
        assert!((1..6).all(|k| moment(&mu, k + 1) < moment(&mu, k)));
    }

    #[test]
    fn lex_density_pure_power() {
        let spec = LexSpec::pure_power(uniform(Graph::complete(2))).unwrap();
        let k2 = Graph::complete(2);
        assert_eq!(lex_density(&k2, &spec, LexMode::Exact).unwrap().value, Rational::one());
        let t = lex_density(&k2, &spec, LexMode::Truncated(30)).unwrap();
        assert!(Rational::one() - &t.value <= t.error_bound);
        assert!(t.error_bound < rat(1, 100_000_000));
    }

    #[test]
    fn lex_density_rejects_bad_patterns() {
        let spec = LexSpec::pure_power(uniform(Graph::path(4))).unwrap();
        assert_eq!(lex_density(&Graph::complete(3), &spec, LexMode::Exact), Err(Error::NotPrime));
        assert!(lex_density(&Graph::empty(2), &spec, LexMode::Exact).is_err());
        assert!(lex_density(&Graph::complete(1), &spec, LexMode::Exact).is_err());
        assert!(LexSpec::<Rational>::new(vec![], vec![]).is_err());
        assert!(LexSpec::new(vec![uniform(Graph::complete(1))], vec![uniform(Graph::complete(2))]).is_err());
    }

    #[test]
    fn shifted_spec() {
        let a = uniform(Graph::complete(2));
        let b = uniform(Graph::empty(2));
        let c = uniform(Graph::path(3));
        let spec = LexSpec::new(vec![a.clone()], vec![b.clone(), c.clone()]).unwrap();
        assert_eq!(spec.shifted(1), LexSpec::new(vec![], vec![b.clone(), c.clone()]).unwrap());
        assert_eq!(spec.shifted(2), LexSpec::new(vec![], vec![c.clone(), b.clone()]).unwrap());
        for m in 0..5 {
            for i in 0..5 {
                assert_eq!(spec.shifted(m).level(i), spec.level(m + i));
            }
        }
    }

    #[test]
    fn spec_text_round_trip() {
        let a = parse_weighted::<Rational>("n=2; edges: 0-1; mu: 1/3, 2/3").unwrap();
        let spec = LexSpec::new(vec![a.clone()], vec![uniform(Graph::path(4)), a]).unwrap();
        let text = spec.to_text();
        assert_eq!(LexSpec::<Rational>::parse(&text).unwrap(), spec);
        let named = LexSpec::<Rational>::parse("prefix: []; cycle: [K2]").unwrap();
        assert_eq!(named, LexSpec::pure_power(uniform(Graph::complete(2))).unwrap());
        match LexSpec::<Rational>::parse("prefix: [{n=2; edges: 0-1; mu: 1/3, 1/3}]; cycle: [K2]") {
            Err(Error::InvalidWeights(_)) => {}
            other => panic!("{other:?}"),
        }
        match LexSpec::<Rational>::parse("prefix: [Q7]; cycle: [K2]") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 9),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn finite_lex_matches_product() {
        let a = parse_weighted::<Rational>("n=3; edges: 0-1, 1-2; mu: 1/2, 1/3, 1/6").unwrap();
        let b = parse_weighted::<Rational>("n=2; edges: 0-1; mu: 1/4, 3/4").unwrap();
        let ab = lex_product(&a, &b).unwrap();
        let aba = lex_product(&ab, &a).unwrap();
        for h in [Graph::complete(3), Graph::empty(3), Graph::path(3), Graph::path(4), Graph::cycle(4)] {
            let levels = [a.clone(), b.clone()];
            assert_eq!(finite_lex_density(&h, &levels).unwrap(), weighted_density(&h, &ab).unwrap(), "{h}");
            let levels = [a.clone(), b.clone(), a.clone()];
            assert_eq!(finite_lex_density(&h, &levels).unwrap(), weighted_density(&h, &aba).unwrap(), "{h}");
        }
    }

    #[test]
    fn truncation_is_the_finite_product() {
        let a = uniform(Graph::path(3));
        let spec = LexSpec::pure_power(a.clone()).unwrap();
        assert_eq!(spec.truncation(2).unwrap(), lex_product(&a, &a).unwrap());
        assert!(spec.truncation(0).is_err());
        assert_eq!(lex_power(&a, 3).unwrap(), spec.truncation(3).unwrap());
    }
}
