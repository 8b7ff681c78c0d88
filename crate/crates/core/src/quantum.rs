//! Quantum graphs: finite rational combinations of `L`-labeled graphs taken
//! up to label-preserving isomorphism.

use std::collections::BTreeMap;
use std::fmt;

use num::{One, Signed, Zero};

use crate::canon::{canonical_labeling, CanonKey};
use crate::density::{labeled_density, PinMap};
use crate::error::{Error, Result};
use crate::graph::{Graph, Label, LabeledGraph, WeightedGraph};
use crate::scalar::{format_rational, Rational, Scalar};

/// A product of terms with `u` and `v` unlabeled vertices expands into
/// `2^(u*v)` graphs; larger products are refused.
pub const MAX_CROSS_EDGES: usize = 24;

#[derive(Clone, Debug, PartialEq)]
pub struct Term {
    /// Canonical representative of the isomorphism class.
    pub graph: LabeledGraph,
    pub coeff: Rational,
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuantumGraph {
    labels: Vec<Label>,
    terms: BTreeMap<CanonKey, Term>,
}

impl QuantumGraph {
    pub fn zero(mut labels: Vec<Label>) -> Self {
        labels.sort_unstable();
        labels.dedup();
        QuantumGraph { labels, terms: BTreeMap::new() }
    }

    pub fn from_graph(h: LabeledGraph) -> Self {
        let mut q = QuantumGraph::zero(h.label_set());
        q.push(h, Rational::one());
        q
    }

    pub fn unlabeled(g: Graph) -> Self {
        QuantumGraph::from_graph(LabeledGraph::unlabeled(g))
    }

    /// `c` times the empty graph, whose density is identically one.
    pub fn constant(c: Rational) -> Self {
        QuantumGraph::unlabeled(Graph::null()).scale(&c)
    }

    /// `sum_h c_h * h` for labeled graphs sharing one label set.
    pub fn from_terms<I>(labels: Vec<Label>, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (LabeledGraph, Rational)>,
    {
        let mut q = QuantumGraph::zero(labels);
        for (h, c) in terms {
            q.add_term(h, c)?;
        }
        Ok(q)
    }

    pub fn label_set(&self) -> &[Label] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = &Term> {
        self.terms.values()
    }

    pub fn coefficient_of(&self, h: &LabeledGraph) -> Rational {
        let (key, _) = canonical_labeling(h);
        self.terms.get(&key).map_or_else(Rational::zero, |t| t.coeff.clone())
    }

    /// Sum of all coefficients; for sums of graphs this is the number of
    /// summands before isomorphic ones were merged.
    pub fn coefficient_sum(&self) -> Rational {
        self.terms().fold(Rational::zero(), |acc, t| acc + &t.coeff)
    }

    pub fn add_term(&mut self, h: LabeledGraph, c: Rational) -> Result<()> {
        if h.label_set() != self.labels {
            return Err(Error::LabelMismatch { left: self.labels.clone(), right: h.label_set() });
        }
        self.push(h, c);
        Ok(())
    }

    fn push(&mut self, h: LabeledGraph, c: Rational) {
        if c.is_zero() {
            return;
        }
        let (key, perm) = canonical_labeling(&h);
        match self.terms.get_mut(&key) {
            Some(t) => {
                t.coeff += c;
                if t.coeff.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, Term { graph: h.permuted(&perm), coeff: c });
            }
        }
    }

    fn merge_labels(&self, other: &Self) -> Result<Vec<Label>> {
        if self.labels == other.labels || other.is_zero() {
            Ok(self.labels.clone())
        } else if self.is_zero() {
            Ok(other.labels.clone())
        } else {
            Err(Error::LabelMismatch { left: self.labels.clone(), right: other.labels.clone() })
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let labels = self.merge_labels(other)?;
        let mut out = self.clone();
        out.labels = labels;
        for (key, t) in &other.terms {
            let c = out.terms.get(key).map_or_else(Rational::zero, |s| s.coeff.clone()) + &t.coeff;
            if c.is_zero() {
                out.terms.remove(key);
            } else {
                out.terms.insert(key.clone(), Term { graph: t.graph.clone(), coeff: c });
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return QuantumGraph::zero(self.labels.clone());
        }
        let mut out = self.clone();
        for t in out.terms.values_mut() {
            t.coeff = &t.coeff * c;
        }
        out
    }

    /// Bilinear extension of the labeled graph product.
    pub fn product(&self, other: &Self) -> Result<Self> {
        if self.labels != other.labels {
            return Err(Error::LabelMismatch { left: self.labels.clone(), right: other.labels.clone() });
        }
        let mut out = QuantumGraph::zero(self.labels.clone());
        for a in self.terms() {
            for b in other.terms() {
                let c = &a.coeff * &b.coeff;
                for h in graph_product(&a.graph, &b.graph)? {
                    out.push(h, c.clone());
                }
            }
        }
        Ok(out)
    }

    /// Removes every label; isomorphic results merge.
    pub fn unlabel(&self) -> Self {
        let mut out = QuantumGraph::zero(Vec::new());
        for t in self.terms() {
            out.push(t.graph.strip_labels(), t.coeff.clone());
        }
        out
    }

    /// `t(f, phi; G) = sum c_i t(H_i, phi; G)`.
    pub fn evaluate<S: Scalar>(&self, phi: Option<&PinMap>, gw: &WeightedGraph<S>) -> Result<S> {
        let empty = PinMap::new();
        let phi = phi.unwrap_or(&empty);
        if let Some(&l) = self.labels.iter().find(|&&l| phi.get(l).is_none()) {
            return Err(Error::MissingPin(l));
        }
        let mut acc = S::zero();
        for t in self.terms() {
            let d = labeled_density(&t.graph, phi, gw)?;
            if !d.is_zero() {
                acc = acc + S::from_rational(&t.coeff) * d;
            }
        }
        Ok(acc)
    }

    /// Ensures every term agrees with `core` on the labeled vertices.
    pub fn shares_core(&self, core: &LabeledGraph) -> bool {
        let want = core.labeled_core();
        self.terms().all(|t| t.graph.labeled_core() == want)
    }
}

/// `H1 · H2`: identify equally labeled vertices and sum over every set of
/// edges between the unlabeled parts. Empty when the labeled cores differ.
/// Isomorphic summands are kept separately so that evaluation stays
/// multiplicative; callers merge them by coefficient.
pub fn graph_product(h1: &LabeledGraph, h2: &LabeledGraph) -> Result<Vec<LabeledGraph>> {
    if h1.label_set() != h2.label_set() {
        return Err(Error::LabelMismatch { left: h1.label_set(), right: h2.label_set() });
    }
    if h1.labeled_core() != h2.labeled_core() {
        return Ok(Vec::new());
    }
    let u1 = h1.unlabeled_vertices();
    let u2 = h2.unlabeled_vertices();
    let cross = u1.len() * u2.len();
    if cross > MAX_CROSS_EDGES {
        return Err(Error::TermLimit { exponent: cross, limit: MAX_CROSS_EDGES });
    }
    let mut base = h1.clone();
    let mut image = vec![0usize; h2.order()];
    for v in 0..h2.order() {
        image[v] = match h2.label_of(v) {
            Some(l) => h1.vertex_of(l).expect("label sets match"),
            None => base.push_vertex(None),
        };
    }
    for (a, b) in h2.graph().edges() {
        base.graph_mut().set_edge(image[a], image[b], true);
    }
    let image = &image;
    let pairs: Vec<(usize, usize)> =
        u1.iter().flat_map(|&x| u2.iter().map(move |&y| (x, image[y]))).collect();
    let mut out = Vec::with_capacity(1 << cross);
    for mask in 0u64..(1u64 << cross) {
        let mut h = base.clone();
        for (bit, &(x, y)) in pairs.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                h.graph_mut().set_edge(x, y, true);
            }
        }
        out.push(h);
    }
    Ok(out)
}

/// `f1·f1 + f2·f2` for unlabeled `f1`, `f2`; it vanishes on a graphon iff
/// both do.
pub fn combine_forcing(f1: &QuantumGraph, f2: &QuantumGraph) -> Result<QuantumGraph> {
    for f in [f1, f2] {
        if !f.label_set().is_empty() {
            return Err(Error::LabelMismatch { left: Vec::new(), right: f.label_set().to_vec() });
        }
    }
    f1.product(f1)?.add(&f2.product(f2)?)
}

impl fmt::Display for QuantumGraph {
    /// Expression syntax with inline graphs, terms in canonical order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, t) in self.terms().enumerate() {
            let neg = t.coeff.is_negative();
            let mag = t.coeff.abs();
            match (i, neg) {
                (0, false) => {}
                (0, true) => f.write_str("-")?,
                (_, false) => f.write_str(" + ")?,
                (_, true) => f.write_str(" - ")?,
            }
            if !mag.is_one() {
                write!(f, "{}*", format_rational(&mag))?;
            }
            write!(f, "{{{}}}", t.graph.to_text())?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::canonical_form;
    use crate::scalar::rat;

    fn edge_one_label() -> LabeledGraph {
        LabeledGraph::with_labels(Graph::complete(2), &[(0, 1)]).unwrap()
    }

    #[test]
    fn product_of_pendant_edges() {
        let f = QuantumGraph::from_graph(edge_one_label());
        let p = f.product(&f).unwrap();
        let p3_center = LabeledGraph::with_labels(Graph::path(3), &[(1, 1)]).unwrap();
        let k3 = LabeledGraph::with_labels(Graph::complete(3), &[(0, 1)]).unwrap();
        let expected = QuantumGraph::from_terms(vec![1], [(p3_center, rat(1, 1)), (k3, rat(1, 1))]).unwrap();
        assert_eq!(p, expected);
    }

    #[test]
    fn product_zero_when_cores_differ() {
        let k2 = QuantumGraph::from_graph(LabeledGraph::fully_labeled(Graph::complete(2)));
        let e2 = QuantumGraph::from_graph(LabeledGraph::fully_labeled(Graph::empty(2)));
        assert!(k2.product(&e2).unwrap().is_zero());
    }

    #[test]
    fn product_rejects_label_mismatch() {
        let a = QuantumGraph::from_graph(edge_one_label());
        let b = QuantumGraph::unlabeled(Graph::complete(2));
        assert!(matches!(a.product(&b), Err(Error::LabelMismatch { .. })));
    }

    #[test]
    fn term_limit() {
        let big = LabeledGraph::with_labels(Graph::empty(6), &[(0, 1)]).unwrap();
        let q = QuantumGraph::from_graph(big);
        assert!(matches!(q.product(&q), Err(Error::TermLimit { exponent: 25, .. })));
    }

    #[test]
    fn multiplicity_is_kept() {
        // one label, two free isolated vertices times one label, one free vertex:
        // the cross edges {a,c} and {b,c} give isomorphic graphs
        let h1 = LabeledGraph::with_labels(Graph::empty(3), &[(0, 1)]).unwrap();
        let h2 = LabeledGraph::with_labels(Graph::empty(2), &[(0, 1)]).unwrap();
        let p = QuantumGraph::from_graph(h1).product(&QuantumGraph::from_graph(h2)).unwrap();
        assert_eq!(p.len(), 3);
        assert_eq!(p.coefficient_sum(), rat(4, 1));
    }

    #[test]
    fn unlabel_examples() {
        let k2 = QuantumGraph::from_graph(LabeledGraph::fully_labeled(Graph::complete(2)));
        assert_eq!(k2.unlabel(), QuantumGraph::unlabeled(Graph::complete(2)));
        let end = LabeledGraph::with_labels(Graph::path(3), &[(0, 1)]).unwrap();
        let mid = LabeledGraph::with_labels(Graph::path(3), &[(1, 1)]).unwrap();
        let f = QuantumGraph::from_terms(vec![1], [(end, rat(1, 1)), (mid, rat(1, 1))]).unwrap();
        assert_eq!(f.unlabel(), QuantumGraph::unlabeled(Graph::path(3)).scale(&rat(2, 1)));
        assert!(QuantumGraph::zero(vec![1]).unlabel().is_zero());
    }

    #[test]
    fn linear_evaluation() {
        let k2 = QuantumGraph::unlabeled(Graph::complete(2));
        let f = k2.scale(&rat(2, 1)).sub(&k2).unwrap();
        assert_eq!(f, k2);
        let g = WeightedGraph::<Rational>::uniform(Graph::complete(2)).unwrap();
        assert_eq!(f.evaluate(None, &g).unwrap(), rat(1, 2));
    }

    #[test]
    fn combine_forcing_cases() {
        let zero = QuantumGraph::zero(vec![]);
        assert!(combine_forcing(&zero, &zero).unwrap().is_zero());
        let f = QuantumGraph::unlabeled(Graph::complete(2)).sub(&QuantumGraph::constant(rat(1, 2))).unwrap();
        let c = combine_forcing(&f, &zero).unwrap();
        let g = WeightedGraph::<Rational>::uniform(Graph::complete(2)).unwrap();
        assert_eq!(c.evaluate(None, &g).unwrap(), rat(0, 1));
        let lab = QuantumGraph::from_graph(edge_one_label());
        assert!(combine_forcing(&lab, &zero).is_err());
    }

    #[test]
    fn missing_pins() {
        let f = QuantumGraph::from_graph(edge_one_label());
        let g = WeightedGraph::<Rational>::uniform(Graph::complete(2)).unwrap();
        assert_eq!(f.evaluate(None, &g), Err(Error::MissingPin(1)));
    }

    #[test]
    fn display_is_canonical() {
        let a = QuantumGraph::from_graph(edge_one_label().permuted(&[1, 0]));
        let b = QuantumGraph::from_graph(edge_one_label());
        assert_eq!(a.to_string(), b.to_string());
        let t = a.terms().next().unwrap();
        assert_eq!(canonical_form(&t.graph), canonical_form(&edge_one_label()));
    }
}
