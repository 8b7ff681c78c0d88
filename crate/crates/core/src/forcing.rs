//! Density conditions that force a graphon to split along a weighted
//! stringent graph, their sum-of-squares aggregate, and its residual on
//! finite lexicographic powers.
//!
//! Every condition is a quantum graph labeled by `V(F)` whose terms all
//! contain the fully labeled `F`. The five families are
//!
//! 1. `h + F° + F•`, target 1, where `h = sum_i F~^{i}`;
//! 2. `F~^{i} - mu(i) h`, target 0;
//! 3. `F~^{i,j} - F~^{i} F~^{j}`, target 0;
//! 4. a twin of `i` that misses a dominating vertex, or sees an isolated
//!    one, target 0;
//! 5. `mu(i)^-k F (+~)_i H - mu(j)^-k F (+~)_j H` for consecutive `i, j`
//!    (cyclically) and every `H` on `k` vertices, target 0.

use std::collections::BTreeSet;

use num::{One, Zero};

use crate::canon::canonical_form;
use crate::constructions::{decorations, implant, tilde_twins, LexEvaluator};
use crate::error::{Error, Result};
use crate::graph::{Graph, LabeledGraph, WeightedGraph};
use crate::quantum::QuantumGraph;
use crate::scalar::{Rational, Scalar};
use crate::structure::is_stringent;

/// Largest implant size accepted by [`split_forcing_conditions`].
pub const DEFAULT_MAX_K: usize = 3;

#[derive(Clone, Debug)]
pub struct Condition {
    /// Family number, 1 to 5.
    pub family: u8,
    pub name: String,
    pub f: QuantumGraph,
    pub target: Rational,
}

/// The split-forcing conditions for a fully labeled stringent `f`, weights
/// `mu` and implant size `k <= DEFAULT_MAX_K`.
pub fn split_forcing_conditions(f: &LabeledGraph, mu: &[Rational], k: usize) -> Result<Vec<Condition>> {
    split_forcing_conditions_with_limit(f, mu, k, DEFAULT_MAX_K)
}

pub fn split_forcing_conditions_with_limit(
    f: &LabeledGraph,
    mu: &[Rational],
    k: usize,
    max_k: usize,
) -> Result<Vec<Condition>> {
    if !f.is_fully_labeled() {
        return Err(Error::NotFullyLabeled);
    }
    if !is_stringent(f.graph()) {
        return Err(Error::NotStringent);
    }
    let n = f.order();
    if mu.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: mu.len() });
    }
    if mu.iter().any(|m| *m <= Rational::zero()) || mu.iter().fold(Rational::zero(), |a, b| a + b) != Rational::one() {
        return Err(Error::InvalidWeights("weights must be positive and sum to one".into()));
    }
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    if k > max_k {
        // squaring an implant condition crosses k unlabeled vertices with k
        return Err(Error::TermLimit { exponent: k * k, limit: max_k * max_k });
    }

    let labels = f.label_set();
    let zero = Rational::zero;
    let mut out = Vec::new();
    let deco = decorations(f)?;
    let twins: Vec<QuantumGraph> = labels.iter().map(|&l| tilde_twins(f, &[l])).collect::<Result<_>>()?;

    let f1 = deco
        .h
        .add(&QuantumGraph::from_graph(deco.isolated.clone()))?
        .add(&QuantumGraph::from_graph(deco.dominated.clone()))?;
    out.push(Condition { family: 1, name: "cover".into(), f: f1, target: Rational::one() });

    for (idx, &l) in labels.iter().enumerate() {
        let f2 = twins[idx].sub(&deco.h.scale(&mu[idx]))?;
        out.push(Condition { family: 2, name: format!("measure {l}"), f: f2, target: zero() });
    }

    for a in 0..n {
        for b in a + 1..n {
            let pair = tilde_twins(f, &[labels[a], labels[b]])?;
            let f3 = pair.sub(&twins[a].product(&twins[b])?)?;
            out.push(Condition { family: 3, name: format!("cross {} {}", labels[a], labels[b]), f: f3, target: zero() });
        }
    }

    for (idx, &l) in labels.iter().enumerate() {
        for dominating in [true, false] {
            let f4 = outside_condition(f, idx, dominating)?;
            let name = format!("{} {l}", if dominating { "dominated" } else { "isolated" });
            out.push(Condition { family: 4, name, f: f4, target: zero() });
        }
    }

    let shapes = graphs_up_to_iso(k);
    for a in 0..n {
        let b = (a + 1) % n;
        if a == b {
            continue;
        }
        for (s, h) in shapes.iter().enumerate() {
            let left = implant(f, labels[a], h)?.1.scale(&num::pow(mu[a].recip(), k));
            let right = implant(f, labels[b], h)?.1.scale(&num::pow(mu[b].recip(), k));
            let name = format!("implant {} {} shape {s}", labels[a], labels[b]);
            out.push(Condition { family: 5, name, f: left.sub(&right)?, target: zero() });
        }
    }
    Ok(out)
}

/// A twin `t` of vertex `idx` (edge `t`-`idx` optional) and a new vertex `z`
/// that is adjacent to all of `F` and not to `t`, or adjacent to none of
/// `F` and to `t`.
fn outside_condition(f: &LabeledGraph, idx: usize, dominating: bool) -> Result<QuantumGraph> {
    let vi = f.vertex_of(f.label_set()[idx]).expect("label of f");
    let mut base = f.clone();
    let t = base.push_vertex(None);
    for u in f.graph().neighbors(vi) {
        base.graph_mut().set_edge(t, u, true);
    }
    let z = base.push_vertex(None);
    if dominating {
        for v in 0..f.order() {
            base.graph_mut().set_edge(v, z, true);
        }
    } else {
        base.graph_mut().set_edge(t, z, true);
    }
    let mut with_edge = base.clone();
    with_edge.graph_mut().set_edge(vi, t, true);
    QuantumGraph::from_terms(f.label_set(), [(base, Rational::one()), (with_edge, Rational::one())])
}

/// One representative of every isomorphism class of graphs on `k` vertices.
pub fn graphs_up_to_iso(k: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u64..1 << pairs.len() {
        let edges: Vec<_> = pairs.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &e)| e).collect();
        let g = Graph::from_edges(k, &edges).expect("valid pairs");
        if seen.insert(canonical_form(&LabeledGraph::unlabeled(g.clone()))) {
            out.push(g);
        }
    }
    out
}

/// `[[ sum (f_i - a_i)^2 ]]` with `a_i` the constant function: expands to
/// `[[sum f_i^2]] - 2 sum a_i [[f_i]] + sum a_i^2`.
pub fn aggregate(conds: &[Condition]) -> Result<QuantumGraph> {
    let mut acc = QuantumGraph::zero(Vec::new());
    let mut constant = Rational::zero();
    let minus_two = Rational::from_integer((-2).into());
    for c in conds {
        acc = acc.add(&c.f.product(&c.f)?.unlabel())?;
        if !c.target.is_zero() {
            acc = acc.add(&c.f.unlabel().scale(&(&minus_two * &c.target)))?;
            constant += &c.target * &c.target;
        }
    }
    acc.add(&QuantumGraph::constant(constant))
}

/// `[[ sum (f_i - a_i F)^2 ]]`: the targets are lifted to multiples of the
/// fully labeled `F`, so the aggregate lives in the labeled algebra.
pub fn lifted_aggregate(conds: &[Condition], f: &LabeledGraph) -> Result<QuantumGraph> {
    let core = QuantumGraph::from_graph(f.clone());
    let mut acc = QuantumGraph::zero(Vec::new());
    for c in conds {
        let d = c.f.sub(&core.scale(&c.target))?;
        acc = acc.add(&d.product(&d)?.unlabel())?;
    }
    Ok(acc)
}

/// Evaluates an unlabeled quantum graph on `L_1 (x) ... (x) L_N` without
/// building the product.
pub fn evaluate_on_lex<S: Scalar>(q: &QuantumGraph, levels: &[WeightedGraph<S>]) -> Result<S> {
    if !q.label_set().is_empty() {
        return Err(Error::LabelMismatch { left: Vec::new(), right: q.label_set().to_vec() });
    }
    if levels.is_empty() {
        return Err(Error::InvalidParameter("need at least one level".into()));
    }
    let mut eval = LexEvaluator::new(levels);
    let mut acc = S::zero();
    for t in q.terms() {
        let d = eval.density(t.graph.graph(), 0);
        if !d.is_zero() {
            acc = acc + S::from_rational(&t.coeff) * d;
        }
    }
    Ok(acc)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ResidualRow {
    pub depth: usize,
    /// The aggregate with constant targets.
    pub residual: Rational,
    /// The aggregate with targets lifted to multiples of `F`.
    pub lifted_residual: Rational,
}

/// Residuals of both aggregates on the truncations `(x)^N (F, mu)` for
/// `N = 1..=max_depth`.
pub fn truncation_residuals(f: &LabeledGraph, mu: &[Rational], k: usize, max_depth: usize) -> Result<Vec<ResidualRow>> {
    let conds = split_forcing_conditions(f, mu, k)?;
    let plain = aggregate(&conds)?;
    let lifted = lifted_aggregate(&conds, f)?;
    let level = WeightedGraph::new(f.graph().clone(), mu.to_vec())?;
    (1..=max_depth)
        .map(|depth| {
            let levels = vec![level.clone(); depth];
            Ok(ResidualRow {
                depth,
                residual: evaluate_on_lex(&plain, &levels)?,
                lifted_residual: evaluate_on_lex(&lifted, &levels)?,
            })
        })
        .collect()
}
