//! Reading graphs, weights and lists from flags. Any value starting with
//! `@` is replaced by the contents of the named file.

use std::fs;

use clap::ValueEnum;
use hombound::graph::{parse_graph_auto, parse_labeled, parse_weighted};
use hombound::scalar::parse_rational;
use hombound::{parse_graph, Graph, GraphFormat, LabeledGraph, PinMap, Rational, Scalar, WeightedGraph};

use crate::Failure;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum FormatFlag {
    /// A built-in name, `n=...; edges: ...`, or graph6, by inspection.
    #[default]
    Auto,
    EdgeList,
    Graph6,
}

pub fn text(flag: &str, value: &str) -> Result<String, Failure> {
    match value.strip_prefix('@') {
        Some(path) => fs::read_to_string(path)
            .map(|s| s.trim().to_string())
            .map_err(|e| Failure::Usage(format!("{flag}: cannot read {path}: {e}"))),
        None => Ok(value.to_string()),
    }
}

fn bad_input(flag: &str, e: hombound::Error) -> Failure {
    Failure::Usage(format!("{flag}: {e}"))
}

pub fn graph(flag: &str, value: &str, format: FormatFlag) -> Result<Graph, Failure> {
    let t = text(flag, value)?;
    let parsed = match format {
        FormatFlag::Auto => parse_graph_auto(&t),
        FormatFlag::EdgeList => parse_graph(&t, GraphFormat::EdgeList),
        FormatFlag::Graph6 => parse_graph(&t, GraphFormat::Graph6),
    };
    parsed.map_err(|e| bad_input(flag, e))
}

/// A weighted graph, or a plain graph with uniform weights.
pub fn weighted<S: Scalar>(flag: &str, value: &str, format: FormatFlag) -> Result<WeightedGraph<S>, Failure> {
    let t = text(flag, value)?;
    if t.contains("mu:") {
        return parse_weighted(&t).map_err(|e| bad_input(flag, e));
    }
    let g = graph(flag, &t, format)?;
    WeightedGraph::uniform(g).map_err(|e| bad_input(flag, e))
}

/// A labeled edge list, or a plain graph with every vertex labeled.
pub fn labeled(flag: &str, value: &str, format: FormatFlag) -> Result<LabeledGraph, Failure> {
    let t = text(flag, value)?;
    if t.contains('@') {
        return parse_labeled(&t).map_err(|e| bad_input(flag, e));
    }
    Ok(LabeledGraph::fully_labeled(graph(flag, &t, format)?))
}

fn items<'a>(flag: &str, t: &'a str) -> Result<Vec<&'a str>, Failure> {
    let parts: Vec<&str> = t.split(',').map(str::trim).collect();
    if parts.iter().any(|p| p.is_empty()) && t.trim() != "" {
        return Err(Failure::Usage(format!("{flag}: empty list entry")));
    }
    Ok(parts.into_iter().filter(|p| !p.is_empty()).collect())
}

pub fn indices(flag: &str, value: &str) -> Result<Vec<usize>, Failure> {
    let t = text(flag, value)?;
    items(flag, &t)?
        .into_iter()
        .map(|p| p.parse().map_err(|_| Failure::Usage(format!("{flag}: {p:?} is not a vertex index"))))
        .collect()
}

pub fn rationals(flag: &str, value: &str) -> Result<Vec<Rational>, Failure> {
    let t = text(flag, value)?;
    items(flag, &t)?.into_iter().map(|p| rational(flag, p)).collect()
}

pub fn rational(flag: &str, value: &str) -> Result<Rational, Failure> {
    parse_rational(value).map_err(|e| bad_input(flag, e))
}

/// `label=vertex` pairs separated by commas.
pub fn pins(flag: &str, value: &str) -> Result<PinMap, Failure> {
    let t = text(flag, value)?;
    items(flag, &t)?
        .into_iter()
        .map(|p| {
            let (l, v) = p.split_once('=').ok_or_else(|| Failure::Usage(format!("{flag}: expected label=vertex, got {p:?}")))?;
            let l = l.trim().parse().map_err(|_| Failure::Usage(format!("{flag}: bad label {l:?}")))?;
            let v = v.trim().parse().map_err(|_| Failure::Usage(format!("{flag}: bad vertex {v:?}")))?;
            Ok((l, v))
        })
        .collect()
}
