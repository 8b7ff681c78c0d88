//! Simple graphs, partially labeled graphs and vertex-weighted graphs.
//!
//! Vertices are dense indices `0..n`. Text formats:
//!
//! * edge list: `n=4; edges: 0-1, 1-2, 2-3`
//! * labeled edge list: the same followed by marks `@vertex:label`, e.g.
//!   `n=2; edges: 0-1 @0:1`
//! * weighted edge list: the edge list followed by `; mu: 1/3, 2/3`
//!   (rationals) or decimal literals
//! * graph6 (ASCII, no header)

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{parse_err, Error, Result};
use crate::scalar::{is_positive, Scalar};

pub type Label = u32;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<bool>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph { n, adj: vec![false; n * n] }
    }

    /// The graph with no vertices.
    pub fn null() -> Self {
        Graph::empty(0)
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::VertexOutOfRange { vertex: u.max(v), order: n });
            }
            if u == v {
                return Err(Error::Loop(u));
            }
            if g.has_edge(u, v) {
                return Err(Error::DuplicateEdge(u.min(v), u.max(v)));
            }
            g.set_edge(u, v, true);
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.set_edge(u, v, true);
            }
        }
        g
    }

    /// Path on `n` vertices.
    pub fn path(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for v in 1..n {
            g.set_edge(v - 1, v, true);
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::path(n);
        if n >= 3 {
            g.set_edge(0, n - 1, true);
        }
        g
    }

    /// Built-in names: `E0`, `K1`..`K6`, `P2`..`P6`, `C3`..`C6`.
    pub fn named(name: &str) -> Option<Self> {
        let (kind, num) = name.split_at(1.min(name.len()));
        let k: usize = num.parse().ok()?;
        match (kind, k) {
            ("E", 0) => Some(Graph::null()),
            ("K", 1..=6) => Some(Graph::complete(k)),
            ("P", 2..=6) => Some(Graph::path(k)),
            ("C", 3..=6) => Some(Graph::cycle(k)),
            _ => None,
        }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn is_null(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.n + v]
    }

    pub(crate) fn set_edge(&mut self, u: usize, v: usize, on: bool) {
        debug_assert!(u != v);
        self.adj[u * self.n + v] = on;
        self.adj[v * self.n + u] = on;
    }

    pub fn add_vertex(&mut self) -> usize {
        let n = self.n + 1;
        let mut adj = vec![false; n * n];
        for u in 0..self.n {
            for v in 0..self.n {
                adj[u * n + v] = self.adj[u * self.n + v];
            }
        }
        self.n = n;
        self.adj = adj;
        n - 1
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| (u + 1..self.n).filter(move |&v| self.has_edge(u, v)).map(move |v| (u, v)))
    }

    pub fn edge_count(&self) -> usize {
        self.edges().count()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&u| self.has_edge(v, u))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors(v).count()
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::empty(self.n);
        for u in 0..self.n {
            for v in u + 1..self.n {
                g.set_edge(u, v, !self.has_edge(u, v));
            }
        }
        g
    }

    /// Relabels so that old vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        let mut g = Graph::empty(self.n);
        for (u, v) in self.edges() {
            g.set_edge(perm[u], perm[v], true);
        }
        g
    }

    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut g = Graph::empty(vertices.len());
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.set_edge(i, j, true);
                }
            }
        }
        g
    }

    pub fn to_edge_list(&self) -> String {
        let edges: Vec<String> = self.edges().map(|(u, v)| format!("{u}-{v}")).collect();
        if edges.is_empty() {
            format!("n={}; edges:", self.n)
        } else {
            format!("n={}; edges: {}", self.n, edges.join(", "))
        }
    }

    pub fn to_graph6(&self) -> String {
        let mut out = Vec::new();
        let n = self.n;
        if n <= 62 {
            out.push(n as u8 + 63);
        } else if n <= 258_047 {
            out.push(126);
            for shift in [12, 6, 0] {
                out.push(((n >> shift) & 63) as u8 + 63);
            }
        } else {
            out.extend([126, 126]);
            for shift in [30, 24, 18, 12, 6, 0] {
                out.push(((n >> shift) & 63) as u8 + 63);
            }
        }
        let mut acc = 0u8;
        let mut nbits = 0;
        for j in 1..n {
            for i in 0..j {
                acc = (acc << 1) | self.has_edge(i, j) as u8;
                nbits += 1;
                if nbits == 6 {
                    out.push(acc + 63);
                    acc = 0;
                    nbits = 0;
                }
            }
        }
        if nbits > 0 {
            out.push((acc << (6 - nbits)) + 63);
        }
        String::from_utf8(out).expect("graph6 is ASCII")
    }

    pub fn from_graph6(text: &str) -> Result<Graph> {
        let bytes = text.trim().as_bytes();
        let bytes = bytes.strip_prefix(b">>graph6<<").unwrap_or(bytes);
        for (i, &b) in bytes.iter().enumerate() {
            if !(63..=126).contains(&b) {
                return parse_err(i, format!("byte {b} outside graph6 range"));
            }
        }
        let six = |i: usize| -> Result<usize> {
            bytes.get(i).map(|&b| (b - 63) as usize).ok_or(Error::Parse {
                pos: i,
                msg: "truncated graph6 header".into(),
            })
        };
        if bytes.is_empty() {
            return parse_err(0, "empty graph6 string");
        }
        let (n, mut pos) = if bytes[0] != 126 {
            (six(0)?, 1)
        } else if bytes.get(1) != Some(&126) {
            ((six(1)? << 12) | (six(2)? << 6) | six(3)?, 4)
        } else {
            let mut n = 0;
            for i in 2..8 {
                n = (n << 6) | six(i)?;
            }
            (n, 8)
        };
        let needed = (n * n.saturating_sub(1) / 2).div_ceil(6);
        if bytes.len() != pos + needed {
            return parse_err(
                bytes.len().min(pos + needed),
                format!("expected {needed} adjacency bytes for n={n}, found {}", bytes.len() - pos),
            );
        }
        let mut g = Graph::empty(n);
        let mut bit = 0;
        let mut cur = 0usize;
        for j in 1..n {
            for i in 0..j {
                if bit == 0 {
                    cur = six(pos)?;
                    pos += 1;
                }
                if (cur >> (5 - bit)) & 1 == 1 {
                    g.set_edge(i, j, true);
                }
                bit = (bit + 1) % 6;
            }
        }
        Ok(g)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({})", self.to_edge_list())
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_edge_list())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFormat {
    EdgeList,
    Graph6,
}

pub fn parse_graph(text: &str, format: GraphFormat) -> Result<Graph> {
    match format {
        GraphFormat::Graph6 => Graph::from_graph6(text),
        GraphFormat::EdgeList => {
            let mut cur = Cursor::new(text);
            let g = cur.edge_list()?;
            cur.skip_ws();
            if !cur.at_end() {
                return parse_err(cur.pos, "trailing input after edge list");
            }
            Ok(g)
        }
    }
}

/// Accepts a built-in name, an edge list, or a graph6 string.
pub fn parse_graph_auto(text: &str) -> Result<Graph> {
    let t = text.trim();
    if let Some(g) = Graph::named(t) {
        return Ok(g);
    }
    if t.starts_with("n=") || t.starts_with("n =") {
        parse_graph(t, GraphFormat::EdgeList)
    } else {
        parse_graph(t, GraphFormat::Graph6)
    }
}

/// A graph with an injective partial labeling of its vertices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LabeledGraph {
    graph: Graph,
    labels: Vec<Option<Label>>,
}

impl LabeledGraph {
    pub fn new(graph: Graph, labels: Vec<Option<Label>>) -> Result<Self> {
        if labels.len() != graph.order() {
            return Err(Error::DimensionMismatch { expected: graph.order(), got: labels.len() });
        }
        let mut seen = std::collections::BTreeSet::new();
        for l in labels.iter().flatten() {
            if !seen.insert(*l) {
                return Err(Error::DuplicateLabel(*l));
            }
        }
        Ok(LabeledGraph { graph, labels })
    }

    pub fn unlabeled(graph: Graph) -> Self {
        let n = graph.order();
        LabeledGraph { graph, labels: vec![None; n] }
    }

    /// Vertex `v` receives label `v + 1`.
    pub fn fully_labeled(graph: Graph) -> Self {
        let labels = (0..graph.order()).map(|v| Some(v as Label + 1)).collect();
        LabeledGraph { graph, labels }
    }

    pub fn with_labels(graph: Graph, marks: &[(usize, Label)]) -> Result<Self> {
        let mut labels = vec![None; graph.order()];
        for &(v, l) in marks {
            if v >= graph.order() {
                return Err(Error::VertexOutOfRange { vertex: v, order: graph.order() });
            }
            labels[v] = Some(l);
        }
        LabeledGraph::new(graph, labels)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn into_graph(self) -> Graph {
        self.graph
    }

    pub fn labels(&self) -> &[Option<Label>] {
        &self.labels
    }

    pub fn label_of(&self, v: usize) -> Option<Label> {
        self.labels[v]
    }

    pub fn order(&self) -> usize {
        self.graph.order()
    }

    /// Sorted label set.
    pub fn label_set(&self) -> Vec<Label> {
        let mut ls: Vec<Label> = self.labels.iter().flatten().copied().collect();
        ls.sort_unstable();
        ls
    }

    pub fn vertex_of(&self, label: Label) -> Option<usize> {
        self.labels.iter().position(|&l| l == Some(label))
    }

    pub fn labeled_vertices(&self) -> Vec<usize> {
        (0..self.order()).filter(|&v| self.labels[v].is_some()).collect()
    }

    pub fn unlabeled_vertices(&self) -> Vec<usize> {
        (0..self.order()).filter(|&v| self.labels[v].is_none()).collect()
    }

    pub fn is_fully_labeled(&self) -> bool {
        self.labels.iter().all(Option::is_some)
    }

    /// Adjacency among labeled vertices, keyed by label pairs `(a, b)` with `a < b`.
    pub fn labeled_core(&self) -> BTreeMap<(Label, Label), bool> {
        let lv = self.labeled_vertices();
        let mut core = BTreeMap::new();
        for &u in &lv {
            for &v in &lv {
                let (a, b) = (self.labels[u].unwrap(), self.labels[v].unwrap());
                if a < b {
                    core.insert((a, b), self.graph.has_edge(u, v));
                }
            }
        }
        core
    }

    pub fn strip_labels(&self) -> LabeledGraph {
        LabeledGraph::unlabeled(self.graph.clone())
    }

    pub fn permuted(&self, perm: &[usize]) -> LabeledGraph {
        let mut labels = vec![None; self.order()];
        for (v, &l) in self.labels.iter().enumerate() {
            labels[perm[v]] = l;
        }
        LabeledGraph { graph: self.graph.permuted(perm), labels }
    }

    pub(crate) fn graph_mut(&mut self) -> &mut Graph {
        &mut self.graph
    }

    pub(crate) fn push_vertex(&mut self, label: Option<Label>) -> usize {
        self.labels.push(label);
        self.graph.add_vertex()
    }

    pub fn to_text(&self) -> String {
        let mut s = self.graph.to_edge_list();
        for (v, l) in self.labels.iter().enumerate() {
            if let Some(l) = l {
                s.push_str(&format!(" @{v}:{l}"));
            }
        }
        s
    }
}

impl fmt::Debug for LabeledGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LabeledGraph({})", self.to_text())
    }
}

pub fn parse_labeled(text: &str) -> Result<LabeledGraph> {
    let mut cur = Cursor::new(text);
    let lg = cur.labeled_edge_list()?;
    cur.skip_ws();
    if !cur.at_end() {
        return parse_err(cur.pos, "trailing input after labeled edge list");
    }
    Ok(lg)
}

/// A graph with a strictly positive probability measure on its vertices.
/// Doubles as the step graphon that splits `[0,1]` into intervals of
/// lengths `mu`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedGraph<S> {
    graph: Graph,
    mu: Vec<S>,
}

impl<S: Scalar> WeightedGraph<S> {
    pub fn new(graph: Graph, mu: Vec<S>) -> Result<Self> {
        if mu.len() != graph.order() {
            return Err(Error::DimensionMismatch { expected: graph.order(), got: mu.len() });
        }
        if graph.is_null() {
            return Err(Error::InvalidWeights("a weighted graph needs at least one vertex".into()));
        }
        if let Some(v) = mu.iter().position(|w| !is_positive(w)) {
            return Err(Error::InvalidWeights(format!("weight of vertex {v} is not positive")));
        }
        let total = mu.iter().cloned().fold(S::zero(), |a, b| a + b);
        if !S::is_unit_mass(&total) {
            return Err(Error::InvalidWeights(format!("weights sum to {}", total.render())));
        }
        Ok(WeightedGraph { graph, mu })
    }

    pub fn uniform(graph: Graph) -> Result<Self> {
        let n = graph.order();
        if n == 0 {
            return Err(Error::InvalidWeights("a weighted graph needs at least one vertex".into()));
        }
        let w = S::one() / S::from_rational(&crate::scalar::rat(n as i64, 1));
        WeightedGraph::new(graph, vec![w; n])
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn weights(&self) -> &[S] {
        &self.mu
    }

    pub fn order(&self) -> usize {
        self.graph.order()
    }

    pub fn to_text(&self) -> String {
        let mu: Vec<String> = self.mu.iter().map(Scalar::render).collect();
        format!("{}; mu: {}", self.graph.to_edge_list(), mu.join(", "))
    }
}

pub fn parse_weighted<S: Scalar>(text: &str) -> Result<WeightedGraph<S>> {
    let mut cur = Cursor::new(text);
    let g = cur.edge_list()?;
    cur.skip_ws();
    cur.expect(";")?;
    cur.skip_ws();
    cur.expect("mu:")?;
    let start = cur.pos;
    let rest = &text[start..];
    let mut mu = Vec::new();
    let mut offset = start;
    for part in rest.split(',') {
        let lit = part.trim();
        if lit.is_empty() {
            return parse_err(offset, "empty weight");
        }
        mu.push(S::parse_literal(lit).map_err(|e| match e {
            Error::Parse { msg, .. } => Error::Parse { pos: offset, msg },
            other => other,
        })?);
        offset += part.len() + 1;
    }
    WeightedGraph::new(g, mu)
}

/// Minimal hand-rolled scanner shared by the text formats.
pub(crate) struct Cursor<'a> {
    pub(crate) text: &'a str,
    pub(crate) pos: usize,
}

impl<'a> Cursor<'a> {
    pub(crate) fn new(text: &'a str) -> Self {
        Cursor { text, pos: 0 }
    }

    pub(crate) fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    pub(crate) fn at_end(&self) -> bool {
        self.pos >= self.text.len()
    }

    pub(crate) fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    pub(crate) fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    pub(crate) fn eat(&mut self, tok: &str) -> bool {
        if self.rest().starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    pub(crate) fn expect(&mut self, tok: &str) -> Result<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            parse_err(self.pos, format!("expected {tok:?}"))
        }
    }

    pub(crate) fn number(&mut self) -> Result<usize> {
        let digits: usize = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if digits == 0 {
            return parse_err(self.pos, "expected a number");
        }
        let s = &self.rest()[..digits];
        let v = s.parse().map_err(|_| Error::Parse { pos: self.pos, msg: "number too large".into() })?;
        self.pos += digits;
        Ok(v)
    }

    fn edge_pairs(&mut self, n: usize) -> Result<Vec<(usize, usize, usize)>> {
        let mut edges = Vec::new();
        self.skip_ws();
        if !matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            return Ok(edges);
        }
        loop {
            self.skip_ws();
            let at = self.pos;
            let u = self.number()?;
            self.skip_ws();
            self.expect("-")?;
            self.skip_ws();
            let v = self.number()?;
            if u >= n || v >= n {
                return parse_err(at, format!("vertex {} out of range for n={n}", u.max(v)));
            }
            edges.push((u, v, at));
            self.skip_ws();
            if !self.eat(",") {
                break;
            }
        }
        Ok(edges)
    }

    pub(crate) fn edge_list(&mut self) -> Result<Graph> {
        self.skip_ws();
        self.expect("n")?;
        self.skip_ws();
        self.expect("=")?;
        self.skip_ws();
        let n = self.number()?;
        self.skip_ws();
        self.expect(";")?;
        self.skip_ws();
        self.expect("edges:")?;
        let edges = self.edge_pairs(n)?;
        let mut g = Graph::empty(n);
        for (u, v, at) in edges {
            if u == v {
                return parse_err(at, format!("loop at vertex {u}"));
            }
            if g.has_edge(u, v) {
                return parse_err(at, format!("duplicate edge {u}-{v}"));
            }
            g.set_edge(u, v, true);
        }
        Ok(g)
    }

    pub(crate) fn labeled_edge_list(&mut self) -> Result<LabeledGraph> {
        let g = self.edge_list()?;
        let n = g.order();
        let mut labels = vec![None; n];
        loop {
            let before = self.pos;
            self.skip_ws();
            self.eat(",");
            self.skip_ws();
            if !self.eat("@") {
                self.pos = before;
                break;
            }
            let at = self.pos;
            let v = self.number()?;
            self.expect(":")?;
            let l = self.number()?;
            if v >= n {
                return parse_err(at, format!("vertex {v} out of range for n={n}"));
            }
            if labels[v].is_some() {
                return parse_err(at, format!("vertex {v} labeled twice"));
            }
            if labels.contains(&Some(l as Label)) {
                return parse_err(at, format!("label {l} used twice"));
            }
            labels[v] = Some(l as Label);
        }
        Ok(LabeledGraph { graph: g, labels })
    }
}
