//! Canonical forms and label-preserving isomorphism via colour refinement
//! plus individualisation backtracking.

use std::collections::HashSet;

use crate::graph::{Graph, LabeledGraph};

/// Byte key equal for two labeled graphs iff they are label-preservingly
/// isomorphic.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CanonKey(Vec<u8>);

impl CanonKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

pub fn canonical_form(h: &LabeledGraph) -> CanonKey {
    canonical_labeling(h).0
}

/// Returns the key together with a permutation `perm` such that
/// `h.permuted(&perm)` is the canonical representative.
pub fn canonical_labeling(h: &LabeledGraph) -> (CanonKey, Vec<usize>) {
    let g = h.graph();
    let colors = refine(g, initial_colors(h));
    let mut best: Option<(Vec<u8>, Vec<usize>)> = None;
    search_min(h, colors, &mut best);
    let (bytes, perm) = best.expect("search visits at least one leaf");
    (CanonKey(bytes), perm)
}

pub fn are_isomorphic_labeled(h1: &LabeledGraph, h2: &LabeledGraph) -> bool {
    h1.order() == h2.order()
        && h1.label_set() == h2.label_set()
        && h1.graph().edge_count() == h2.graph().edge_count()
        && canonical_form(h1) == canonical_form(h2)
}

/// True iff the automorphism group of `g` is trivial.
pub fn is_asymmetric(g: &Graph) -> bool {
    if g.order() <= 1 {
        return true;
    }
    if has_twins(g) {
        return false;
    }
    let h = LabeledGraph::unlabeled(g.clone());
    let colors = refine(g, vec![0; g.order()]);
    let mut seen = HashSet::new();
    !leaves_collide(&h, colors, &mut seen)
}

fn initial_colors(h: &LabeledGraph) -> Vec<u32> {
    let labels = h.label_set();
    h.labels()
        .iter()
        .map(|l| match l {
            None => 0,
            Some(l) => 1 + labels.binary_search(l).unwrap() as u32,
        })
        .collect()
}

/// Equitable refinement. New colours are ranks of `(old colour, sorted
/// neighbour colours)`, so the result is invariant under isomorphism.
pub(crate) fn refine(g: &Graph, mut colors: Vec<u32>) -> Vec<u32> {
    let n = g.order();
    let mut classes = count_classes(&colors);
    loop {
        let mut sigs: Vec<(u32, Vec<u32>, usize)> = (0..n)
            .map(|v| {
                let mut nb: Vec<u32> = g.neighbors(v).map(|u| colors[u]).collect();
                nb.sort_unstable();
                (colors[v], nb, v)
            })
            .collect();
        sigs.sort();
        let mut next = vec![0u32; n];
        let mut rank = 0u32;
        for i in 0..n {
            if i > 0 && (sigs[i].0 != sigs[i - 1].0 || sigs[i].1 != sigs[i - 1].1) {
                rank += 1;
            }
            next[sigs[i].2] = rank;
        }
        let new_classes = if n == 0 { 0 } else { rank as usize + 1 };
        colors = next;
        if new_classes == classes {
            return colors;
        }
        classes = new_classes;
    }
}

fn count_classes(colors: &[u32]) -> usize {
    colors.iter().collect::<HashSet<_>>().len()
}

/// First non-singleton cell in colour order, if any.
fn target_cell(colors: &[u32]) -> Option<Vec<usize>> {
    let n = colors.len();
    let mut size = vec![0usize; n];
    for &c in colors {
        size[c as usize] += 1;
    }
    let c = (0..n).find(|&c| size[c] > 1)? as u32;
    Some((0..n).filter(|&v| colors[v] == c).collect())
}

fn individualize(g: &Graph, colors: &[u32], v: usize) -> Vec<u32> {
    let c = colors[v];
    let split: Vec<u32> = colors
        .iter()
        .enumerate()
        .map(|(w, &cw)| 2 * cw + u32::from(cw == c && w != v))
        .collect();
    refine(g, split)
}

fn twins(g: &Graph, u: usize, w: usize) -> bool {
    (0..g.order()).all(|x| x == u || x == w || g.has_edge(u, x) == g.has_edge(w, x))
}

fn has_twins(g: &Graph) -> bool {
    let n = g.order();
    (0..n).any(|u| (u + 1..n).any(|w| twins(g, u, w)))
}

fn certificate(h: &LabeledGraph, colors: &[u32]) -> Vec<u8> {
    let n = h.order();
    let mut at = vec![0usize; n];
    for v in 0..n {
        at[colors[v] as usize] = v;
    }
    let mut out = Vec::with_capacity(4 + 4 * n + n * n / 16 + 1);
    out.extend((n as u32).to_be_bytes());
    for &v in &at {
        let l = h.label_of(v).map_or(0, |l| l as u64 + 1);
        out.extend(l.to_be_bytes());
    }
    let g = h.graph();
    let mut acc = 0u8;
    let mut bits = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(at[i], at[j]) as u8;
            bits += 1;
            if bits == 8 {
                out.push(acc);
                acc = 0;
                bits = 0;
            }
        }
    }
    if bits > 0 {
        out.push(acc << (8 - bits));
    }
    out
}

fn search_min(h: &LabeledGraph, colors: Vec<u32>, best: &mut Option<(Vec<u8>, Vec<usize>)>) {
    let g = h.graph();
    let Some(cell) = target_cell(&colors) else {
        let cert = certificate(h, &colors);
        if best.as_ref().is_none_or(|(b, _)| cert < *b) {
            let perm = colors.iter().map(|&c| c as usize).collect();
            *best = Some((cert, perm));
        }
        return;
    };
    // Twins in one cell are swapped by an automorphism fixing everything
    // individualised so far, so one representative per twin class suffices.
    let mut tried: Vec<usize> = Vec::new();
    for &v in &cell {
        if tried.iter().any(|&u| twins(g, u, v)) {
            continue;
        }
        tried.push(v);
        search_min(h, individualize(g, &colors, v), best);
    }
}

/// Explores the full search tree and reports whether two leaves share a
/// certificate, which happens iff a non-identity automorphism exists.
fn leaves_collide(h: &LabeledGraph, colors: Vec<u32>, seen: &mut HashSet<Vec<u8>>) -> bool {
    let g = h.graph();
    let Some(cell) = target_cell(&colors) else {
        return !seen.insert(certificate(h, &colors));
    };
    cell.iter()
        .any(|&v| leaves_collide(h, individualize(g, &colors, v), seen))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p3_end() -> LabeledGraph {
        LabeledGraph::with_labels(Graph::path(3), &[(0, 1)]).unwrap()
    }

    #[test]
    fn unlabeled_permutation_is_invisible() {
        let a = p3_end();
        let b = a.permuted(&[0, 2, 1]);
        // b: labeled vertex 0, path 0-2-1
        assert_ne!(a.graph(), b.graph());
        assert_eq!(canonical_form(&a), canonical_form(&b));
    }

    #[test]
    fn label_position_matters() {
        let end = p3_end();
        let mid = LabeledGraph::with_labels(Graph::path(3), &[(1, 1)]).unwrap();
        assert_ne!(canonical_form(&end), canonical_form(&mid));
    }

    #[test]
    fn label_values_matter() {
        let k2a = LabeledGraph::with_labels(Graph::complete(2), &[(0, 1)]).unwrap();
        let k2b = LabeledGraph::with_labels(Graph::complete(2), &[(0, 2)]).unwrap();
        assert!(!are_isomorphic_labeled(&k2a, &k2b));
        let k2 = LabeledGraph::unlabeled(Graph::complete(2));
        assert!(are_isomorphic_labeled(&k2, &k2.clone()));
    }

    #[test]
    fn representative_matches_key() {
        let a = p3_end().permuted(&[2, 0, 1]);
        let (key, perm) = canonical_labeling(&a);
        let rep = a.permuted(&perm);
        assert_eq!(canonical_labeling(&rep).0, key);
        assert_eq!(canonical_labeling(&rep).1, vec![0, 1, 2]);
    }

    #[test]
    fn asymmetry_small_cases() {
        assert!(is_asymmetric(&Graph::complete(1)));
        assert!(is_asymmetric(&Graph::null()));
        assert!(!is_asymmetric(&Graph::path(4)));
        assert!(!is_asymmetric(&Graph::cycle(5)));
    }

    #[test]
    fn null_graph_key() {
        let e = LabeledGraph::unlabeled(Graph::null());
        assert_eq!(canonical_form(&e), canonical_form(&e.clone()));
        assert_ne!(canonical_form(&e), canonical_form(&LabeledGraph::unlabeled(Graph::empty(1))));
    }
}
