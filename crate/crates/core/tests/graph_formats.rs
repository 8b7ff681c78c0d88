mod common;

use hombound::graph::{parse_graph_auto, parse_labeled, parse_weighted};
use hombound::{parse_graph, Error, Graph, GraphFormat, Rational};
use proptest::prelude::*;

fn oracle() -> Vec<(Graph, String)> {
    include_str!("data/graph6_oracle.txt")
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|line| {
            let mut parts = line.splitn(3, ';');
            let n: usize = parts.next().unwrap().parse().unwrap();
            let edges: Vec<(usize, usize)> = parts
                .next()
                .unwrap()
                .split(',')
                .filter(|s| !s.is_empty())
                .map(|e| {
                    let (a, b) = e.split_once('-').unwrap();
                    (a.parse().unwrap(), b.parse().unwrap())
                })
                .collect();
            (Graph::from_edges(n, &edges).unwrap(), parts.next().unwrap().to_string())
        })
        .collect()
}

#[test]
fn graph6_matches_reference_encoder() {
    let cases = oracle();
    assert_eq!(cases.len(), 1106);
    for (g, g6) in &cases {
        assert_eq!(&g.to_graph6(), g6, "{g}");
        assert_eq!(&Graph::from_graph6(g6).unwrap(), g);
    }
}

#[test]
fn named_graphs() {
    assert_eq!(Graph::cycle(5).to_graph6(), "Dhc");
    assert_eq!(parse_graph_auto("C5").unwrap(), Graph::cycle(5));
    assert_eq!(parse_graph_auto("Dhc").unwrap(), Graph::cycle(5));
    assert_eq!(parse_graph_auto("n=3; edges: 0-1, 1-2").unwrap(), Graph::path(3));
    assert_eq!(parse_graph_auto(">>graph6<<Ch").unwrap(), Graph::path(4));
}

#[test]
fn malformed_inputs_report_positions() {
    let pos = |r: Result<Graph, Error>| match r {
        Err(Error::Parse { pos, .. }) => pos,
        other => panic!("expected a parse error, got {other:?}"),
    };
    assert_eq!(pos(parse_graph("Dh", GraphFormat::Graph6)), 2);
    assert_eq!(pos(parse_graph("D h", GraphFormat::Graph6)), 1);
    assert_eq!(pos(parse_graph("", GraphFormat::Graph6)), 0);
    assert!(parse_graph("n=3; edges: 0-0", GraphFormat::EdgeList).is_err());
    assert!(parse_graph("n=3; edges: 0-1, 1-0", GraphFormat::EdgeList).is_err());
    assert!(parse_graph("n=3; edges: 0-1 junk", GraphFormat::EdgeList).is_err());
}

#[test]
fn labeled_and_weighted_text() {
    let h = parse_labeled("n=3; edges: 0-1, 1-2 @0:1, @2:5").unwrap();
    assert_eq!(h.label_set(), vec![1, 5]);
    assert_eq!(parse_labeled(&h.to_text()).unwrap(), h);
    let w = parse_weighted::<Rational>("n=2; edges: 0-1; mu: 1/3, 2/3").unwrap();
    assert_eq!(parse_weighted::<Rational>(&w.to_text()).unwrap(), w);
    assert!(parse_weighted::<Rational>("n=2; edges: 0-1; mu: 1/3, 1/3").is_err());
    let wf = parse_weighted::<f64>("n=2; edges: 0-1; mu: 0.25, 0.75").unwrap();
    assert_eq!(wf.weights(), &[0.25, 0.75]);
}

proptest! {
    #[test]
    fn graph6_round_trips(n in 0usize..80, seed in any::<u64>()) {
        let mut r = common::rng(seed);
        let g = common::random_graph(&mut r, n);
        prop_assert_eq!(Graph::from_graph6(&g.to_graph6()).unwrap(), g.clone());
        prop_assert_eq!(parse_graph(&g.to_edge_list(), GraphFormat::EdgeList).unwrap(), g);
    }
}
