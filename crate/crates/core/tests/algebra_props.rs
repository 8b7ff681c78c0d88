mod common;

use hombound::constructions::{finite_lex_density, lex_density, lex_product, moment, LexMode, LexSpec};
use hombound::expr::parse_expression;
use hombound::quantum::combine_forcing;
use hombound::scalar::rat;
use hombound::{weighted_density, Graph, PinMap, QuantumGraph, Rational, WeightedGraph};
use num::{Signed, Zero};
use proptest::prelude::*;
use rand::Rng;

use common::*;

/// Two or three random quantum graphs on one label set, usually sharing a core.
fn family(seed: u64, count: usize) -> (Vec<QuantumGraph>, WeightedGraph<Rational>, PinMap) {
    let mut r = rng(seed);
    let labels = random_labels(&mut r, 2);
    let core = random_graph(&mut r, labels.len());
    let qs = (0..count)
        .map(|_| {
            let c = if r.gen_bool(0.15) { random_graph(&mut r, labels.len()) } else { core.clone() };
            let terms = r.gen_range(1..=2);
            random_quantum(&mut r, &c, &labels, terms, 2)
        })
        .collect();
    let w = random_weighted(&mut r, 1, 4);
    let phi = labels.iter().map(|&l| (l, r.gen_range(0..w.order()))).collect();
    (qs, w, phi)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn product_is_commutative_and_associative(seed in any::<u64>()) {
        let (q, _, _) = family(seed, 3);
        prop_assert_eq!(q[0].product(&q[1]).unwrap(), q[1].product(&q[0]).unwrap());
        let left = q[0].product(&q[1]).unwrap().product(&q[2]).unwrap();
        let right = q[0].product(&q[1].product(&q[2]).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn product_distributes(seed in any::<u64>()) {
        let (q, _, _) = family(seed, 3);
        let lhs = q[0].product(&q[1].add(&q[2]).unwrap()).unwrap();
        let rhs = q[0].product(&q[1]).unwrap().add(&q[0].product(&q[2]).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn evaluation_is_multiplicative(seed in any::<u64>()) {
        let (q, w, phi) = family(seed, 2);
        let lhs = q[0].product(&q[1]).unwrap().evaluate(Some(&phi), &w).unwrap();
        let rhs = q[0].evaluate(Some(&phi), &w).unwrap() * q[1].evaluate(Some(&phi), &w).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn unlabel_is_linear(seed in any::<u64>(), c in -4i64..=4) {
        let (q, w, _) = family(seed, 2);
        let combo = q[0].scale(&rat(c, 3)).add(&q[1]).unwrap();
        let lhs = combo.unlabel().evaluate(None, &w).unwrap();
        let rhs = rat(c, 3) * q[0].unlabel().evaluate(None, &w).unwrap() + q[1].unlabel().evaluate(None, &w).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn squares_are_nonnegative(seed in any::<u64>()) {
        let (q, w, _) = family(seed, 1);
        let v = q[0].product(&q[0]).unwrap().unlabel().evaluate(None, &w).unwrap();
        prop_assert!(!v.is_negative());
    }

    #[test]
    fn display_round_trips(seed in any::<u64>()) {
        let (q, _, _) = family(seed, 1);
        let back = parse_expression(&q[0].to_string()).unwrap();
        // a zero prints as `0`, which carries no labels
        if q[0].is_zero() {
            prop_assert!(back.is_zero());
        } else {
            prop_assert_eq!(back, q[0].clone());
        }
    }

    /// The lex recursion for prime patterns, checked on explicit products.
    #[test]
    fn lex_recursion_for_prime_patterns(seed in any::<u64>(), which in 0usize..3) {
        let mut r = rng(seed);
        let h = [Graph::complete(2), Graph::path(4), Graph::cycle(5)][which].clone();
        let a = random_weighted(&mut r, 1, 4);
        let b = random_weighted(&mut r, 1, 4);
        let lhs = weighted_density(&h, &lex_product(&a, &b).unwrap()).unwrap();
        let rhs = weighted_density(&h, &a).unwrap() + moment(a.weights(), h.order() as u32) * weighted_density(&h, &b).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    /// The folding recursion agrees with brute force on any pattern.
    #[test]
    fn finite_lex_matches_explicit_products(seed in any::<u64>(), k in 1usize..=4, depth in 1usize..=3) {
        let mut r = rng(seed);
        let h = random_graph(&mut r, k);
        let levels: Vec<_> = (0..depth).map(|_| random_weighted(&mut r, 1, 3)).collect();
        let mut product = levels[0].clone();
        for l in &levels[1..] {
            product = lex_product(&product, l).unwrap();
        }
        prop_assert_eq!(finite_lex_density(&h, &levels).unwrap(), weighted_density(&h, &product).unwrap());
    }

    #[test]
    fn truncations_respect_their_bounds(seed in any::<u64>(), n in 1usize..=10) {
        let mut r = rng(seed);
        let prefix: Vec<_> = (0..r.gen_range(0..=2)).map(|_| random_weighted(&mut r, 2, 3)).collect();
        let cycle: Vec<_> = (0..r.gen_range(1..=2)).map(|_| random_weighted(&mut r, 2, 3)).collect();
        let spec = LexSpec::new(prefix, cycle).unwrap();
        let exact = lex_density(&Graph::path(4), &spec, LexMode::Exact).unwrap().value;
        let t = lex_density(&Graph::path(4), &spec, LexMode::Truncated(n)).unwrap();
        prop_assert!((exact - t.value).abs() <= t.error_bound);
    }
}

#[test]
fn lex_recursion_fails_without_primeness() {
    let k2 = WeightedGraph::<Rational>::uniform(Graph::complete(2)).unwrap();
    let prod = lex_product(&k2, &k2).unwrap();
    for h in [Graph::empty(2), Graph::complete(3)] {
        let lhs = weighted_density(&h, &prod).unwrap();
        let rhs = weighted_density(&h, &k2).unwrap() + moment(k2.weights(), h.order() as u32) * weighted_density(&h, &k2).unwrap();
        assert_ne!(lhs, rhs, "{h}");
    }
    let spec = LexSpec::pure_power(k2).unwrap();
    assert!(lex_density(&Graph::complete(3), &spec, LexMode::Exact).is_err());
    assert!(lex_density(&Graph::empty(2), &spec, LexMode::Exact).is_err());
}

#[test]
fn combine_forcing_vanishes_exactly_on_common_zeros() {
    let k2 = WeightedGraph::<Rational>::uniform(Graph::complete(2)).unwrap();
    let f1 = parse_expression("K2 - 1/2").unwrap();
    let f2 = parse_expression("K3").unwrap();
    assert!(combine_forcing(&f1, &QuantumGraph::zero(Vec::new())).unwrap().evaluate(None, &k2).unwrap().is_zero());
    let both = combine_forcing(&f1, &f2).unwrap().evaluate(None, &k2).unwrap();
    assert!(both.is_zero());
    let k3 = WeightedGraph::<Rational>::uniform(Graph::complete(3)).unwrap();
    assert!(combine_forcing(&f1, &f2).unwrap().evaluate(None, &k3).unwrap() > Rational::zero());
}
