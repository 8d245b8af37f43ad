//! Random expressions and tuples shared by the property and acceptance suites.
#![allow(dead_code)]

use proptest::prelude::*;
use ulbordism::algebra::{canonical_pairs, canonical_triples};
use ulbordism::expr::{LinkExpression, Node};
use ulbordism::{InvariantTuple, Z2, Z4};

pub fn label(n: usize) -> impl Strategy<Value = usize> {
    1..=n
}

pub fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((1..=n).collect::<Vec<_>>()).prop_shuffle()
}

fn leaf(n: usize) -> BoxedStrategy<Node> {
    prop_oneof![
        (-5i64..=5, label(n)).prop_map(|(m, i)| Node::ProjectivePlanes { m, i }),
        (-6i64..=6, -3i64..=3, label(n), label(n)).prop_map(|(p, q, i, j)| Node::Strand { p, q, i, j }),
        (-6i64..=6, label(n), label(n), prop::collection::vec(label(n), 0..4))
            .prop_map(|(p, i, j, beads)| Node::Necklace { p, i, j, beads }),
    ]
    .boxed()
}

/// Expression trees over `n` components, depth at most 6.
pub fn node(n: usize) -> BoxedStrategy<Node> {
    leaf(n)
        .prop_recursive(6, 48, 3, move |inner| {
            prop_oneof![
                prop::collection::vec(inner.clone(), 1..4).prop_map(Node::DisjointUnion),
                inner.clone().prop_map(|x| Node::Mirror(Box::new(x))),
                (inner, permutation(n)).prop_map(|(x, p)| Node::Relabel(Box::new(x), p)),
            ]
        })
        .boxed()
}

pub fn expression_on(n: usize) -> BoxedStrategy<LinkExpression> {
    node(n).prop_map(move |root| LinkExpression { n, root }).boxed()
}

/// Expressions with `1 <= n <= 5`.
pub fn expression() -> BoxedStrategy<LinkExpression> {
    (1usize..=5).prop_flat_map(expression_on).boxed()
}

pub fn tuple_on(n: usize) -> BoxedStrategy<InvariantTuple> {
    let pairs = canonical_pairs(n).count();
    let triples = canonical_triples(n).count();
    (
        prop::collection::vec(-50i64..=50, n),
        prop::collection::vec(0i64..4, pairs),
        prop::collection::vec(0i64..2, triples),
    )
        .prop_map(move |(e, d, t)| {
            let mut a = InvariantTuple::zero(n).unwrap();
            for (i, v) in e.into_iter().enumerate() {
                a.set_e(i + 1, v).unwrap();
            }
            for ((i, j), v) in canonical_pairs(n).zip(d) {
                a.set_d(i, j, Z4::new(v)).unwrap();
            }
            for ((i, j, k), v) in canonical_triples(n).zip(t) {
                a.set_t(i, j, k, Z2::new(v)).unwrap();
            }
            a
        })
        .boxed()
}

pub fn tuple() -> BoxedStrategy<InvariantTuple> {
    (1usize..=5).prop_flat_map(tuple_on).boxed()
}

/// Two or three tuples of the same shape.
pub fn tuple_pair() -> BoxedStrategy<(InvariantTuple, InvariantTuple)> {
    (1usize..=5).prop_flat_map(|n| (tuple_on(n), tuple_on(n))).boxed()
}

pub fn tuple_triple() -> BoxedStrategy<(InvariantTuple, InvariantTuple, InvariantTuple)> {
    (1usize..=5).prop_flat_map(|n| (tuple_on(n), tuple_on(n), tuple_on(n))).boxed()
}

/// Every ordered triple of labels with `i != j` and `j != k`.
pub fn valid_triples(n: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for i in 1..=n {
        for j in (1..=n).filter(|&j| j != i) {
            for k in (1..=n).filter(|&k| k != j) {
                out.push((i, j, k));
            }
        }
    }
    out
}
