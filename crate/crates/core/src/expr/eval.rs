use super::ast::{LinkExpression, Node};
use crate::algebra::{InvariantTuple, Z2, Z4};

/// Invariants of one bead `k` on a strand labelled `(i, j)`, all distinct.
///
/// Nonzero at `(j,i,k)`, `(k,i,j)`, `(i,j,k)` and `(k,j,i)`; zero at `(i,k,j)`
/// and `(j,k,i)`. Those values already satisfy the reversal and three-term
/// identities, so the canonical coordinates are read off directly.
fn add_bead(acc: &mut InvariantTuple, i: usize, j: usize, k: usize) {
    let hit = [(j, i, k), (k, i, j), (i, j, k), (k, j, i)];
    for (a, b, c) in hit {
        if a < b && a < c {
            let cur = acc.t(a, b, c).expect("canonical");
            acc.set_t(a, b, c, cur + Z2::new(1)).expect("canonical");
        }
    }
}

/// Adds `d(i, j) = p` (and hence `d(j, i) = -p`) for a strand with `i != j`.
fn add_strand(acc: &mut InvariantTuple, p: i64, i: usize, j: usize) {
    let (a, b, v) = if i < j { (i, j, p) } else { (j, i, -p) };
    let cur = acc.d(a, b).expect("canonical");
    acc.set_d(a, b, cur + Z4::new(v)).expect("canonical");
}

fn eval_node(node: &Node, n: usize) -> InvariantTuple {
    let mut acc = InvariantTuple::zero(n).expect("n >= 1");
    match node {
        Node::ProjectivePlanes { m, i } => {
            acc.set_e(*i, *m).expect("validated label");
        }
        Node::Strand { p, q, i, j } => {
            if i != j {
                add_strand(&mut acc, p + 2 * q, *i, *j);
            }
        }
        Node::Necklace { p, i, j, beads } => {
            if i != j {
                // Beads on a strand label shift p by 2 (and 2 = -2 mod 4).
                let folded = beads.iter().filter(|&&k| k == *i || k == *j).count() as i64;
                add_strand(&mut acc, p + 2 * folded, *i, *j);
                for &k in beads.iter().filter(|&&k| k != *i && k != *j) {
                    add_bead(&mut acc, *i, *j, k);
                }
            }
        }
        Node::DisjointUnion(children) => {
            for c in children {
                acc = acc.add(&eval_node(c, n)).expect("same n");
            }
        }
        Node::Mirror(child) => acc = eval_node(child, n).neg(),
        Node::Relabel(child, perm) => {
            acc = eval_node(child, n).relabel(perm).expect("validated permutation");
        }
    }
    acc
}

/// Bordism invariants of an expression, computed term by term.
pub fn eval_invariants(x: &LinkExpression) -> InvariantTuple {
    eval_node(&x.root, x.n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_expr;

    fn ev(s: &str) -> InvariantTuple {
        eval_invariants(&parse_expr(s).unwrap())
    }

    #[test]
    fn strand_values() {
        let a = ev("S[1](1,2)");
        assert_eq!(a.e_values(), &[0, 0]);
        assert_eq!(a.d(1, 2).unwrap(), Z4::new(1));
        assert_eq!(a.derived_t(1, 2, 1).unwrap(), Z2::new(1));
        assert_eq!(ev("S[1,1](1,2)"), ev("S[3](1,2)"));
        assert_eq!(ev("S[1](2,1)").d(1, 2).unwrap(), Z4::new(3));
        assert!(ev("S[3](2,2)").is_zero());
    }

    #[test]
    fn bead_values() {
        let a = ev("N[0](1,2;3)");
        assert_eq!(a.t(1, 2, 3).unwrap(), Z2::new(1));
        assert_eq!(a.t(1, 3, 2).unwrap(), Z2::ZERO);
        assert!(a.d_entries().all(|(_, v)| v.is_zero()));
        assert_eq!(a.derived_t(2, 1, 3).unwrap(), Z2::new(1));
        assert_eq!(a.derived_t(3, 1, 2).unwrap(), Z2::new(1));
        assert_eq!(a.derived_t(3, 2, 1).unwrap(), Z2::new(1));
        assert_eq!(a.derived_t(2, 3, 1).unwrap(), Z2::ZERO);
    }

    #[test]
    fn mirror_and_planes() {
        assert_eq!(ev("Mirror(P[3](1))").e(1).unwrap(), -3);
        assert_eq!(ev("P[2](1) + Mirror(P[2](1))"), InvariantTuple::zero(1).unwrap());
    }
}
