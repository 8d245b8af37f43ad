//! Normalization of link expressions to the canonical split union
//! `P^{m_i}(i) + S^{p_ij}(i,j) + N^0(i,j;k)`.
//!
//! The rewrite system runs in fixed stages, each of which strictly shrinks a
//! measure (tree depth, then bead count, then the number of atoms), so every
//! input terminates after one pass through the stage list.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::ast::{LinkExpression, Node};
use super::eval::eval_invariants;
use crate::algebra::{canonical_triples, InvariantTuple, Z4};
use crate::error::{Error, Result};

/// A generator term with no `Mirror`, `Relabel` or union above it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Atom {
    Planes { m: i64, i: usize },
    Strand { p: i64, q: i64, i: usize, j: usize },
    Necklace { p: i64, i: usize, j: usize, beads: Vec<usize> },
}

impl Atom {
    pub fn to_node(&self) -> Node {
        match self.clone() {
            Atom::Planes { m, i } => Node::ProjectivePlanes { m, i },
            Atom::Strand { p, q, i, j } => Node::Strand { p, q, i, j },
            Atom::Necklace { p, i, j, beads } => Node::Necklace { p, i, j, beads },
        }
    }
}

pub fn atoms_to_expression(n: usize, atoms: &[Atom]) -> LinkExpression {
    LinkExpression { n, root: Node::DisjointUnion(atoms.iter().map(Atom::to_node).collect()) }
}

/// Stage 1: push `Mirror` and `Relabel` down to the generators.
pub fn flatten(node: &Node) -> Vec<Atom> {
    fn go(node: &Node, mirrored: bool, map: &dyn Fn(usize) -> usize, out: &mut Vec<Atom>) {
        let s = if mirrored { -1 } else { 1 };
        match node {
            Node::ProjectivePlanes { m, i } => out.push(Atom::Planes { m: s * m, i: map(*i) }),
            Node::Strand { p, q, i, j } => out.push(Atom::Strand { p: s * p, q: s * q, i: map(*i), j: map(*j) }),
            Node::Necklace { p, i, j, beads } => out.push(Atom::Necklace {
                p: s * p,
                i: map(*i),
                j: map(*j),
                beads: beads.iter().map(|&k| map(k)).collect(),
            }),
            Node::DisjointUnion(children) => children.iter().for_each(|c| go(c, mirrored, map, out)),
            Node::Mirror(child) => go(child, !mirrored, map, out),
            Node::Relabel(child, perm) => {
                let composed = |l: usize| map(perm[l - 1]);
                go(child, mirrored, &composed, out)
            }
        }
    }
    let mut out = Vec::new();
    go(node, false, &|l| l, &mut out);
    out
}

/// Stage 2: `S^{p,q} -> S^{p+2q}` and reduce strand twists mod 4; strands
/// become bead-free necklaces.
pub fn stage_reduce_twists(atoms: Vec<Atom>) -> Vec<Atom> {
    atoms
        .into_iter()
        .map(|a| match a {
            Atom::Strand { p, q, i, j } => Atom::Necklace { p: (p + 2 * q).rem_euclid(4), i, j, beads: vec![] },
            Atom::Necklace { p, i, j, beads } => Atom::Necklace { p: p.rem_euclid(4), i, j, beads },
            other => other,
        })
        .collect()
}

/// Stage 3: a necklace on a single label is null-bordant.
pub fn stage_drop_diagonal(atoms: Vec<Atom>) -> Vec<Atom> {
    atoms.into_iter().filter(|a| !matches!(a, Atom::Necklace { i, j, .. } if i == j)).collect()
}

/// Stage 4: `N^p(i,j;K) -> N^{-p}(j,i;K)` when `i > j`.
pub fn stage_orient(atoms: Vec<Atom>) -> Vec<Atom> {
    atoms
        .into_iter()
        .map(|a| match a {
            Atom::Necklace { p, i, j, beads } if i > j => Atom::Necklace { p: (-p).rem_euclid(4), i: j, j: i, beads },
            other => other,
        })
        .collect()
}

/// Stage 5: a bead labelled `i` folds into the strand as `p + 2`, one
/// labelled `j` as `p - 2`.
pub fn stage_fold_beads(atoms: Vec<Atom>) -> Vec<Atom> {
    atoms
        .into_iter()
        .map(|a| match a {
            Atom::Necklace { mut p, i, j, beads } => {
                let mut kept = Vec::with_capacity(beads.len());
                for k in beads {
                    if k == i {
                        p += 2;
                    } else if k == j {
                        p -= 2;
                    } else {
                        kept.push(k);
                    }
                }
                Atom::Necklace { p: p.rem_euclid(4), i, j, beads: kept }
            }
            other => other,
        })
        .collect()
}

/// Stage 6: cancel pairs of equal beads.
pub fn stage_cancel_bead_pairs(atoms: Vec<Atom>) -> Vec<Atom> {
    atoms
        .into_iter()
        .map(|a| match a {
            Atom::Necklace { p, i, j, beads } => {
                let mut parity: BTreeMap<usize, bool> = BTreeMap::new();
                for k in beads {
                    *parity.entry(k).or_default() ^= true;
                }
                let beads = parity.into_iter().filter(|(_, odd)| *odd).map(|(k, _)| k).collect();
                Atom::Necklace { p, i, j, beads }
            }
            other => other,
        })
        .collect()
}

/// Stage 7: `N^p(i,j;k_1..k_m) -> S^p(i,j) + N^0(i,j;k_1) + ... + N^0(i,j;k_m)`.
pub fn stage_split(atoms: Vec<Atom>) -> Vec<Atom> {
    let mut out = Vec::new();
    for a in atoms {
        match a {
            Atom::Necklace { p, i, j, beads } if !beads.is_empty() => {
                out.push(Atom::Necklace { p, i, j, beads: vec![] });
                out.extend(beads.into_iter().map(|k| Atom::Necklace { p: 0, i, j, beads: vec![k] }));
            }
            other => out.push(other),
        }
    }
    out
}

/// Stage 8: `N^0(i,j;k) -> N^0(k,i;j) + N^0(k,j;i)` when `k < i < j`.
pub fn stage_reorder_triples(atoms: Vec<Atom>) -> Vec<Atom> {
    let mut out = Vec::new();
    for a in atoms {
        match a {
            Atom::Necklace { p: 0, i, j, ref beads } if beads.len() == 1 && beads[0] < i => {
                let k = beads[0];
                out.push(Atom::Necklace { p: 0, i: k, j: i, beads: vec![j] });
                out.push(Atom::Necklace { p: 0, i: k, j, beads: vec![i] });
            }
            other => out.push(other),
        }
    }
    out
}

/// Stage 9: merge strands on the same pair, summing mod 4; drop zeros.
pub fn stage_merge_strands(atoms: Vec<Atom>) -> Vec<Atom> {
    let mut sums: BTreeMap<(usize, usize), i64> = BTreeMap::new();
    let mut rest = Vec::new();
    for a in atoms {
        match a {
            Atom::Necklace { p, i, j, beads } if beads.is_empty() => *sums.entry((i, j)).or_default() += p,
            other => rest.push(other),
        }
    }
    rest.extend(
        sums.into_iter()
            .map(|((i, j), p)| (i, j, p.rem_euclid(4)))
            .filter(|&(_, _, p)| p != 0)
            .map(|(i, j, p)| Atom::Necklace { p, i, j, beads: vec![] }),
    );
    rest
}

/// Stage 10: basic necklaces are 2-torsion; keep one copy of each odd one.
pub fn stage_merge_triples(atoms: Vec<Atom>) -> Vec<Atom> {
    let mut parity: BTreeMap<(usize, usize, usize), bool> = BTreeMap::new();
    let mut rest = Vec::new();
    for a in atoms {
        match a {
            Atom::Necklace { p: 0, i, j, ref beads } if beads.len() == 1 => {
                *parity.entry((i, j, beads[0])).or_default() ^= true;
            }
            other => rest.push(other),
        }
    }
    rest.extend(
        parity
            .into_iter()
            .filter(|(_, odd)| *odd)
            .map(|((i, j, k), _)| Atom::Necklace { p: 0, i, j, beads: vec![k] }),
    );
    rest
}

/// Stage 11: one-component parts are classified by the Euler number alone.
pub fn stage_merge_planes(atoms: Vec<Atom>) -> Vec<Atom> {
    let mut sums: BTreeMap<usize, i64> = BTreeMap::new();
    let mut rest = Vec::new();
    for a in atoms {
        match a {
            Atom::Planes { m, i } => *sums.entry(i).or_default() += m,
            other => rest.push(other),
        }
    }
    rest.extend(sums.into_iter().filter(|(_, m)| *m != 0).map(|(i, m)| Atom::Planes { m, i }));
    rest
}

/// A named rewrite stage acting on flat atom lists.
pub struct Stage {
    pub name: &'static str,
    pub run: fn(Vec<Atom>) -> Vec<Atom>,
}

/// Stages 2 through 11, in application order.
pub const STAGES: &[Stage] = &[
    Stage { name: "reduce-twists", run: stage_reduce_twists },
    Stage { name: "drop-diagonal", run: stage_drop_diagonal },
    Stage { name: "orient", run: stage_orient },
    Stage { name: "fold-beads", run: stage_fold_beads },
    Stage { name: "cancel-bead-pairs", run: stage_cancel_bead_pairs },
    Stage { name: "split", run: stage_split },
    Stage { name: "reorder-triples", run: stage_reorder_triples },
    Stage { name: "merge-strands", run: stage_merge_strands },
    Stage { name: "merge-triples", run: stage_merge_triples },
    Stage { name: "merge-planes", run: stage_merge_planes },
];

/// The canonical split union: `m_i != 0`, `i < j` with `p_ij != 0`, and
/// triples with `i < j < k` or `i < k < j`, each at most once.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NormalForm {
    pub n: usize,
    pub planes: BTreeMap<usize, i64>,
    pub strands: BTreeMap<(usize, usize), Z4>,
    pub triples: BTreeSet<(usize, usize, usize)>,
}

impl NormalForm {
    pub fn empty(n: usize) -> Self {
        Self { n, planes: BTreeMap::new(), strands: BTreeMap::new(), triples: BTreeSet::new() }
    }

    pub fn is_empty(&self) -> bool {
        self.planes.is_empty() && self.strands.is_empty() && self.triples.is_empty()
    }

    fn from_atoms(n: usize, atoms: Vec<Atom>) -> Self {
        let mut nf = Self::empty(n);
        for a in atoms {
            match a {
                Atom::Planes { m, i } => {
                    nf.planes.insert(i, m);
                }
                Atom::Necklace { p, i, j, beads } if beads.is_empty() => {
                    nf.strands.insert((i, j), Z4::new(p));
                }
                Atom::Necklace { i, j, beads, .. } => {
                    nf.triples.insert((i, j, beads[0]));
                }
                Atom::Strand { .. } => unreachable!("strands are rewritten in stage 2"),
            }
        }
        debug_assert!(nf.satisfies_conditions(), "{nf:?}");
        nf
    }

    /// Checks the three normal-form conditions.
    pub fn satisfies_conditions(&self) -> bool {
        self.planes.values().all(|&m| m != 0)
            && self.strands.iter().all(|(&(i, j), p)| i < j && !p.is_zero())
            && self.triples.iter().all(|&(i, j, k)| (i < j && j < k) || (i < k && k < j))
    }

    pub fn atoms(&self) -> Vec<Atom> {
        let mut out: Vec<Atom> = self.planes.iter().map(|(&i, &m)| Atom::Planes { m, i }).collect();
        out.extend(self.strands.iter().map(|(&(i, j), p)| Atom::Strand { p: p.value() as i64, q: 0, i, j }));
        out.extend(self.triples.iter().map(|&(i, j, k)| Atom::Necklace { p: 0, i, j, beads: vec![k] }));
        out
    }

    pub fn to_expression(&self) -> LinkExpression {
        atoms_to_expression(self.n, &self.atoms())
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_expression())
    }
}

/// Runs the rewrite stages to the canonical split union.
pub fn normalize(x: &LinkExpression) -> NormalForm {
    let atoms = STAGES.iter().fold(flatten(&x.root), |acc, stage| (stage.run)(acc));
    NormalForm::from_atoms(x.n, atoms)
}

/// Reads the normal form directly off the coordinates.
pub fn decode_class(a: &InvariantTuple) -> NormalForm {
    let n = a.n();
    let mut nf = NormalForm::empty(n);
    for (i, &m) in a.e_values().iter().enumerate() {
        if m != 0 {
            nf.planes.insert(i + 1, m);
        }
    }
    for (key, v) in a.d_entries() {
        if !v.is_zero() {
            nf.strands.insert(key, v);
        }
    }
    for key in canonical_triples(n) {
        if !a.t(key.0, key.1, key.2).expect("canonical").is_zero() {
            nf.triples.insert(key);
        }
    }
    nf
}

/// Whether two expressions present bordant surface-links.
pub fn bordant(x: &LinkExpression, y: &LinkExpression) -> Result<bool> {
    if x.n != y.n {
        return Err(Error::ShapeMismatch { left: x.n, right: y.n });
    }
    Ok(eval_invariants(x) == eval_invariants(y))
}
