//! Acceptance suite: one pass/fail line per criterion.
//!
//! Runs as a plain binary (`harness = false`) so the report is always
//! printed; exits non-zero if any criterion fails.

mod common;

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ulbordism::algebra::{canonical_pairs, canonical_triples, forgetful, group_shape, kappa, lambda, nu, OrientedClass};
use ulbordism::expr::{decode_class, eval_invariants, normalize, LinkExpression, Node};
use ulbordism::movie::*;
use ulbordism::{InvariantTuple, Z2, Z4};

const GROUP_BUDGET: Duration = Duration::from_secs(1);
const RELATION_BUDGET: Duration = Duration::from_secs(5);
const MOVIE_BUDGET: Duration = Duration::from_secs(10);
const RANDOM_EXPRESSIONS: usize = 1000;
const RANDOM_CLASSES: usize = 1000;
const PERTURBED_MOVIES: usize = 40;
const PROJECTION_SEEDS: u64 = 20;
const RELATION_LABELS: usize = 4;

type Outcome = Result<String, String>;

fn check(cond: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn timed(budget: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let detail = f()?;
    let spent = start.elapsed();
    check(spent < budget, || format!("took {spent:.2?}, budget {budget:.0?}"))?;
    Ok(format!("{detail} in {spent:.2?}"))
}

fn samples<T: std::fmt::Debug>(strategy: impl Strategy<Value = T>, count: usize, seed: u8) -> Vec<T> {
    let rng = TestRng::from_seed(RngAlgorithm::ChaCha, &[seed; 32]);
    let mut runner = TestRunner::new_with_rng(Config::default(), rng);
    (0..count).map(|_| strategy.new_tree(&mut runner).expect("strategy").current()).collect()
}

fn expr(n: usize, root: Node) -> LinkExpression {
    LinkExpression { n, root }
}

fn necklace(p: i64, i: usize, j: usize, beads: &[usize]) -> Node {
    Node::Necklace { p, i, j, beads: beads.to_vec() }
}

fn union(parts: Vec<Node>) -> Node {
    Node::DisjointUnion(parts)
}

fn movie(g: &str) -> Movie {
    generator_movie(g.parse().expect("generator name")).expect("generator movie")
}

fn opts(push_off: PushOffOptions, seed: u64) -> LinkingOptions {
    LinkingOptions { push_off, seed }
}

fn group_structure() -> Outcome {
    timed(GROUP_BUDGET, || {
        let table = [(1, 0, 0), (2, 1, 0), (3, 3, 2), (4, 6, 8), (5, 10, 20), (6, 15, 40)];
        for (n, expected) in (1..=6usize).zip(table) {
            let g = group_shape(n).map_err(|e| e.to_string())?;
            check((g.free_rank, g.z4_count, g.z2_count) == expected, || format!("n={n}: {g}"))?;
        }
        let pairs: Vec<_> = canonical_pairs(3).collect();
        let triples: Vec<_> = canonical_triples(3).collect();
        let mut seen = 0;
        for code in 0..256u32 {
            let mut a = InvariantTuple::zero(3).unwrap();
            let mut rest = code;
            for &(i, j) in &pairs {
                a.set_d(i, j, Z4::new(i64::from(rest % 4))).unwrap();
                rest /= 4;
            }
            for &(i, j, k) in &triples {
                a.set_t(i, j, k, Z2::new(i64::from(rest % 2))).unwrap();
                rest /= 2;
            }
            let back = eval_invariants(&decode_class(&a).to_expression());
            check(back == a, || format!("torsion element {a} decodes to {back}"))?;
            seen += 1;
        }
        Ok(format!("shapes n=1..6, {seen} torsion elements round-trip"))
    })
}

fn generator_table() -> Outcome {
    for p in 0..4i64 {
        for q in 0..4i64 {
            let a = eval_invariants(&expr(2, Node::Strand { p, q, i: 1, j: 2 }));
            let d = (p + 2 * q).rem_euclid(4);
            check(a.e_values() == [0, 0], || format!("S[{p},{q}] e={:?}", a.e_values()))?;
            check(a.d(1, 2).unwrap() == Z4::new(d), || format!("S[{p},{q}] d12={}", a.d(1, 2).unwrap()))?;
            for (i, j, k) in [(1, 2, 1), (2, 1, 2)] {
                let t = a.derived_t(i, j, k).unwrap();
                check(t == Z2::new(d % 2), || format!("S[{p},{q}] t{i}{j}{k}={t}"))?;
            }
        }
    }
    Ok("16 strands S[p,q](1,2)".into())
}

/// Pairs of bordant expressions from the necklace relations.
fn relation_instances() -> Vec<(&'static str, LinkExpression, LinkExpression)> {
    let n = RELATION_LABELS;
    let labels: Vec<usize> = (1..=n).collect();
    let mut bead_lists: Vec<Vec<usize>> = vec![vec![]];
    bead_lists.extend(labels.iter().map(|&k| vec![k]));
    for &a in &labels {
        for &b in &labels {
            bead_lists.push(vec![a, b]);
        }
    }
    let zero = || union(vec![]);
    let mut out = Vec::new();
    for p in 0..4i64 {
        for &i in &labels {
            for beads in &bead_lists {
                out.push(("diagonal", expr(n, necklace(p, i, i, beads)), expr(n, zero())));
            }
            for &j in labels.iter().filter(|&&j| j != i) {
                for beads in &bead_lists {
                    out.push(("reverse", expr(n, necklace(p, i, j, beads)), expr(n, necklace(-p, j, i, beads))));
                    for &k in &labels {
                        let mut doubled = vec![k, k];
                        doubled.extend(beads);
                        out.push(("bead pair", expr(n, necklace(p, i, j, &doubled)), expr(n, necklace(p, i, j, beads))));
                    }
                    let mut folded = vec![i];
                    folded.extend(beads);
                    out.push(("bead fold", expr(n, necklace(p, i, j, &folded)), expr(n, necklace(p + 2, i, j, beads))));
                }
                for p2 in 0..4i64 {
                    for a in bead_lists.iter().filter(|b| b.len() <= 1) {
                        for b in bead_lists.iter().filter(|b| b.len() <= 1) {
                            let joined: Vec<usize> = a.iter().chain(b).copied().collect();
                            out.push((
                                "union",
                                expr(n, union(vec![necklace(p, i, j, a), necklace(p2, i, j, b)])),
                                expr(n, necklace(p + p2, i, j, &joined)),
                            ));
                        }
                    }
                }
                if p == 0 {
                    out.push(("bare strand", expr(n, necklace(0, i, j, &[])), expr(n, zero())));
                    for &k in labels.iter().filter(|&&k| k != i && k != j) {
                        out.push((
                            "reorder",
                            expr(n, necklace(0, i, j, &[k])),
                            expr(n, union(vec![necklace(0, k, i, &[j]), necklace(0, k, j, &[i])])),
                        ));
                    }
                }
            }
        }
    }
    out
}

fn necklace_relations() -> Outcome {
    timed(RELATION_BUDGET, || {
        let instances = relation_instances();
        let mut per_rule: BTreeMap<&str, usize> = BTreeMap::new();
        for (rule, lhs, rhs) in &instances {
            let (a, b) = (eval_invariants(lhs), eval_invariants(rhs));
            check(a == b, || format!("{rule}: {lhs} gives {a}, {rhs} gives {b}"))?;
            let (x, y) = (normalize(lhs), normalize(rhs));
            check(x == y, || format!("{rule}: {lhs} normalizes to {x}, {rhs} to {y}"))?;
            *per_rule.entry(rule).or_default() += 1;
        }
        Ok(format!("{} instances over {} rules", instances.len(), per_rule.len()))
    })
}

fn derived_identities() -> Outcome {
    let xs = samples(common::expression(), RANDOM_EXPRESSIONS, 4);
    for x in &xs {
        let a = eval_invariants(x);
        let n = a.n();
        for i in 1..=n {
            for j in (1..=n).filter(|&j| j != i) {
                let (dij, dji) = (a.derived_d(i, j).unwrap(), a.derived_d(j, i).unwrap());
                check(dij == -dji, || format!("{x}: d{i}{j}={dij}, d{j}{i}={dji}"))?;
                check(a.derived_t(i, j, i).unwrap() == lambda(dij), || format!("{x}: t{i}{j}{i}"))?;
                for k in (1..=n).filter(|&k| k != i && k != j) {
                    check(a.derived_t(i, j, k).unwrap() == a.derived_t(k, j, i).unwrap(), || format!("{x}: t{i}{j}{k} vs t{k}{j}{i}"))?;
                    let sum = a.derived_t(j, i, k).unwrap() + a.derived_t(i, j, k).unwrap() + a.derived_t(i, k, j).unwrap();
                    check(sum.is_zero(), || format!("{x}: three-term relation on ({i},{j},{k})"))?;
                }
            }
        }
    }
    Ok(format!("{} random expressions", xs.len()))
}

fn two_path_oracle() -> Outcome {
    let xs = samples(common::expression(), RANDOM_EXPRESSIONS, 5);
    for x in &xs {
        let (nf, decoded) = (normalize(x), decode_class(&eval_invariants(x)));
        check(nf == decoded, || format!("{x}: rewrite {nf}, decode {decoded}"))?;
    }
    Ok(format!("{} random expressions", xs.len()))
}

fn movie_fixtures() -> Outcome {
    timed(MOVIE_BUDGET, || {
        let p_plus = euler_numbers(&movie("P+(1)"));
        check(p_plus.get(&1) == Some(&2), || format!("P+ euler {p_plus:?}"))?;
        let p_minus = euler_numbers(&movie("P-(1)"));
        check(p_minus.get(&1) == Some(&-2), || format!("P- euler {p_minus:?}"))?;

        let s1 = movie("S1(1,2)");
        let d = double_linking(&s1, opts(PushOffOptions::default(), DEFAULT_SEED)).map_err(|e| e.to_string())?;
        check(d[&(1, 2)] == Z4::new(1) && d[&(2, 1)] == Z4::new(3), || format!("S1 d {d:?}"))?;
        let census = triple_point_census(&s1);
        check(census == BTreeMap::from([((1, 2, 1), 1), ((2, 1, 2), 1)]), || format!("S1 triple points {census:?}"))?;

        let bead = movie("N0(1,2;3)");
        let count = triple_points(&bead).len();
        check(count == 4, || format!("bead has {count} triple points"))?;
        let t = triple_linking(&bead);
        let (i, j, k) = (1, 2, 3);
        let expected = [((j, i, k), 1), ((i, j, k), 1), ((k, i, j), 1), ((k, j, i), 1), ((i, k, j), 0), ((j, k, i), 0)];
        for ((a, b, c), v) in expected {
            let got = t.residue(a, b, c).map_err(|e| e.to_string())?;
            check(got == Z2::new(v), || format!("bead t({a},{b},{c})={got}"))?;
        }
        let full = movie_invariants(&bead, opts(PushOffOptions::default(), DEFAULT_SEED)).map_err(|e| e.to_string())?;
        check(full.d_entries().all(|(_, v)| v.is_zero()), || format!("bead {full}"))?;
        Ok("P+, P-, S1 and bead".into())
    })
}

fn cross_module_equality() -> Outcome {
    let gens = bundled_generators();
    for g in &gens {
        let m = generator_movie(*g).map_err(|e| format!("{g}: {e}"))?;
        let got = movie_invariants(&m, opts(PushOffOptions::default(), DEFAULT_SEED)).map_err(|e| format!("{g}: {e}"))?;
        let want = eval_invariants(&g.expression(m.n));
        check(got == want, || format!("{g}: movie {got}, expression {want}"))?;
    }
    Ok(format!("{} bundled generators", gens.len()))
}

fn perturbed(m: &Movie, rng: &mut ChaCha8Rng) -> Movie {
    let mut out = m.clone();
    for s in &mut out.stills {
        let shift = [rng.gen_range(-1e-3..1e-3), rng.gen_range(-1e-3..1e-3)];
        for c in &mut s.circles {
            for p in &mut c.points {
                p[0] += shift[0] + rng.gen_range(-1e-9..1e-9);
                p[1] += shift[1] + rng.gen_range(-1e-9..1e-9);
            }
        }
        for x in &mut s.crossings {
            x.position = [x.position[0] + shift[0], x.position[1] + shift[1]];
        }
    }
    if rng.gen_bool(0.5) {
        out = mirror_movie(&out);
    }
    out
}

fn validation_laws() -> Outcome {
    let mut movies: Vec<(String, Movie)> = bundled_generators().into_iter().map(|g| (g.to_string(), generator_movie(g).unwrap())).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for r in 0..PERTURBED_MOVIES {
        let (name, base) = &movies[r % bundled_generators().len()];
        let m = perturbed(base, &mut rng);
        check(validate_movie(&m).is_valid(), || format!("perturbed {name}: {}", validate_movie(&m)))?;
        movies.push((format!("perturbed {name}"), m));
    }
    for (name, m) in &movies {
        let bad = whitney_violations(m);
        check(bad.is_empty(), || format!("{name}: {:?}", bad.iter().map(|v| &v.1).collect::<Vec<_>>()))?;
    }
    let mut flips = 0;
    for (name, m) in &movies {
        for (e, ev) in m.events.iter().enumerate() {
            let mut bad = m.clone();
            match &mut bad.events[e] {
                Event::R1Create { sign, .. } | Event::R1Annihilate { sign, .. } => *sign = -*sign,
                _ => continue,
            }
            check(!whitney_violations(&bad).is_empty(), || format!("{name}: flipped {ev:?} at {e} not caught"))?;
            flips += 1;
        }
    }
    Ok(format!("{} movies, {flips} single R1 flips all caught", movies.len()))
}

fn choice_independence() -> Outcome {
    let mut checked = 0;
    for g in ["S1(1,2)", "S2(1,2)", "S3(1,2)", "N1(1,2;3)"] {
        let m = movie(g);
        let base = double_linking(&m, opts(PushOffOptions::default(), DEFAULT_SEED)).map_err(|e| e.to_string())?;
        check(base.values().any(|v| !v.is_zero()), || format!("{g} has no nonzero d"))?;
        let mut variants = vec![
            opts(PushOffOptions { alternate_pair: true, reverse: false }, DEFAULT_SEED),
            opts(PushOffOptions { alternate_pair: false, reverse: true }, DEFAULT_SEED),
        ];
        variants.extend((0..PROJECTION_SEEDS).map(|s| opts(PushOffOptions::default(), 1000 + s)));
        for o in variants {
            let got = double_linking(&m, o).map_err(|e| e.to_string())?;
            check(got == base, || format!("{g} with {o:?}: {got:?} vs {base:?}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} recomputations over 4 fixtures"))
}

fn forgetful_map() -> Outcome {
    check(kappa(Z2::new(1)) == Z4::new(2) && kappa(Z2::new(0)) == Z4::new(0), || "kappa".into())?;
    let classes = samples(
        (2usize..=5).prop_flat_map(|n| {
            let p = canonical_pairs(n).count();
            let t = canonical_triples(n).count();
            let one = (proptest::collection::vec(0i64..2, p), proptest::collection::vec(-20i64..=20, t));
            (proptest::strategy::Just(n), one.clone(), one)
        }),
        RANDOM_CLASSES,
        10,
    );
    let build = |n: usize, (d, t): &(Vec<i64>, Vec<i64>)| {
        let mut o = OrientedClass::zero(n).unwrap();
        for ((i, j), v) in canonical_pairs(n).zip(d) {
            o.set_d(i, j, Z2::new(*v)).unwrap();
        }
        for ((i, j, k), v) in canonical_triples(n).zip(t) {
            o.set_t(i, j, k, *v).unwrap();
        }
        o
    };
    for (n, x, y) in &classes {
        let (a, b) = (build(*n, x), build(*n, y));
        let sum = forgetful(&a.add(&b).unwrap());
        check(sum == forgetful(&a).add(&forgetful(&b)).unwrap(), || format!("not additive on {a:?} + {b:?}"))?;
        let image = forgetful(&a);
        check(image.e_values().iter().all(|&e| e == 0), || format!("{image}: e not zero"))?;
        check(image.d_entries().all(|(_, v)| v.value() % 2 == 0), || format!("{image}: odd d"))?;
        for ((i, j), v) in a.d_entries() {
            check(image.d(i, j).unwrap() == kappa(v), || format!("d{i}{j} is not kappa"))?;
        }
        for ((i, j, k), v) in a.t_entries() {
            check(image.t(i, j, k).unwrap() == nu(v), || format!("t{i}{j}{k} is not nu"))?;
        }
    }
    Ok(format!("{} random pairs of oriented classes", classes.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("group structure", group_structure),
        ("strand generator table", generator_table),
        ("necklace relations", necklace_relations),
        ("derived identities", derived_identities),
        ("two-path oracle", two_path_oracle),
        ("movie fixtures", movie_fixtures),
        ("cross-module equality", cross_module_equality),
        ("validation laws", validation_laws),
        ("choice independence", choice_independence),
        ("forgetful map", forgetful_map),
    ];
    let mut failed = 0;
    for (number, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", number + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", number + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
