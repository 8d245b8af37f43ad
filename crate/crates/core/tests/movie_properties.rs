use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ulbordism::movie::*;

fn movie(g: &str) -> Movie {
    generator_movie(g.parse().unwrap()).unwrap()
}

fn opts(seed: u64) -> LinkingOptions {
    LinkingOptions { push_off: PushOffOptions::default(), seed }
}

/// Shifts each still rigidly by at most `amount`, then moves every vertex a
/// further `1e-9` at random.
fn jitter(m: &Movie, seed: u64, amount: f64) -> Movie {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = m.clone();
    for s in &mut out.stills {
        let shift = [rng.gen_range(-1.0..1.0) * amount, rng.gen_range(-1.0..1.0) * amount];
        for c in &mut s.circles {
            for p in &mut c.points {
                p[0] += shift[0] + rng.gen_range(-1e-9..1e-9);
                p[1] += shift[1] + rng.gen_range(-1e-9..1e-9);
            }
        }
        for x in &mut s.crossings {
            x.position[0] += shift[0];
            x.position[1] += shift[1];
        }
    }
    out
}

/// Inserts a copy of still `k` halfway through its slab, joined by an isotopy.
fn refine(m: &Movie, k: usize) -> Movie {
    let mut out = m.clone();
    let (t0, t1) = m.slab(k);
    let mut copy = m.stills[k].clone();
    copy.time = 0.5 * (t0 + t1);
    out.stills.insert(k + 1, copy);
    out.events.insert(k, Event::Isotopy);
    out
}

fn flip_r1(m: &Movie, e: usize) -> Movie {
    let mut out = m.clone();
    match &mut out.events[e] {
        Event::R1Create { sign, .. } | Event::R1Annihilate { sign, .. } => *sign = -*sign,
        _ => panic!("event {e} is not R1"),
    }
    out
}

fn r1_events(m: &Movie) -> Vec<usize> {
    m.events
        .iter()
        .enumerate()
        .filter(|(_, e)| matches!(e, Event::R1Create { .. } | Event::R1Annihilate { .. }))
        .map(|(i, _)| i)
        .collect()
}

const SMALL: [&str; 6] = ["sphere(1)", "kink-sphere(1)", "P+(1)", "P-(1)", "S1(1,2)", "N0(1,2;3)"];

#[test]
fn whitney_holds_on_bundled_movies() {
    for g in bundled_generators() {
        let m = generator_movie(g).unwrap();
        assert!(whitney_violations(&m).is_empty(), "{g}");
    }
}

#[test]
fn every_single_r1_flip_is_caught() {
    for g in bundled_generators() {
        let m = generator_movie(g).unwrap();
        for e in r1_events(&m) {
            let bad = flip_r1(&m, e);
            assert!(!whitney_violations(&bad).is_empty(), "{g} event {e}");
            assert!(branch_sign_mismatches(&bad).contains(&e), "{g} event {e}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn perturbed_movies_stay_valid_and_satisfy_whitney(which in 0..SMALL.len(), seed in any::<u64>(), mirrored in any::<bool>()) {
        let mut m = jitter(&movie(SMALL[which]), seed, 1e-3);
        if mirrored {
            m = mirror_movie(&m);
        }
        let report = validate_movie(&m);
        prop_assert!(report.is_valid(), "{}", report);
        prop_assert!(whitney_violations(&m).is_empty());
    }

    #[test]
    fn refinement_leaves_invariants_unchanged(which in 0..SMALL.len(), picks in prop::collection::vec(any::<prop::sample::Index>(), 1..4)) {
        let m = movie(SMALL[which]);
        let before = movie_invariants(&m, opts(DEFAULT_SEED)).unwrap();
        let mut refined = m.clone();
        for pick in picks {
            refined = refine(&refined, pick.index(refined.events.len()));
        }
        prop_assert!(validate_movie(&refined).is_valid(), "{}", validate_movie(&refined));
        prop_assert_eq!(movie_invariants(&refined, opts(DEFAULT_SEED)).unwrap(), before);
    }

    #[test]
    fn projection_seed_does_not_matter(seed in any::<u64>()) {
        let m = movie("S1(1,2)");
        prop_assert_eq!(double_linking(&m, opts(seed)).unwrap(), double_linking(&m, opts(DEFAULT_SEED)).unwrap());
    }
}
