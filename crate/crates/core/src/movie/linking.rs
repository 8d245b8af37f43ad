//! Linking numbers of closed polylines by signed crossings in a random
//! generic projection.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::error::MovieError;
use super::geometry::{cross3, dot3, norm3, segment_distance3, Vec3};

/// Degeneracy tolerance in coordinates normalized by the input's extent.
pub const PROJECTION_TOLERANCE: f64 = 1e-9;
const MAX_DRAWS: usize = 64;

struct Seg {
    p0: Vec3,
    p1: Vec3,
}

fn segments(loops: &[Vec<Vec3>]) -> Vec<Seg> {
    loops
        .iter()
        .filter(|l| l.len() >= 2)
        .flat_map(|l| (0..l.len()).map(move |i| Seg { p0: l[i], p1: l[(i + 1) % l.len()] }))
        .collect()
}

fn extent(segs: &[Seg]) -> f64 {
    let mut lo = [f64::INFINITY; 3];
    let mut hi = [f64::NEG_INFINITY; 3];
    for s in segs {
        for p in [s.p0, s.p1] {
            for k in 0..3 {
                lo[k] = lo[k].min(p[k]);
                hi[k] = hi[k].max(p[k]);
            }
        }
    }
    norm3([hi[0] - lo[0], hi[1] - lo[1], hi[2] - lo[2]]).max(f64::MIN_POSITIVE)
}

/// Minimum distance between the two families, using an x-sweep.
pub fn min_distance(a: &[Vec<Vec3>], b: &[Vec<Vec3>]) -> f64 {
    let sa = segments(a);
    let sb = segments(b);
    let bound = |s: &Seg| (s.p0[0].min(s.p1[0]), s.p0[0].max(s.p1[0]));
    let mut order: Vec<usize> = (0..sb.len()).collect();
    order.sort_by(|&i, &j| bound(&sb[i]).0.total_cmp(&bound(&sb[j]).0));
    let mut best = f64::INFINITY;
    for s in &sa {
        let (lo, hi) = bound(s);
        for &j in &order {
            let (blo, bhi) = bound(&sb[j]);
            if blo > hi + best {
                break;
            }
            if bhi < lo - best {
                continue;
            }
            best = best.min(segment_distance3(s.p0, s.p1, sb[j].p0, sb[j].p1));
        }
    }
    best
}

fn random_direction(rng: &mut ChaCha8Rng) -> Vec3 {
    loop {
        let v = [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)];
        let n = norm3(v);
        if n > 0.1 && n <= 1.0 {
            return [v[0] / n, v[1] / n, v[2] / n];
        }
    }
}

/// Right-handed frame (e1, e2, d).
fn frame(d: Vec3) -> (Vec3, Vec3) {
    let helper = if d[0].abs() < 0.9 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
    let e1 = cross3(helper, d);
    let n = norm3(e1);
    let e1 = [e1[0] / n, e1[1] / n, e1[2] / n];
    let e2 = cross3(d, e1);
    (e1, e2)
}

struct Proj {
    a: [f64; 2],
    b: [f64; 2],
    za: f64,
    zb: f64,
    lo: f64,
    hi: f64,
}

fn project(segs: &[Seg], e1: Vec3, e2: Vec3, d: Vec3, scale: f64) -> Vec<Proj> {
    segs.iter()
        .map(|s| {
            let a = [dot3(s.p0, e1) / scale, dot3(s.p0, e2) / scale];
            let b = [dot3(s.p1, e1) / scale, dot3(s.p1, e2) / scale];
            Proj { a, b, za: dot3(s.p0, d), zb: dot3(s.p1, d), lo: a[0].min(b[0]), hi: a[0].max(b[0]) }
        })
        .collect()
}

fn orient(p: [f64; 2], q: [f64; 2], r: [f64; 2]) -> f64 {
    (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
}

fn seg_len(s: &Proj) -> f64 {
    (s.b[0] - s.a[0]).hypot(s.b[1] - s.a[1])
}

/// Signed count of crossings of `a` over `b`, or `None` when the projection
/// comes within tolerance of a degeneracy.
fn count(pa: &[Proj], pb: &[Proj]) -> Option<i64> {
    let tol = PROJECTION_TOLERANCE;
    let mut order: Vec<usize> = (0..pb.len()).collect();
    order.sort_by(|&i, &j| pb[i].lo.total_cmp(&pb[j].lo));
    let mut total = 0;
    for s in pa {
        for &j in &order {
            let t = &pb[j];
            if t.lo > s.hi + tol {
                break;
            }
            if t.hi < s.lo - tol {
                continue;
            }
            // signed distances of each endpoint from the other segment's line
            let (ls, lt) = (seg_len(s), seg_len(t));
            if ls < tol || lt < tol {
                return None;
            }
            let o1 = orient(t.a, t.b, s.a) / lt;
            let o2 = orient(t.a, t.b, s.b) / lt;
            let o3 = orient(s.a, s.b, t.a) / ls;
            let o4 = orient(s.a, s.b, t.b) / ls;
            let straddle_s = o1 * o2 < 0.0;
            let straddle_t = o3 * o4 < 0.0;
            let near = [o1, o2, o3, o4].iter().any(|o| o.abs() < tol);
            if near {
                let (mx, my) = (s.a[1].min(s.b[1]), s.a[1].max(s.b[1]));
                let (nx, ny) = (t.a[1].min(t.b[1]), t.a[1].max(t.b[1]));
                if my + tol >= nx && ny + tol >= mx {
                    return None;
                }
            }
            if !(straddle_s && straddle_t) {
                continue;
            }
            let u = o1 / (o1 - o2);
            let v = o3 / (o3 - o4);
            let za = s.za + (s.zb - s.za) * u;
            let zb = t.za + (t.zb - t.za) * v;
            if (za - zb).abs() < tol {
                return None;
            }
            if za > zb {
                let da = [s.b[0] - s.a[0], s.b[1] - s.a[1]];
                let db = [t.b[0] - t.a[0], t.b[1] - t.a[1]];
                total += if da[0] * db[1] - da[1] * db[0] > 0.0 { 1 } else { -1 };
            }
        }
    }
    Some(total)
}

/// Linking number of two disjoint families of closed polylines, using a
/// projection direction drawn from `seed` (redrawn on degeneracy).
pub fn linking_number(a: &[Vec<Vec3>], b: &[Vec<Vec3>], seed: u64) -> Result<i64, MovieError> {
    let sa = segments(a);
    let sb = segments(b);
    if sa.is_empty() || sb.is_empty() {
        return Ok(0);
    }
    let scale = extent(&sa).max(extent(&sb));
    if min_distance(a, b) <= PROJECTION_TOLERANCE * scale {
        return Err(MovieError::Linking("the two cycles intersect".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_DRAWS {
        let d = random_direction(&mut rng);
        let (e1, e2) = frame(d);
        let pa = project(&sa, e1, e2, d, scale);
        let pb = project(&sb, e1, e2, d, scale);
        if let Some(n) = count(&pa, &pb) {
            return Ok(n);
        }
    }
    Err(MovieError::Linking("no generic projection found".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{PI, TAU};

    fn circle(center: Vec3, u: Vec3, v: Vec3, r: f64, n: usize) -> Vec<Vec3> {
        (0..n)
            .map(|k| {
                let s = TAU * k as f64 / n as f64;
                let (c, si) = (r * s.cos(), r * s.sin());
                [center[0] + c * u[0] + si * v[0], center[1] + c * u[1] + si * v[1], center[2] + c * u[2] + si * v[2]]
            })
            .collect()
    }

    /// Gauss linking integral evaluated exactly per segment pair through
    /// solid angles.
    fn gauss(a: &[Vec<Vec3>], b: &[Vec<Vec3>]) -> f64 {
        let unit = |v: Vec3| {
            let n = norm3(v);
            [v[0] / n, v[1] / n, v[2] / n]
        };
        let mut total = 0.0;
        for la in a {
            for i in 0..la.len() {
                let (p1, p2) = (la[i], la[(i + 1) % la.len()]);
                for lb in b {
                    for j in 0..lb.len() {
                        let (p3, p4) = (lb[j], lb[(j + 1) % lb.len()]);
                        let r13 = sub(p3, p1);
                        let r14 = sub(p4, p1);
                        let r23 = sub(p3, p2);
                        let r24 = sub(p4, p2);
                        let n1 = unit(cross3(r13, r14));
                        let n2 = unit(cross3(r14, r24));
                        let n3 = unit(cross3(r24, r23));
                        let n4 = unit(cross3(r23, r13));
                        let clamp = |x: f64| x.clamp(-1.0, 1.0).asin();
                        let omega = clamp(dot3(n1, n2)) + clamp(dot3(n2, n3)) + clamp(dot3(n3, n4)) + clamp(dot3(n4, n1));
                        let s = dot3(cross3(sub(p4, p3), sub(p2, p1)), r13);
                        total += omega * s.signum();
                    }
                }
            }
        }
        total / (4.0 * PI)
    }

    fn sub(a: Vec3, b: Vec3) -> Vec3 {
        [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
    }

    fn hopf() -> (Vec<Vec3>, Vec<Vec3>) {
        let a = circle([0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0], 1.0, 40);
        let b = circle([1.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0], 1.0, 40);
        (a, b)
    }

    #[test]
    fn split_loops_do_not_link() {
        let a = circle([0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0], 1.0, 24);
        let b = circle([5.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0], 1.0, 24);
        assert_eq!(linking_number(&[a], &[b], 1).unwrap(), 0);
    }

    #[test]
    fn hopf_pair_matches_gauss_integral() {
        let (a, b) = hopf();
        let g = gauss(std::slice::from_ref(&a), std::slice::from_ref(&b));
        assert!((g.abs() - 1.0).abs() < 1e-6, "{g}");
        for seed in 0..20 {
            let lk = linking_number(std::slice::from_ref(&a), std::slice::from_ref(&b), seed).unwrap();
            assert_eq!(lk as f64, g.round(), "seed {seed}");
            assert_eq!(linking_number(std::slice::from_ref(&b), std::slice::from_ref(&a), seed).unwrap(), lk);
        }
        let rev: Vec<Vec3> = b.iter().rev().copied().collect();
        assert_eq!(linking_number(&[a], &[rev], 3).unwrap(), -(g.round() as i64));
    }

    #[test]
    fn doubled_cycle_doubles() {
        let (a, b) = hopf();
        let twice: Vec<Vec3> = b.iter().chain(b.iter()).copied().collect();
        let once = linking_number(std::slice::from_ref(&a), &[b], 5).unwrap();
        assert_eq!(linking_number(&[a], &[twice], 5).unwrap(), 2 * once);
    }

    #[test]
    fn torus_knot_pair_against_oracle() {
        // (2,2q) torus link components wound on a standard torus
        for q in 1..4 {
            let comp = |phase: f64| -> Vec<Vec3> {
                (0..300)
                    .map(|k| {
                        let s = TAU * k as f64 / 300.0;
                        let (phi, theta) = (s, q as f64 * s + phase);
                        let r = 2.0 + 0.7 * theta.cos();
                        [r * phi.cos(), r * phi.sin(), 0.7 * theta.sin()]
                    })
                    .collect()
            };
            let (a, b) = (comp(0.0), comp(PI));
            let g = gauss(std::slice::from_ref(&a), std::slice::from_ref(&b));
            let lk = linking_number(&[a], &[b], 11).unwrap();
            assert_eq!(lk as f64, g.round(), "q = {q}");
            assert_eq!(lk.abs(), q);
        }
    }

    #[test]
    fn intersecting_inputs_rejected() {
        let a = circle([0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0], 1.0, 4);
        let b = circle([2.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0], 1.0, 4);
        assert!(linking_number(&[a], &[b], 0).is_err());
    }
}
