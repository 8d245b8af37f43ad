//! Planar and spatial segment arithmetic.

use super::model::{ArcRef, Point, Still};

pub type Vec3 = [f64; 3];

pub fn sub(a: Point, b: Point) -> Point {
    [a[0] - b[0], a[1] - b[1]]
}

pub fn dot(a: Point, b: Point) -> f64 {
    a[0] * b[0] + a[1] * b[1]
}

pub fn cross(a: Point, b: Point) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

pub fn dist(a: Point, b: Point) -> f64 {
    (a[0] - b[0]).hypot(a[1] - b[1])
}

pub fn lerp(a: Point, b: Point, s: f64) -> Point {
    [a[0] + (b[0] - a[0]) * s, a[1] + (b[1] - a[1]) * s]
}

/// Left normal of a unit tangent.
pub fn left_normal(t: Point) -> Point {
    [-t[1], t[0]]
}

/// Proper crossing of segments `a0a1` and `b0b1`: parameters along each and
/// the point. Touching or collinear configurations return `None`.
pub fn segment_crossing(a0: Point, a1: Point, b0: Point, b1: Point) -> Option<(f64, f64, Point)> {
    let da = sub(a1, a0);
    let db = sub(b1, b0);
    let denom = cross(da, db);
    if denom == 0.0 {
        return None;
    }
    let w = sub(b0, a0);
    let s = cross(w, db) / denom;
    let t = cross(w, da) / denom;
    if s > 0.0 && s < 1.0 && t > 0.0 && t < 1.0 {
        Some((s, t, lerp(a0, a1, s)))
    } else {
        None
    }
}

pub fn point_segment_distance(p: Point, a: Point, b: Point) -> f64 {
    let d = sub(b, a);
    let len2 = dot(d, d);
    let s = if len2 == 0.0 { 0.0 } else { (dot(sub(p, a), d) / len2).clamp(0.0, 1.0) };
    dist(p, lerp(a, b, s))
}

/// Diagonal of the bounding box of a still, at least 1.
pub fn scale(still: &Still) -> f64 {
    let mut lo = [f64::INFINITY; 2];
    let mut hi = [f64::NEG_INFINITY; 2];
    for p in still.circles.iter().flat_map(|c| &c.points) {
        for k in 0..2 {
            lo[k] = lo[k].min(p[k]);
            hi[k] = hi[k].max(p[k]);
        }
    }
    if lo[0] > hi[0] {
        return 1.0;
    }
    dist(lo, hi).max(1.0)
}

/// A transverse intersection between two segments of a still.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Intersection {
    pub a: ArcRef,
    pub b: ArcRef,
    /// Parameters in [0,1] along the two segments.
    pub sa: f64,
    pub sb: f64,
    pub point: Point,
}

struct Seg {
    arc: ArcRef,
    len: usize,
    p0: Point,
    p1: Point,
    lo: f64,
    hi: f64,
}

fn adjacent(a: &Seg, b: &Seg) -> bool {
    if a.arc.circle != b.arc.circle {
        return false;
    }
    let (i, j, n) = (a.arc.segment, b.arc.segment, a.len);
    i == j || (i + 1) % n == j || (j + 1) % n == i
}

/// Every transverse intersection between non-adjacent segments, found by a
/// sweep along x.
pub fn intersections(still: &Still) -> Vec<Intersection> {
    let mut segs: Vec<Seg> = Vec::new();
    for c in &still.circles {
        for s in 0..c.segment_count() {
            let (p0, p1) = c.segment(s);
            segs.push(Seg {
                arc: ArcRef { circle: c.id, segment: s },
                len: c.segment_count(),
                p0,
                p1,
                lo: p0[0].min(p1[0]),
                hi: p0[0].max(p1[0]),
            });
        }
    }
    segs.sort_by(|a, b| a.lo.total_cmp(&b.lo));
    let mut out = Vec::new();
    for i in 0..segs.len() {
        for j in i + 1..segs.len() {
            if segs[j].lo > segs[i].hi {
                break;
            }
            let (a, b) = (&segs[i], &segs[j]);
            if adjacent(a, b) {
                continue;
            }
            if a.p0[1].max(a.p1[1]) < b.p0[1].min(b.p1[1]) || b.p0[1].max(b.p1[1]) < a.p0[1].min(a.p1[1]) {
                continue;
            }
            if let Some((sa, sb, point)) = segment_crossing(a.p0, a.p1, b.p0, b.p1) {
                out.push(Intersection { a: a.arc, b: b.arc, sa, sb, point });
            }
        }
    }
    out
}

pub fn sub3(a: Vec3, b: Vec3) -> Vec3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub fn dot3(a: Vec3, b: Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn cross3(a: Vec3, b: Vec3) -> Vec3 {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

pub fn norm3(a: Vec3) -> f64 {
    dot3(a, a).sqrt()
}

/// Minimum distance between segments `p0p1` and `q0q1` in space.
pub fn segment_distance3(p0: Vec3, p1: Vec3, q0: Vec3, q1: Vec3) -> f64 {
    let d1 = sub3(p1, p0);
    let d2 = sub3(q1, q0);
    let r = sub3(p0, q0);
    let a = dot3(d1, d1);
    let e = dot3(d2, d2);
    let f = dot3(d2, r);
    let (s, t);
    if a <= f64::EPSILON && e <= f64::EPSILON {
        return norm3(r);
    }
    if a <= f64::EPSILON {
        s = 0.0;
        t = (f / e).clamp(0.0, 1.0);
    } else {
        let c = dot3(d1, r);
        if e <= f64::EPSILON {
            t = 0.0;
            s = (-c / a).clamp(0.0, 1.0);
        } else {
            let b = dot3(d1, d2);
            let denom = a * e - b * b;
            let mut s0 = if denom > 0.0 { ((b * f - c * e) / denom).clamp(0.0, 1.0) } else { 0.0 };
            let mut t0 = (b * s0 + f) / e;
            if t0 < 0.0 {
                t0 = 0.0;
                s0 = (-c / a).clamp(0.0, 1.0);
            } else if t0 > 1.0 {
                t0 = 1.0;
                s0 = ((b - c) / a).clamp(0.0, 1.0);
            }
            s = s0;
            t = t0;
        }
    }
    let cp = [p0[0] + d1[0] * s, p0[1] + d1[1] * s, p0[2] + d1[2] * s];
    let cq = [q0[0] + d2[0] * t, q0[1] + d2[1] * t, q0[2] + d2[2] * t];
    norm3(sub3(cp, cq))
}

/// Minimum distance between two closed polylines in space.
pub fn loop_distance3(a: &[Vec3], b: &[Vec3]) -> f64 {
    let mut best = f64::INFINITY;
    for i in 0..a.len() {
        let (p0, p1) = (a[i], a[(i + 1) % a.len()]);
        for j in 0..b.len() {
            best = best.min(segment_distance3(p0, p1, b[j], b[(j + 1) % b.len()]));
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::movie::model::Circle;

    #[test]
    fn crossing_of_diagonals() {
        let (s, t, p) = segment_crossing([0.0, 0.0], [2.0, 2.0], [0.0, 2.0], [2.0, 0.0]).unwrap();
        assert_eq!((s, t), (0.5, 0.5));
        assert_eq!(p, [1.0, 1.0]);
        assert!(segment_crossing([0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [1.0, 1.0]).is_none());
        assert!(segment_crossing([0.0, 0.0], [1.0, 0.0], [1.0, -1.0], [1.0, 1.0]).is_none());
    }

    #[test]
    fn figure_eight_has_one_self_crossing() {
        let points = (0..64)
            .map(|k| {
                let s = std::f64::consts::TAU * (k as f64 + 0.5) / 64.0;
                [s.sin(), 0.5 * (2.0 * s).sin()]
            })
            .collect();
        let still = Still { time: 0.0, circles: vec![Circle { id: 1, label: 1, points }], crossings: vec![] };
        let xs = intersections(&still);
        assert_eq!(xs.len(), 1);
        assert!(dist(xs[0].point, [0.0, 0.0]) < 1e-9);
    }

    #[test]
    fn spatial_segment_distance() {
        let d = segment_distance3([0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.5, -1.0, 1.0], [0.5, 1.0, 1.0]);
        assert!((d - 1.0).abs() < 1e-12);
        let d = segment_distance3([0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [2.0, 0.0, 0.0], [3.0, 0.0, 0.0]);
        assert!((d - 1.0).abs() < 1e-12);
    }
}
