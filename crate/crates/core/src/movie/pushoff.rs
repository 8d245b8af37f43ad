//! Push-offs of closed double curves into a diagonal quadrant pair.
//!
//! At a crossing the two strands cut a small disk into four quadrants. A
//! quadrant is named by its side of the over strand and of the under strand
//! (`+1` left, `-1` right, relative to the polyline orientation). The
//! push-off follows one quadrant along the curve; going around once it comes
//! back either to the same quadrant (two parallel loops) or to the opposite
//! one (a single loop running around twice).

use super::error::MovieError;
use super::geometry::{self, cross, dist, dot, left_normal, lerp, point_segment_distance, segment_crossing, sub, Vec3};
use super::linking::min_distance;
use super::model::{CrossingId, Event, Movie, Point, Still};
use super::trace::{vertex_point, CurveVertex, DoubleCurve, Embedding};

pub type Quadrant = (i8, i8);

const MAX_HALVINGS: usize = 40;

/// Per-still push-off distance: one eighth of the smallest separation among
/// crossings and the polyline features around them.
#[derive(Debug, Clone)]
pub struct Features {
    eps: Vec<f64>,
}

impl Features {
    pub fn new(m: &Movie) -> Features {
        Features { eps: m.stills.iter().map(|s| feature_distance(s) / 8.0).collect() }
    }

    pub fn epsilon(&self, still: usize) -> f64 {
        self.eps[still]
    }
}

fn near_incident(s: &Still, x: &super::model::Crossing, circle: u32, seg: usize) -> bool {
    [x.over, x.under].iter().any(|arc| {
        if arc.circle != circle {
            return false;
        }
        let n = s.circle(circle).map_or(1, |c| c.segment_count());
        seg == arc.segment || seg == (arc.segment + 1) % n || (seg + 1) % n == arc.segment
    })
}

fn feature_distance(s: &Still) -> f64 {
    let mut best = geometry::scale(s);
    for (i, x) in s.crossings.iter().enumerate() {
        for y in &s.crossings[i + 1..] {
            best = best.min(dist(x.position, y.position));
        }
        for c in &s.circles {
            for seg in 0..c.segment_count() {
                if near_incident(s, x, c.id, seg) {
                    continue;
                }
                let (a, b) = c.segment(seg);
                best = best.min(point_segment_distance(x.position, a, b));
            }
        }
    }
    best
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PushOffOptions {
    /// Start in the quadrant pair (left, right) instead of (left, left).
    pub alternate_pair: bool,
    /// Traverse the curve backwards.
    pub reverse: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PushOff {
    /// The oriented curve `C` in 3-space.
    pub curve: Vec<Vec3>,
    /// `C'`: two loops, or one loop running twice around.
    pub loops: Vec<Vec<Vec3>>,
    pub twisted: bool,
    pub epsilon: f64,
}

enum Fail {
    Collision,
    Hard(MovieError),
}

fn tangents(s: &Still, x: CrossingId) -> Option<(Point, Point)> {
    let c = s.crossing(x)?;
    Some((s.tangent(c.over)?, s.tangent(c.under)?))
}

fn sgn(v: f64) -> i8 {
    if v >= 0.0 {
        1
    } else {
        -1
    }
}

/// Unit diagonal direction of quadrant `q` at a crossing.
fn quadrant_direction(s: &Still, x: CrossingId, q: Quadrant) -> Result<Point, Fail> {
    let (to, tu) = tangents(s, x).ok_or(Fail::Hard(MovieError::PushOff { crossing: x, reason: "zero-length segment".into() }))?;
    let (no, nu) = (left_normal(to), left_normal(tu));
    let w = [f64::from(q.0) * no[0] + f64::from(q.1) * nu[0], f64::from(q.0) * no[1] + f64::from(q.1) * nu[1]];
    // Unit length, so thin quadrants near a tangency keep their full reach.
    let len = w[0].hypot(w[1]);
    if len < 1e-12 {
        return Err(Fail::Hard(MovieError::PushOff { crossing: x, reason: "tangential crossing".into() }));
    }
    Ok([w[0] / len, w[1] / len])
}

/// Offset of a crossing into quadrant `q`, checked against the rest of the
/// still.
fn crossing_offset(s: &Still, x: CrossingId, q: Quadrant, eps: f64) -> Result<Point, Fail> {
    let c = s.crossing(x).ok_or(Fail::Hard(MovieError::Dangling { still: 0, crossing: x }))?;
    let w = quadrant_direction(s, x, q)?;
    let p = c.position;
    let reach = [p[0] + 2.0 * eps * w[0], p[1] + 2.0 * eps * w[1]];
    for circle in &s.circles {
        for seg in 0..circle.segment_count() {
            let arc = super::model::ArcRef { circle: circle.id, segment: seg };
            if arc == c.over || arc == c.under {
                continue;
            }
            let (a, b) = circle.segment(seg);
            if segment_crossing(p, reach, a, b).is_some() || point_segment_distance(reach, a, b) < eps * 1e-3 {
                return Err(Fail::Collision);
            }
        }
    }
    Ok([p[0] + eps * w[0], p[1] + eps * w[1]])
}

fn arc_mid(p: f64, q: f64, len: f64) -> f64 {
    let (lo, hi) = if p <= q { (p, q) } else { (q, p) };
    if hi - lo <= len / 2.0 {
        0.5 * (lo + hi)
    } else {
        0.5 * (lo + hi) + len / 2.0
    }
}

fn closest_on(s: &Still, circle: u32, p: Point) -> Option<Point> {
    let c = s.circle(circle)?;
    let mut best = (f64::INFINITY, p);
    for seg in 0..c.segment_count() {
        let at = c.point_at(c.param_of(seg, p));
        let d = dist(at, p);
        if d < best.0 {
            best = (d, at);
        }
    }
    Some(best.1)
}

/// Offset point at the turning point of a curve at an R2 event. The quadrant
/// facing the bigon points back in time toward it, the opposite quadrant
/// points toward the side where the strands have separated, and the other
/// two stay in the still plane.
fn apex_offset(m: &Movie, e: usize, q: Quadrant, eps: f64) -> Result<(Point, f64), MovieError> {
    let (t0, t1) = m.slab(e);
    let (ids, s_in, s_out, t_in, t_out) = match &m.events[e] {
        Event::R2Annihilate { crossings, .. } => (*crossings, e, m.after(e), t0, t1),
        Event::R2Create { crossings, .. } => (*crossings, m.after(e), e, t1, t0),
        _ => unreachable!("apex at a non-R2 event"),
    };
    let t_apex = 0.5 * (t0 + t1);
    let s = &m.stills[s_in];
    let missing = || MovieError::Consistency(format!("R2 event {e} refers to missing geometry"));
    let a = s.crossing(ids[0]).ok_or_else(missing)?;
    let b = s.crossing(ids[1]).ok_or_else(missing)?;
    let strand = |pick: fn(&super::model::Crossing) -> super::model::ArcRef| -> Option<(Point, Point)> {
        let c = s.circle(pick(a).circle)?;
        let pa = c.param_of(pick(a).segment, a.position);
        let pb = c.param_of(pick(b).segment, b.position);
        let mid = arc_mid(pa, pb, c.segment_count() as f64);
        Some((c.point_at(mid), c.tangent_at(mid)))
    };
    let (o_mid, t_o) = strand(|x| x.over).ok_or_else(missing)?;
    let (u_mid, t_u) = strand(|x| x.under).ok_or_else(missing)?;
    let sigma = (sgn(cross(t_o, sub(u_mid, o_mid))), sgn(cross(t_u, sub(o_mid, u_mid))));
    let p = lerp(a.position, b.position, 0.5);
    if q == sigma {
        let centre = lerp(o_mid, u_mid, 0.5);
        Ok((lerp(p, centre, 0.5), 0.5 * (t_apex + t_in)))
    } else if q == (-sigma.0, -sigma.1) {
        let out = &m.stills[s_out];
        let co = closest_on(out, a.over.circle, p).ok_or_else(missing)?;
        let cu = closest_on(out, a.under.circle, p).ok_or_else(missing)?;
        Ok((lerp(p, lerp(co, cu, 0.5), 0.5), 0.5 * (t_apex + t_out)))
    } else {
        let n = left_normal(t_o);
        let k = f64::from(q.0) * eps;
        Ok(([p[0] + k * n[0], p[1] + k * n[1]], t_apex))
    }
}

/// Offsets along the vertex cycle starting in quadrant `q`; returns the
/// points and the quadrant on arrival back at the first vertex.
fn trace_offsets(m: &Movie, verts: &[CurveVertex], q: Quadrant, eps: f64, emb: &Embedding) -> Result<(Vec<Vec3>, Quadrant), Fail> {
    let mut q = q;
    let mut prev: Option<(usize, CrossingId)> = None;
    let mut out = Vec::with_capacity(verts.len());
    for (i, v) in verts.iter().chain(verts.first()).enumerate() {
        match *v {
            CurveVertex::Crossing { still, crossing } => {
                let s = &m.stills[still];
                if let Some((ps, px)) = prev {
                    if px == crossing {
                        let (a0, b0) = tangents(&m.stills[ps], px).ok_or(Fail::Collision)?;
                        let (a1, b1) = tangents(s, crossing).ok_or(Fail::Collision)?;
                        q = (q.0 * sgn(dot(a0, a1)), q.1 * sgn(dot(b0, b1)));
                    }
                }
                prev = Some((still, crossing));
                if i == verts.len() {
                    break;
                }
                let p = crossing_offset(s, crossing, q, eps)?;
                out.push(emb.map(p, s.time));
            }
            CurveVertex::Apex { event } => {
                let (p, t) = apex_offset(m, event, q, eps).map_err(Fail::Hard)?;
                out.push(emb.map(p, t));
            }
            CurveVertex::Triple { .. } => {
                let (ps, px) = prev.ok_or(Fail::Collision)?;
                let w = quadrant_direction(&m.stills[ps], px, q)?;
                let (p, t) = vertex_point(m, *v);
                out.push(emb.map([p[0] + eps * w[0], p[1] + eps * w[1]], t));
            }
            CurveVertex::Branch { .. } => {
                return Err(Fail::Hard(MovieError::PushOff { crossing: 0, reason: "open double curve".into() }));
            }
        }
    }
    Ok((out, q))
}

fn first_crossing(c: &DoubleCurve) -> CrossingId {
    c.vertices
        .iter()
        .find_map(|v| match v {
            CurveVertex::Crossing { crossing, .. } => Some(*crossing),
            _ => None,
        })
        .unwrap_or(0)
}

/// Pushes a closed double curve off itself.
pub fn push_off(m: &Movie, curve: &DoubleCurve, emb: &Embedding, features: &Features, opts: PushOffOptions) -> Result<PushOff, MovieError> {
    let id = first_crossing(curve);
    let fail = |reason: &str| MovieError::PushOff { crossing: id, reason: reason.into() };
    if !curve.closed {
        return Err(fail("curve is not closed"));
    }
    let start = curve
        .vertices
        .iter()
        .position(|v| matches!(v, CurveVertex::Crossing { .. }))
        .ok_or_else(|| fail("curve has no crossings"))?;
    let mut verts: Vec<CurveVertex> = curve.vertices[start..].iter().chain(&curve.vertices[..start]).copied().collect();
    if opts.reverse {
        verts[1..].reverse();
    }
    let mut eps = verts
        .iter()
        .filter_map(|v| match v {
            CurveVertex::Crossing { still, .. } => Some(features.epsilon(*still)),
            _ => None,
        })
        .fold(f64::INFINITY, f64::min);
    let oriented = DoubleCurve { vertices: verts.clone(), ..curve.clone() };
    let c_points = oriented.points(m, emb);
    let q: Quadrant = if opts.alternate_pair { (1, -1) } else { (1, 1) };
    for _ in 0..MAX_HALVINGS {
        let attempt = trace_offsets(m, &verts, q, eps, emb).and_then(|(first, back)| {
            let (second, _) = trace_offsets(m, &verts, (-q.0, -q.1), eps, emb)?;
            if back == q {
                Ok((vec![first, second], false))
            } else if back == (-q.0, -q.1) {
                Ok((vec![first.into_iter().chain(second).collect()], true))
            } else {
                Err(Fail::Hard(fail("quadrant pair is not preserved around the curve")))
            }
        });
        match attempt {
            Ok((loops, twisted)) => {
                let gap = min_distance(std::slice::from_ref(&c_points), &loops);
                if gap > 1e-9 {
                    return Ok(PushOff { curve: c_points, loops, twisted, epsilon: eps });
                }
            }
            Err(Fail::Hard(e)) => return Err(e),
            Err(Fail::Collision) => {}
        }
        eps *= 0.5;
    }
    Err(fail("offset collides at every tried distance"))
}
