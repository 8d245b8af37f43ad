//! Double curves and triple points of the surface diagram swept by a movie.

use std::collections::{BTreeMap, BTreeSet};

use super::error::MovieError;
use super::geometry::{lerp, Vec3};
use super::model::{CrossingId, Event, Movie, Point};

/// Placement of diagram points in 3-space. Linear movies use `(u, v, t)`.
/// Periodic movies sweep the diagram plane around an axis below it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Embedding {
    Linear,
    Spun { axis: f64, period: f64 },
}

impl Embedding {
    pub fn of(m: &Movie) -> Embedding {
        let Some(period) = m.period else { return Embedding::Linear };
        let vs = m.stills.iter().flat_map(|s| s.circles.iter().flat_map(|c| c.points.iter().map(|p| p[1])));
        let (lo, hi) = vs.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
        let axis = if lo > hi { -1.0 } else { lo - (hi - lo).max(1.0) };
        Embedding::Spun { axis, period }
    }

    pub fn map(&self, p: Point, t: f64) -> Vec3 {
        match *self {
            Embedding::Linear => [p[0], p[1], t],
            Embedding::Spun { axis, period } => {
                let r = p[1] - axis;
                let phi = std::f64::consts::TAU * t / period;
                [p[0], r * phi.cos(), r * phi.sin()]
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CurveVertex {
    /// A crossing as it appears in one still.
    Crossing { still: usize, crossing: CrossingId },
    /// The turning point of a curve at an R2 event.
    Apex { event: usize },
    /// A branch point at an R1 event.
    Branch { event: usize },
    /// Passage of a crossing through the triple point of an R3 event.
    Triple { event: usize, crossing: CrossingId },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleCurve {
    pub over_label: usize,
    pub under_label: usize,
    /// In traversal order; cyclic when `closed`.
    pub vertices: Vec<CurveVertex>,
    pub closed: bool,
}

impl DoubleCurve {
    pub fn curve_type(&self) -> (usize, usize) {
        (self.over_label, self.under_label)
    }

    pub fn branch_events(&self) -> Vec<usize> {
        self.vertices
            .iter()
            .filter_map(|v| match v {
                CurveVertex::Branch { event } => Some(*event),
                _ => None,
            })
            .collect()
    }

    /// Maximal runs of one crossing identifier with their time spans.
    pub fn pieces(&self, m: &Movie) -> Vec<(CrossingId, f64, f64)> {
        let mut out: Vec<(CrossingId, f64, f64)> = Vec::new();
        for v in &self.vertices {
            if let CurveVertex::Crossing { still, crossing } = *v {
                let t = m.stills[still].time;
                match out.last_mut() {
                    Some(last) if last.0 == crossing => {
                        last.1 = last.1.min(t);
                        last.2 = last.2.max(t);
                    }
                    _ => out.push((crossing, t, t)),
                }
            }
        }
        out
    }

    /// Curve geometry in the diagram plane with times.
    pub fn planar_points(&self, m: &Movie) -> Vec<(Point, f64)> {
        self.vertices.iter().map(|v| vertex_point(m, *v)).collect()
    }

    /// Curve geometry in 3-space.
    pub fn points(&self, m: &Movie, emb: &Embedding) -> Vec<Vec3> {
        self.planar_points(m).into_iter().map(|(p, t)| emb.map(p, t)).collect()
    }
}

/// Middle time of the slab holding event `e`.
pub fn event_time(m: &Movie, e: usize) -> f64 {
    let (t0, t1) = m.slab(e);
    0.5 * (t0 + t1)
}

/// Position and time of a curve vertex.
pub fn vertex_point(m: &Movie, v: CurveVertex) -> (Point, f64) {
    match v {
        CurveVertex::Crossing { still, crossing } => {
            let s = &m.stills[still];
            (s.crossing(crossing).expect("traced crossing").position, s.time)
        }
        CurveVertex::Apex { event } => {
            let (ids, still) = match &m.events[event] {
                Event::R2Create { crossings, .. } => (*crossings, m.after(event)),
                Event::R2Annihilate { crossings, .. } => (*crossings, event),
                _ => unreachable!("apex at a non-R2 event"),
            };
            let s = &m.stills[still];
            let a = s.crossing(ids[0]).expect("apex crossing").position;
            let b = s.crossing(ids[1]).expect("apex crossing").position;
            (lerp(a, b, 0.5), event_time(m, event))
        }
        CurveVertex::Branch { event } => {
            let (id, still) = match &m.events[event] {
                Event::R1Create { crossing, .. } => (*crossing, m.after(event)),
                Event::R1Annihilate { crossing, .. } => (*crossing, event),
                _ => unreachable!("branch at a non-R1 event"),
            };
            (m.stills[still].crossing(id).expect("kink crossing").position, event_time(m, event))
        }
        CurveVertex::Triple { event, .. } => (triple_position(m, event), event_time(m, event)),
    }
}

/// Centre of the crossing triangles on both sides of an R3 event. The move
/// reflects the triangle through this point, so every branch passes it.
fn triple_position(m: &Movie, e: usize) -> Point {
    let Event::R3 { top_middle, top_bottom, middle_bottom } = m.events[e] else {
        unreachable!("triple point at a non-R3 event")
    };
    let mut sum = [0.0, 0.0];
    let mut count = 0.0;
    for s in [&m.stills[e], &m.stills[m.after(e)]] {
        for x in [top_middle, top_bottom, middle_bottom] {
            if let Some(c) = s.crossing(x) {
                sum = [sum[0] + c.position[0], sum[1] + c.position[1]];
                count += 1.0;
            }
        }
    }
    [sum[0] / count, sum[1] / count]
}

/// The R3 event crossed between two consecutive instances of a crossing.
fn triple_between(m: &Movie, a: CurveVertex, b: CurveVertex) -> Option<CurveVertex> {
    let (CurveVertex::Crossing { still: k0, crossing: x0 }, CurveVertex::Crossing { still: k1, crossing: x1 }) = (a, b) else {
        return None;
    };
    if x0 != x1 {
        return None;
    }
    let e = if m.after(k0) == k1 && k0 < m.events.len() {
        k0
    } else if m.after(k1) == k0 && k1 < m.events.len() {
        k1
    } else {
        return None;
    };
    match m.events[e] {
        Event::R3 { .. } if m.events[e].crossings().contains(&x0) => Some(CurveVertex::Triple { event: e, crossing: x0 }),
        _ => None,
    }
}

fn with_triples(m: &Movie, vertices: Vec<CurveVertex>, closed: bool) -> Vec<CurveVertex> {
    let n = vertices.len();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        out.push(vertices[i]);
        if i + 1 < n || closed {
            if let Some(t) = triple_between(m, vertices[i], vertices[(i + 1) % n]) {
                out.push(t);
            }
        }
    }
    out
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Dir {
    Fwd,
    Bwd,
}

/// Where a walk arrives, and the direction it keeps on crossing vertices.
fn step(m: &Movie, still: usize, x: CrossingId, dir: Dir) -> Result<(CurveVertex, Dir), MovieError> {
    let dangling = Err(MovieError::Dangling { still, crossing: x });
    match dir {
        Dir::Fwd => {
            if still >= m.events.len() {
                return dangling;
            }
            let e = still;
            match &m.events[e] {
                Event::R1Annihilate { crossing, .. } if *crossing == x => Ok((CurveVertex::Branch { event: e }, dir)),
                Event::R2Annihilate { crossings, .. } if crossings.contains(&x) => Ok((CurveVertex::Apex { event: e }, dir)),
                _ => {
                    let k = m.after(e);
                    if m.stills[k].crossing(x).is_some() {
                        Ok((CurveVertex::Crossing { still: k, crossing: x }, dir))
                    } else {
                        dangling
                    }
                }
            }
        }
        Dir::Bwd => {
            let e = if still > 0 {
                still - 1
            } else if m.is_periodic() {
                m.events.len() - 1
            } else {
                return dangling;
            };
            match &m.events[e] {
                Event::R1Create { crossing, .. } if *crossing == x => Ok((CurveVertex::Branch { event: e }, dir)),
                Event::R2Create { crossings, .. } if crossings.contains(&x) => Ok((CurveVertex::Apex { event: e }, dir)),
                _ => {
                    if m.stills[e].crossing(x).is_some() {
                        Ok((CurveVertex::Crossing { still: e, crossing: x }, dir))
                    } else {
                        dangling
                    }
                }
            }
        }
    }
}

/// The crossing on the other side of an apex.
fn through_apex(m: &Movie, e: usize, from: CrossingId) -> (CurveVertex, Dir) {
    match &m.events[e] {
        Event::R2Annihilate { crossings, .. } => {
            let other = if crossings[0] == from { crossings[1] } else { crossings[0] };
            (CurveVertex::Crossing { still: e, crossing: other }, Dir::Bwd)
        }
        Event::R2Create { crossings, .. } => {
            let other = if crossings[0] == from { crossings[1] } else { crossings[0] };
            (CurveVertex::Crossing { still: m.after(e), crossing: other }, Dir::Fwd)
        }
        _ => unreachable!("apex at a non-R2 event"),
    }
}

fn labels_at(m: &Movie, still: usize, x: CrossingId) -> Option<(usize, usize)> {
    let s = &m.stills[still];
    let c = s.crossing(x)?;
    Some((s.label_of(c.over.circle)?, s.label_of(c.under.circle)?))
}

fn walk(
    m: &Movie,
    start: CurveVertex,
    first: (CurveVertex, Dir),
    visited: &mut BTreeSet<CurveVertex>,
) -> Result<DoubleCurve, MovieError> {
    let mut vertices = vec![start];
    visited.insert(start);
    let (mut cur, mut dir) = first;
    let mut last_crossing = match start {
        CurveVertex::Crossing { crossing, .. } => Some(crossing),
        _ => None,
    };
    loop {
        if cur == start {
            break;
        }
        if !visited.insert(cur) {
            return Err(MovieError::Consistency(format!("double curve revisits {cur:?}")));
        }
        vertices.push(cur);
        match cur {
            CurveVertex::Branch { .. } => break,
            CurveVertex::Crossing { still, crossing } => {
                last_crossing = Some(crossing);
                (cur, dir) = step(m, still, crossing, dir)?;
            }
            CurveVertex::Apex { event } => {
                let from = last_crossing.expect("apex reached from a crossing");
                (cur, dir) = through_apex(m, event, from);
            }
            CurveVertex::Triple { .. } => unreachable!("triple vertices are added after the walk"),
        }
    }
    let closed = cur == start && !matches!(start, CurveVertex::Branch { .. });
    let mut kind = None;
    for v in &vertices {
        if let CurveVertex::Crossing { still, crossing } = *v {
            let l = labels_at(m, still, crossing).ok_or(MovieError::Dangling { still, crossing })?;
            match kind {
                None => kind = Some(l),
                Some(k) if k != l => return Err(MovieError::TypeChange { crossing }),
                _ => {}
            }
        }
    }
    let (over_label, under_label) = kind.ok_or_else(|| MovieError::Consistency("double curve without crossings".into()))?;
    let vertices = with_triples(m, vertices, closed);
    Ok(DoubleCurve { over_label, under_label, vertices, closed })
}

/// Partitions every crossing lifetime into double curves.
pub fn trace_double_curves(m: &Movie) -> Result<Vec<DoubleCurve>, MovieError> {
    let mut visited = BTreeSet::new();
    let mut curves = Vec::new();
    for (e, ev) in m.events.iter().enumerate() {
        let start = CurveVertex::Branch { event: e };
        let first = match ev {
            Event::R1Create { crossing, .. } => (CurveVertex::Crossing { still: m.after(e), crossing: *crossing }, Dir::Fwd),
            Event::R1Annihilate { crossing, .. } => (CurveVertex::Crossing { still: e, crossing: *crossing }, Dir::Bwd),
            _ => continue,
        };
        if visited.contains(&start) {
            continue;
        }
        curves.push(walk(m, start, first, &mut visited)?);
    }
    for (k, s) in m.stills.iter().enumerate() {
        for x in &s.crossings {
            let start = CurveVertex::Crossing { still: k, crossing: x.id };
            if visited.contains(&start) {
                continue;
            }
            let first = step(m, k, x.id, Dir::Fwd)?;
            let curve = walk(m, start, first, &mut visited)?;
            if !curve.closed {
                return Err(MovieError::Consistency(format!("open double curve through crossing {} has no branch start", x.id)));
            }
            curves.push(curve);
        }
    }
    Ok(curves)
}

#[derive(Debug, Clone, PartialEq)]
pub struct TriplePoint {
    pub event: usize,
    pub time: f64,
    pub position: Point,
    /// (top, middle, bottom) labels.
    pub labels: (usize, usize, usize),
    /// (top-middle, top-bottom, middle-bottom) crossing ids.
    pub crossings: [CrossingId; 3],
}

pub fn triple_points(m: &Movie) -> Vec<TriplePoint> {
    let mut out = Vec::new();
    for (e, ev) in m.events.iter().enumerate() {
        let Event::R3 { top_middle, top_bottom, middle_bottom } = *ev else { continue };
        let s = &m.stills[e];
        let (Some(tm), Some(tb), Some(_)) = (s.crossing(top_middle), s.crossing(top_bottom), s.crossing(middle_bottom)) else {
            continue;
        };
        let label = |c| s.label_of(c).unwrap_or(0);
        out.push(TriplePoint {
            event: e,
            time: event_time(m, e),
            position: triple_position(m, e),
            labels: (label(tm.over.circle), label(tm.under.circle), label(tb.under.circle)),
            crossings: [top_middle, top_bottom, middle_bottom],
        });
    }
    out
}

/// Raw triple point counts by (top, middle, bottom) type.
pub fn triple_point_census(m: &Movie) -> BTreeMap<(usize, usize, usize), u64> {
    let mut out = BTreeMap::new();
    for tp in triple_points(m) {
        *out.entry(tp.labels).or_insert(0) += 1;
    }
    out
}
