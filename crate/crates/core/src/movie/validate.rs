//! Structural and geometric validation of movies.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::geometry::{self, dist, sub};
use super::model::{ArcRef, CircleId, Crossing, CrossingId, Event, Movie, Still};

/// Relative tolerance for matching listed crossings against geometry.
pub const POSITION_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Location {
    Movie,
    Still(usize),
    Event(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ViolationKind {
    Structure,
    OpenSurface,
    LabelInconsistency,
    IdentityMismatch,
    NonLocalEvent,
    GeometricMismatch,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub location: Location,
    pub kind: ViolationKind,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.location {
            Location::Movie => write!(f, "movie: {}", self.message),
            Location::Still(i) => write!(f, "still {i}: {}", self.message),
            Location::Event(i) => write!(f, "event {i}: {}", self.message),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, kind: ViolationKind) -> bool {
        self.violations.iter().any(|v| v.kind == kind)
    }

    fn push(&mut self, location: Location, kind: ViolationKind, message: impl Into<String>) {
        self.violations.push(Violation { location, kind, message: message.into() });
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "valid");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

pub fn validate_movie(m: &Movie) -> ValidationReport {
    let mut r = ValidationReport::default();
    if m.stills.is_empty() {
        r.push(Location::Movie, ViolationKind::Structure, "no stills");
        return r;
    }
    let expected = if m.is_periodic() { m.stills.len() } else { m.stills.len() - 1 };
    if m.events.len() != expected {
        r.push(Location::Movie, ViolationKind::Structure, format!("expected {expected} events, found {}", m.events.len()));
        return r;
    }
    for w in m.stills.windows(2).enumerate() {
        if !(w.1[0].time < w.1[1].time) {
            r.push(Location::Still(w.0 + 1), ViolationKind::Structure, "still times must increase");
        }
    }
    match m.period {
        Some(p) if !(p > m.stills.last().map_or(0.0, |s| s.time)) => {
            r.push(Location::Movie, ViolationKind::Structure, "period must exceed the last still time");
        }
        None => {
            if !m.stills[0].is_empty() {
                r.push(Location::Still(0), ViolationKind::OpenSurface, "open surface: first still is not empty");
            }
            if !m.stills[m.stills.len() - 1].is_empty() {
                r.push(
                    Location::Still(m.stills.len() - 1),
                    ViolationKind::OpenSurface,
                    "open surface: last still is not empty",
                );
            }
        }
        _ => {}
    }
    let mut structural_ok = true;
    for (i, s) in m.stills.iter().enumerate() {
        structural_ok &= check_still_structure(m.n, i, s, &mut r);
    }
    if !structural_ok {
        return r;
    }
    for (i, s) in m.stills.iter().enumerate() {
        check_still_geometry(i, s, &mut r);
    }
    for (e, ev) in m.events.iter().enumerate() {
        let before = &m.stills[e];
        let after = &m.stills[m.after(e)];
        check_event(e, ev, before, after, &mut r);
    }
    r
}

fn check_still_structure(n: usize, i: usize, s: &Still, r: &mut ValidationReport) -> bool {
    let loc = Location::Still(i);
    let before = r.violations.len();
    let mut ids = BTreeSet::new();
    for c in &s.circles {
        if !ids.insert(c.id) {
            r.push(loc, ViolationKind::Structure, format!("duplicate circle id {}", c.id));
        }
        if c.label == 0 || c.label > n {
            r.push(loc, ViolationKind::LabelInconsistency, format!("circle {} has label {} outside 1..={n}", c.id, c.label));
        }
        if c.points.len() < 3 {
            r.push(loc, ViolationKind::Structure, format!("circle {} has fewer than 3 vertices", c.id));
        }
    }
    let mut xids = BTreeSet::new();
    for x in &s.crossings {
        if !xids.insert(x.id) {
            r.push(loc, ViolationKind::Structure, format!("duplicate crossing id {}", x.id));
        }
        for arc in [x.over, x.under] {
            match s.circle(arc.circle) {
                None => r.push(loc, ViolationKind::Structure, format!("crossing {} refers to missing circle {}", x.id, arc.circle)),
                Some(c) if arc.segment >= c.segment_count() => r.push(
                    loc,
                    ViolationKind::Structure,
                    format!("crossing {} refers to segment {} of circle {}", x.id, arc.segment, arc.circle),
                ),
                _ => {}
            }
        }
    }
    r.violations.len() == before
}

fn pair_key(a: ArcRef, b: ArcRef) -> (ArcRef, ArcRef) {
    if (a.circle, a.segment) <= (b.circle, b.segment) {
        (a, b)
    } else {
        (b, a)
    }
}

fn check_still_geometry(i: usize, s: &Still, r: &mut ValidationReport) {
    let loc = Location::Still(i);
    let tol = POSITION_TOLERANCE * geometry::scale(s);
    let mut listed: BTreeMap<(u32, usize, u32, usize), CrossingId> = BTreeMap::new();
    for x in &s.crossings {
        let (a0, a1) = s.circle(x.over.circle).unwrap().segment(x.over.segment);
        let (b0, b1) = s.circle(x.under.circle).unwrap().segment(x.under.segment);
        match geometry::segment_crossing(a0, a1, b0, b1) {
            Some((_, _, p)) if dist(p, x.position) <= tol => {}
            Some(_) => r.push(loc, ViolationKind::GeometricMismatch, format!("crossing {} is not at its listed position", x.id)),
            None => r.push(loc, ViolationKind::GeometricMismatch, format!("crossing {}: referenced segments do not cross", x.id)),
        }
        let (p, q) = pair_key(x.over, x.under);
        if listed.insert((p.circle, p.segment, q.circle, q.segment), x.id).is_some() {
            r.push(loc, ViolationKind::GeometricMismatch, format!("crossing {} duplicates another crossing", x.id));
        }
    }
    let found = geometry::intersections(s);
    let mut seen = BTreeSet::new();
    for hit in &found {
        let (p, q) = pair_key(hit.a, hit.b);
        let key = (p.circle, p.segment, q.circle, q.segment);
        if listed.contains_key(&key) {
            seen.insert(key);
        } else {
            r.push(
                loc,
                ViolationKind::GeometricMismatch,
                format!(
                    "unlisted intersection of circle {} segment {} with circle {} segment {} near ({}, {})",
                    p.circle, p.segment, q.circle, q.segment, hit.point[0], hit.point[1]
                ),
            );
        }
    }
}

fn circle_labels(s: &Still) -> BTreeMap<CircleId, usize> {
    s.circles.iter().map(|c| (c.id, c.label)).collect()
}

fn crossing_ids(s: &Still) -> BTreeSet<CrossingId> {
    s.crossings.iter().map(|x| x.id).collect()
}

fn arc_position(s: &Still, arc: ArcRef, at: [f64; 2]) -> f64 {
    s.circle(arc.circle).unwrap().param_of(arc.segment, at)
}

/// Crossing ids with a branch strictly inside the shorter arc of `circle`
/// between positions `p` and `q`.
fn crossings_between(s: &Still, circle: CircleId, p: f64, q: f64, skip: &[CrossingId]) -> Vec<CrossingId> {
    let len = s.circle(circle).unwrap().segment_count() as f64;
    let (lo, hi) = if p <= q { (p, q) } else { (q, p) };
    let inner = hi - lo <= len / 2.0;
    let mut out = Vec::new();
    for x in &s.crossings {
        if skip.contains(&x.id) {
            continue;
        }
        for arc in [x.over, x.under] {
            if arc.circle != circle {
                continue;
            }
            let t = arc_position(s, arc, x.position);
            let inside = t > lo && t < hi;
            if inside == inner {
                out.push(x.id);
                break;
            }
        }
    }
    out
}

fn check_event(e: usize, ev: &Event, before: &Still, after: &Still, r: &mut ValidationReport) {
    let loc = Location::Event(e);
    let lb = circle_labels(before);
    let la = circle_labels(after);
    let xb = crossing_ids(before);
    let xa = crossing_ids(after);
    let ids_b: BTreeSet<_> = lb.keys().copied().collect();
    let ids_a: BTreeSet<_> = la.keys().copied().collect();

    // circles
    let (gone, new): (BTreeSet<CircleId>, BTreeSet<CircleId>) = match ev {
        Event::Birth { circle } => (BTreeSet::new(), [*circle].into()),
        Event::Death { circle } => ([*circle].into(), BTreeSet::new()),
        Event::Saddle { from, to } => (from.iter().copied().collect(), to.iter().copied().collect()),
        _ => (BTreeSet::new(), BTreeSet::new()),
    };
    let expect_after: BTreeSet<CircleId> = ids_b.difference(&gone).copied().chain(new.iter().copied()).collect();
    if !gone.is_subset(&ids_b) || expect_after != ids_a || new.iter().any(|c| ids_b.contains(c) && !gone.contains(c)) {
        r.push(loc, ViolationKind::IdentityMismatch, "circle identifiers do not change as the event declares");
        return;
    }
    for (id, l) in &lb {
        if let Some(l2) = la.get(id) {
            if !gone.contains(id) && l != l2 {
                r.push(loc, ViolationKind::LabelInconsistency, format!("circle {id} changes label {l} -> {l2}"));
            }
        }
    }
    if let Event::Saddle { from, to } = ev {
        let labels: BTreeSet<usize> = from.iter().map(|c| lb[c]).chain(to.iter().map(|c| la[c])).collect();
        if labels.len() != 1 {
            r.push(loc, ViolationKind::LabelInconsistency, "saddle joins circles with different labels");
        }
    }
    match ev {
        Event::Birth { circle } if after.crossings.iter().any(|x| x.over.circle == *circle || x.under.circle == *circle) => {
            r.push(loc, ViolationKind::NonLocalEvent, format!("circle {circle} is born with crossings"));
        }
        Event::Death { circle } if before.crossings.iter().any(|x| x.over.circle == *circle || x.under.circle == *circle) => {
            r.push(loc, ViolationKind::NonLocalEvent, format!("circle {circle} dies with crossings"));
        }
        _ => {}
    }

    // crossings
    let (xgone, xnew): (Vec<CrossingId>, Vec<CrossingId>) = match ev {
        Event::R1Create { crossing, .. } => (vec![], vec![*crossing]),
        Event::R1Annihilate { crossing, .. } => (vec![*crossing], vec![]),
        Event::R2Create { crossings, .. } => (vec![], crossings.to_vec()),
        Event::R2Annihilate { crossings, .. } => (crossings.to_vec(), vec![]),
        _ => (vec![], vec![]),
    };
    let expect_xa: BTreeSet<CrossingId> = xb.iter().filter(|x| !xgone.contains(x)).chain(xnew.iter()).copied().collect();
    if !xgone.iter().all(|x| xb.contains(x)) || xnew.iter().any(|x| xb.contains(x)) || expect_xa != xa {
        r.push(loc, ViolationKind::IdentityMismatch, "crossing identifiers do not change as the event declares");
        return;
    }
    for x in &before.crossings {
        let Some(y) = after.crossing(x.id) else { continue };
        for (p, q, role) in [(x.over.circle, y.over.circle, "over"), (x.under.circle, y.under.circle, "under")] {
            let renamed = gone.contains(&p) && new.contains(&q);
            if p != q && !renamed {
                r.push(loc, ViolationKind::IdentityMismatch, format!("crossing {} changes its {role} circle {p} -> {q}", x.id));
            } else if lb[&p] != la[&q] {
                r.push(loc, ViolationKind::LabelInconsistency, format!("crossing {} changes its {role} label", x.id));
            }
        }
    }

    match ev {
        Event::R1Create { crossing, circle, .. } => check_r1(loc, after, *crossing, *circle, r),
        Event::R1Annihilate { crossing, circle, .. } => check_r1(loc, before, *crossing, *circle, r),
        Event::R2Create { crossings, over, under } => check_r2(loc, after, *crossings, *over, *under, r),
        Event::R2Annihilate { crossings, over, under } => check_r2(loc, before, *crossings, *over, *under, r),
        Event::R3 { top_middle, top_bottom, middle_bottom } => {
            check_r3(loc, before, after, [*top_middle, *top_bottom, *middle_bottom], r)
        }
        _ => {}
    }
}

fn check_r1(loc: Location, s: &Still, id: CrossingId, circle: CircleId, r: &mut ValidationReport) {
    let x = s.crossing(id).unwrap();
    if x.over.circle != circle || x.under.circle != circle {
        r.push(loc, ViolationKind::IdentityMismatch, format!("kink crossing {id} is not a self-crossing of circle {circle}"));
        return;
    }
    let p = arc_position(s, x.over, x.position);
    let q = arc_position(s, x.under, x.position);
    let inside = crossings_between(s, circle, p, q, &[id]);
    if !inside.is_empty() {
        r.push(loc, ViolationKind::NonLocalEvent, format!("kink of crossing {id} contains crossings {inside:?}"));
    }
}

fn check_r2(loc: Location, s: &Still, ids: [CrossingId; 2], over: CircleId, under: CircleId, r: &mut ValidationReport) {
    let a = s.crossing(ids[0]).unwrap();
    let b = s.crossing(ids[1]).unwrap();
    for x in [a, b] {
        if x.over.circle != over || x.under.circle != under {
            r.push(loc, ViolationKind::IdentityMismatch, format!("crossing {} is not between over {over} and under {under}", x.id));
            return;
        }
    }
    for pick in [|x: &Crossing| x.over, |x: &Crossing| x.under] {
        let (pa, pb) = (pick(a), pick(b));
        let inside = crossings_between(s, pa.circle, arc_position(s, pa, a.position), arc_position(s, pb, b.position), &ids);
        if !inside.is_empty() {
            r.push(loc, ViolationKind::NonLocalEvent, format!("bigon of crossings {ids:?} meets crossings {inside:?}"));
            return;
        }
    }
}

fn check_r3(loc: Location, before: &Still, after: &Still, ids: [CrossingId; 3], r: &mut ValidationReport) {
    let [tm, tb, mb] = ids;
    for s in [before, after] {
        let (Some(x), Some(y), Some(z)) = (s.crossing(tm), s.crossing(tb), s.crossing(mb)) else {
            r.push(loc, ViolationKind::IdentityMismatch, "triple point crossings must exist on both sides");
            return;
        };
        let top_ok = x.over.circle == y.over.circle;
        let mid_ok = x.under.circle == z.over.circle;
        let bot_ok = y.under.circle == z.under.circle;
        if !(top_ok && mid_ok && bot_ok) {
            r.push(loc, ViolationKind::IdentityMismatch, "triple point crossings do not share top, middle and bottom sheets");
            return;
        }
    }
    // along each sheet the two crossings it carries trade places
    let sheets: [(CrossingId, CrossingId, fn(&Crossing) -> ArcRef); 3] =
        [(tm, tb, |x| x.over), (tm, mb, |x| x.under), (tb, mb, |x| x.under)];
    for (p, q, branch) in sheets {
        let order = |s: &Still| -> Option<(f64, [f64; 2])> {
            let (x, y) = (s.crossing(p)?, s.crossing(q)?);
            let t = s.tangent(branch(x))?;
            Some((geometry::dot(t, sub(y.position, x.position)), t))
        };
        let (Some((o0, t0)), Some((o1, t1))) = (order(before), order(after)) else {
            r.push(loc, ViolationKind::GeometricMismatch, "degenerate triple point geometry");
            return;
        };
        let same_way = geometry::dot(t0, t1) > 0.0;
        if (o0 * o1 < 0.0) != same_way {
            r.push(loc, ViolationKind::GeometricMismatch, format!("crossings {p} and {q} keep their order along their common sheet"));
            return;
        }
    }
    let mut pts = Vec::new();
    for s in [before, after] {
        for i in ids {
            pts.push(s.crossing(i).unwrap().position);
        }
    }
    let c = [pts.iter().map(|p| p[0]).sum::<f64>() / 6.0, pts.iter().map(|p| p[1]).sum::<f64>() / 6.0];
    let radius = pts.iter().map(|p| dist(*p, c)).fold(0.0, f64::max);
    for s in [before, after] {
        for x in &s.crossings {
            if !ids.contains(&x.id) && dist(x.position, c) <= radius {
                r.push(loc, ViolationKind::NonLocalEvent, format!("crossing {} lies inside the triple point support", x.id));
                return;
            }
        }
    }
}
