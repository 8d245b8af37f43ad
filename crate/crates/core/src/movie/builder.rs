//! Movies from sampled motions of space curves.
//!
//! A motion gives, at each time, closed curves in space sampled with a fixed
//! vertex count. The diagram at a time is the projection `(x, y, z) -> (y, z)`
//! with `x` as depth (larger is over). Consecutive diagrams are compared by
//! matching crossings through their curve parameters; every time slab must
//! differ by exactly one elementary event, and slabs that do not are
//! bisected.

use std::collections::{BTreeMap, BTreeSet};

use super::error::MovieError;
use super::geometry::{self, cross, dist, sub, Vec3};
use super::model::{ArcRef, Circle, Crossing, CrossingId, Event, Movie, Point, Still};
use super::surface::derived_branch_sign;

#[derive(Debug, Clone, PartialEq)]
pub struct MotionCurve {
    /// Persistent key, used as the circle identifier.
    pub key: u32,
    pub label: usize,
    /// `(depth, u, v)` samples of a closed curve.
    pub points: Vec<Vec3>,
}

pub trait Motion {
    fn n(&self) -> usize;
    /// `Some(p)` for motions on the circle `[0, p)`.
    fn period(&self) -> Option<f64>;
    /// Time range; for linear motions both ends must be empty.
    fn span(&self) -> (f64, f64);
    fn curves(&self, t: f64) -> Vec<MotionCurve>;
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BuildOptions {
    /// Initial uniform still count (before bisection).
    pub stills: usize,
    pub max_depth: usize,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions { stills: 64, max_depth: 24 }
    }
}

/// A crossing with its curve parameters (segment index plus fraction).
#[derive(Debug, Clone, PartialEq)]
struct RawCrossing {
    over: (u32, f64),
    under: (u32, f64),
    over_arc: ArcRef,
    under_arc: ArcRef,
    position: Point,
}

#[derive(Debug, Clone, PartialEq)]
struct Diagram {
    time: f64,
    circles: Vec<Circle>,
    lengths: BTreeMap<u32, f64>,
    crossings: Vec<RawCrossing>,
}

const DEPTH_TOLERANCE: f64 = 1e-9;
const MATCH_TOLERANCE: f64 = 3.0;
const MAX_DRIFT: f64 = 2.0;

/// Projects space curves to a diagram with crossings resolved by depth.
pub fn project_curves(time: f64, curves: &[MotionCurve]) -> Result<(Vec<Circle>, Vec<Crossing>), MovieError> {
    let d = diagram(time, curves)?;
    let crossings = d
        .crossings
        .iter()
        .enumerate()
        .map(|(i, x)| Crossing { id: i as u32 + 1, over: x.over_arc, under: x.under_arc, position: x.position })
        .collect();
    Ok((d.circles, crossings))
}

fn diagram(time: f64, curves: &[MotionCurve]) -> Result<Diagram, MovieError> {
    let circles: Vec<Circle> = curves
        .iter()
        .map(|c| Circle { id: c.key, label: c.label, points: c.points.iter().map(|p| [p[1], p[2]]).collect() })
        .collect();
    let still = Still { time, circles, crossings: vec![] };
    let depth = |key: u32, seg: usize, s: f64| {
        let c = curves.iter().find(|c| c.key == key).expect("curve");
        let n = c.points.len();
        c.points[seg][0] * (1.0 - s) + c.points[(seg + 1) % n][0] * s
    };
    let mut crossings = Vec::new();
    for hit in geometry::intersections(&still) {
        let da = depth(hit.a.circle, hit.a.segment, hit.sa);
        let db = depth(hit.b.circle, hit.b.segment, hit.sb);
        if (da - db).abs() < DEPTH_TOLERANCE {
            return Err(MovieError::Consistency(format!("curves meet in space at time {time}")));
        }
        let pa = (hit.a.circle, hit.a.segment as f64 + hit.sa);
        let pb = (hit.b.circle, hit.b.segment as f64 + hit.sb);
        let (over, under, over_arc, under_arc) = if da > db { (pa, pb, hit.a, hit.b) } else { (pb, pa, hit.b, hit.a) };
        crossings.push(RawCrossing { over, under, over_arc, under_arc, position: hit.point });
    }
    let lengths = still.circles.iter().map(|c| (c.id, c.segment_count() as f64)).collect();
    Ok(Diagram { time, circles: still.circles, lengths, crossings })
}

fn wrap(d: f64, len: f64) -> f64 {
    let r = d.rem_euclid(len);
    if r > len / 2.0 {
        r - len
    } else {
        r
    }
}

fn param_gap(a: &Diagram, x: &RawCrossing, y: &RawCrossing) -> f64 {
    let lo = a.lengths[&x.over.0];
    let lu = a.lengths[&x.under.0];
    wrap(x.over.1 - y.over.1, lo).abs().max(wrap(x.under.1 - y.under.1, lu).abs())
}

/// Mutual nearest matching of crossings between two diagrams.
fn match_crossings(d0: &Diagram, d1: &Diagram) -> Vec<Option<usize>> {
    let best = |from: &Diagram, to: &Diagram, x: &RawCrossing| -> Option<(usize, f64)> {
        to.crossings
            .iter()
            .enumerate()
            .filter(|(_, y)| y.over.0 == x.over.0 && y.under.0 == x.under.0 && from.lengths.get(&x.over.0) == to.lengths.get(&x.over.0))
            .map(|(j, y)| (j, param_gap(from, x, y)))
            .filter(|(_, g)| *g < MATCH_TOLERANCE)
            .min_by(|a, b| a.1.total_cmp(&b.1))
    };
    d0.crossings
        .iter()
        .enumerate()
        .map(|(i, x)| {
            let (j, _) = best(d0, d1, x)?;
            let (back, _) = best(d1, d0, &d1.crossings[j])?;
            (back == i).then_some(j)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
enum Step {
    Isotopy,
    Birth(u32),
    Death(u32),
    R1Create(usize),
    R1Annihilate(usize),
    R2Create(usize, usize),
    R2Annihilate(usize, usize),
    /// Indices in the earlier diagram: (top-middle, top-bottom, middle-bottom).
    R3(usize, usize, usize),
    Ambiguous,
}

/// Pairs of branches (crossing index in `d0`, is-over) that pass each other.
fn swaps(d0: &Diagram, d1: &Diagram, m: &[Option<usize>]) -> Vec<((usize, bool), (usize, bool))> {
    let mut branches: BTreeMap<u32, Vec<((usize, bool), f64, f64)>> = BTreeMap::new();
    for (i, j) in m.iter().enumerate() {
        let Some(j) = *j else { continue };
        let (x, y) = (&d0.crossings[i], &d1.crossings[j]);
        branches.entry(x.over.0).or_default().push(((i, true), x.over.1, y.over.1));
        branches.entry(x.under.0).or_default().push(((i, false), x.under.1, y.under.1));
    }
    let mut out = Vec::new();
    for (key, list) in &branches {
        let len = d0.lengths[key];
        for a in 0..list.len() {
            for b in a + 1..list.len() {
                let (p, q) = (&list[a], &list[b]);
                if p.0 .0 == q.0 .0 {
                    continue;
                }
                let g0 = wrap(p.1 - q.1, len);
                let g1 = wrap(p.2 - q.2, len);
                if g0.abs() < len / 4.0 && g1.abs() < len / 4.0 && g0 * g1 < 0.0 {
                    out.push((p.0, q.0));
                }
            }
        }
    }
    out
}

fn classify_r3(d0: &Diagram, sw: &[((usize, bool), (usize, bool))]) -> Step {
    if sw.len() != 3 {
        return Step::Ambiguous;
    }
    let ids: BTreeSet<usize> = sw.iter().flat_map(|(a, b)| [a.0, b.0]).collect();
    if ids.len() != 3 {
        return Step::Ambiguous;
    }
    // each swap joins two branches lying on one sheet
    let (mut top, mut mid, mut bot) = (None, None, None);
    for (a, b) in sw {
        match (a.1, b.1) {
            (true, true) => top = Some((a.0, b.0)),
            (false, false) => bot = Some((a.0, b.0)),
            _ => mid = Some(if a.1 { (a.0, b.0) } else { (b.0, a.0) }),
        }
    }
    let (Some(top), Some(mid), Some(bot)) = (top, mid, bot) else { return Step::Ambiguous };
    // mid = (crossing where the middle sheet is over, crossing where it is under)
    let middle_bottom = mid.0;
    let top_middle = mid.1;
    let top_bottom = if top.0 == top_middle { top.1 } else { top.0 };
    let consistent = [top.0, top.1].contains(&top_middle)
        && [bot.0, bot.1].contains(&middle_bottom)
        && [bot.0, bot.1].contains(&top_bottom)
        && top_bottom != top_middle;
    if !consistent {
        return Step::Ambiguous;
    }
    let _ = d0;
    Step::R3(top_middle, top_bottom, middle_bottom)
}

fn classify(d0: &Diagram, d1: &Diagram) -> Step {
    let k0: BTreeSet<u32> = d0.circles.iter().map(|c| c.id).collect();
    let k1: BTreeSet<u32> = d1.circles.iter().map(|c| c.id).collect();
    let m = match_crossings(d0, d1);
    let matched: BTreeSet<usize> = m.iter().flatten().copied().collect();
    let u0: Vec<usize> = (0..d0.crossings.len()).filter(|i| m[*i].is_none()).collect();
    let u1: Vec<usize> = (0..d1.crossings.len()).filter(|j| !matched.contains(j)).collect();
    for (i, j) in m.iter().enumerate() {
        if let Some(j) = j {
            if param_gap(d0, &d0.crossings[i], &d1.crossings[*j]) > MAX_DRIFT {
                return Step::Ambiguous;
            }
        }
    }
    if k0 != k1 {
        if !u0.is_empty() || !u1.is_empty() {
            return Step::Ambiguous;
        }
        let born: Vec<u32> = k1.difference(&k0).copied().collect();
        let dead: Vec<u32> = k0.difference(&k1).copied().collect();
        return match (born.as_slice(), dead.as_slice()) {
            ([b], []) => Step::Birth(*b),
            ([], [d]) => Step::Death(*d),
            _ => Step::Ambiguous,
        };
    }
    let sw = swaps(d0, d1, &m);
    if !sw.is_empty() {
        if !u0.is_empty() || !u1.is_empty() {
            return Step::Ambiguous;
        }
        return classify_r3(d0, &sw);
    }
    let same_pair = |d: &Diagram, a: usize, b: usize| {
        let (x, y) = (&d.crossings[a], &d.crossings[b]);
        x.over.0 == y.over.0 && x.under.0 == y.under.0
    };
    let is_kink = |d: &Diagram, a: usize| d.crossings[a].over.0 == d.crossings[a].under.0;
    match (u0.as_slice(), u1.as_slice()) {
        ([], []) => Step::Isotopy,
        ([], [a]) if is_kink(d1, *a) => Step::R1Create(*a),
        ([a], []) if is_kink(d0, *a) => Step::R1Annihilate(*a),
        ([], [a, b]) if same_pair(d1, *a, *b) => Step::R2Create(*a, *b),
        ([a, b], []) if same_pair(d0, *a, *b) => Step::R2Annihilate(*a, *b),
        _ => Step::Ambiguous,
    }
}

/// Refines `[d0, d1]` until every slab holds one event.
fn refine(motion: &dyn Motion, d0: Diagram, d1: Diagram, depth: usize, out: &mut Vec<(Diagram, Step)>) -> Result<(), MovieError> {
    let step = classify(&d0, &d1);
    if step != Step::Ambiguous {
        out.push((d0, step));
        return Ok(());
    }
    if depth == 0 {
        return Err(MovieError::Consistency(format!(
            "cannot resolve the motion between times {} and {} into elementary events",
            d0.time, d1.time
        )));
    }
    let tm = 0.5 * (d0.time + d1.time);
    let dm = diagram(tm, &motion.curves(tm))?;
    refine(motion, d0, dm.clone(), depth - 1, out)?;
    refine(motion, dm, d1, depth - 1, out)
}

struct Ids {
    next: CrossingId,
}

impl Ids {
    fn fresh(&mut self) -> CrossingId {
        self.next += 1;
        self.next
    }
}

/// Samples, refines and assembles a movie from a motion.
pub fn build_movie(motion: &dyn Motion, opts: BuildOptions) -> Result<Movie, MovieError> {
    let (t0, t1) = motion.span();
    let periodic = motion.period();
    let count = opts.stills.max(2);
    let times: Vec<f64> = match periodic {
        Some(p) => (0..count).map(|k| p * k as f64 / count as f64).collect(),
        None => (0..count).map(|k| t0 + (t1 - t0) * k as f64 / (count - 1) as f64).collect(),
    };
    let mut diagrams = Vec::with_capacity(times.len());
    for t in &times {
        diagrams.push(diagram(*t, &motion.curves(*t))?);
    }
    let mut slabs: Vec<(Diagram, Step)> = Vec::new();
    for w in diagrams.windows(2) {
        refine(motion, w[0].clone(), w[1].clone(), opts.max_depth, &mut slabs)?;
    }
    let end = match periodic {
        Some(p) => {
            let closing = diagram(p, &motion.curves(p))?;
            refine(motion, diagrams[diagrams.len() - 1].clone(), closing.clone(), opts.max_depth, &mut slabs)?;
            Some(closing)
        }
        None => {
            slabs.push((diagrams[diagrams.len() - 1].clone(), Step::Isotopy));
            None
        }
    };
    assemble(motion.n(), periodic, slabs, end, &diagrams[0])
}

fn assemble(n: usize, period: Option<f64>, slabs: Vec<(Diagram, Step)>, closing: Option<Diagram>, first: &Diagram) -> Result<Movie, MovieError> {
    let mut ids = Ids { next: 0 };
    let mut stills = Vec::with_capacity(slabs.len());
    let mut events = Vec::new();
    let mut current: Vec<CrossingId> = first.crossings.iter().map(|_| ids.fresh()).collect();
    for (k, (d, step)) in slabs.iter().enumerate() {
        stills.push(Still {
            time: d.time,
            circles: d.circles.clone(),
            crossings: d
                .crossings
                .iter()
                .zip(&current)
                .map(|(x, id)| Crossing { id: *id, over: x.over_arc, under: x.under_arc, position: x.position })
                .collect(),
        });
        let last = k + 1 == slabs.len();
        if last && period.is_none() {
            break;
        }
        let next: &Diagram = if last { closing.as_ref().expect("closing diagram") } else { &slabs[k + 1].0 };
        let m = match_crossings(d, next);
        let mut next_ids: Vec<Option<CrossingId>> = vec![None; next.crossings.len()];
        for (i, j) in m.iter().enumerate() {
            if let Some(j) = j {
                next_ids[*j] = Some(current[i]);
            }
        }
        let key = |d: &Diagram, i: usize| (d.crossings[i].over.0, d.crossings[i].under.0);
        let event = match *step {
            Step::Isotopy => Event::Isotopy,
            Step::Birth(c) => Event::Birth { circle: c },
            Step::Death(c) => Event::Death { circle: c },
            Step::R1Create(a) => {
                let id = ids.fresh();
                next_ids[a] = Some(id);
                Event::R1Create { crossing: id, circle: key(next, a).0, sign: 1 }
            }
            Step::R1Annihilate(a) => Event::R1Annihilate { crossing: current[a], circle: key(d, a).0, sign: 1 },
            Step::R2Create(a, b) => {
                let (x, y) = (ids.fresh(), ids.fresh());
                next_ids[a] = Some(x);
                next_ids[b] = Some(y);
                let (over, under) = key(next, a);
                Event::R2Create { crossings: [x, y], over, under }
            }
            Step::R2Annihilate(a, b) => {
                let (over, under) = key(d, a);
                Event::R2Annihilate { crossings: [current[a], current[b]], over, under }
            }
            Step::R3(tm, tb, mb) => Event::R3 { top_middle: current[tm], top_bottom: current[tb], middle_bottom: current[mb] },
            Step::Ambiguous => unreachable!("refined slabs are classified"),
        };
        events.push(event);
        current = next_ids
            .into_iter()
            .map(|x| x.ok_or_else(|| MovieError::Consistency("unmatched crossing after refinement".into())))
            .collect::<Result<_, _>>()?;
    }
    let mut movie = Movie { n, period, stills, events };
    if let Some(closing) = closing {
        close_periodic(&mut movie, &closing, &current)?;
    }
    for e in 0..movie.events.len() {
        if let Some(s) = derived_branch_sign(&movie, e) {
            match &mut movie.events[e] {
                Event::R1Create { sign, .. } | Event::R1Annihilate { sign, .. } => *sign = s,
                _ => {}
            }
        }
    }
    Ok(movie)
}

/// Identifies the crossings of the closing diagram with those of the first
/// still and renames identifiers so that double curves close up.
fn close_periodic(m: &mut Movie, closing: &Diagram, closing_ids: &[CrossingId]) -> Result<(), MovieError> {
    let first = &m.stills[0];
    let tol = 1e-6 * geometry::scale(first);
    let mut rename: BTreeMap<CrossingId, CrossingId> = BTreeMap::new();
    for (x, id) in closing.crossings.iter().zip(closing_ids) {
        let target = first.crossings.iter().find(|y| {
            dist(y.position, x.position) < tol
                && y.over.circle == x.over.0
                && y.under.circle == x.under.0
        });
        let Some(y) = target else {
            return Err(MovieError::Consistency("closing diagram differs from the first still".into()));
        };
        if *id != y.id {
            rename.insert(*id, y.id);
        }
    }
    if closing.crossings.len() != first.crossings.len() {
        return Err(MovieError::Consistency("closing diagram differs from the first still".into()));
    }
    if rename.is_empty() {
        return Ok(());
    }
    if rename.keys().any(|id| first.crossing(*id).is_some()) {
        return Err(MovieError::Consistency("crossings are permuted around the period".into()));
    }
    let map = |id: &mut CrossingId| {
        if let Some(r) = rename.get(id) {
            *id = *r;
        }
    };
    // only stills after the first carry the identifiers being renamed
    for s in m.stills.iter_mut().skip(1) {
        for x in &mut s.crossings {
            map(&mut x.id);
        }
        let unique: BTreeSet<_> = s.crossings.iter().map(|x| x.id).collect();
        if unique.len() != s.crossings.len() {
            return Err(MovieError::Consistency("periodic identifiers collide".into()));
        }
    }
    for ev in m.events.iter_mut() {
        match ev {
            Event::R1Create { crossing, .. } | Event::R1Annihilate { crossing, .. } => map(crossing),
            Event::R2Create { crossings, .. } | Event::R2Annihilate { crossings, .. } => crossings.iter_mut().for_each(map),
            Event::R3 { top_middle, top_bottom, middle_bottom } => {
                map(top_middle);
                map(top_bottom);
                map(middle_bottom);
            }
            _ => {}
        }
    }
    Ok(())
}

/// Triangle orientation of three points.
pub fn orientation(a: Point, b: Point, c: Point) -> f64 {
    cross(sub(b, a), sub(c, a))
}
