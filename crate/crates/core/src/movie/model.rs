//! Motion-picture presentations: stills of planar link diagrams joined by
//! elementary events.

pub type CircleId = u32;
pub type CrossingId = u32;
pub type Point = [f64; 2];

/// A closed polyline carrying a component label. Segment `s` runs from
/// `points[s]` to `points[(s + 1) % len]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Circle {
    pub id: CircleId,
    pub label: usize,
    pub points: Vec<Point>,
}

impl Circle {
    pub fn segment(&self, s: usize) -> (Point, Point) {
        let len = self.points.len();
        (self.points[s % len], self.points[(s + 1) % len])
    }

    pub fn segment_count(&self) -> usize {
        self.points.len()
    }

    /// Point at `param` segment units along the circle.
    pub fn point_at(&self, param: f64) -> Point {
        let len = self.points.len() as f64;
        let t = param.rem_euclid(len);
        let s = (t.floor() as usize).min(self.points.len() - 1);
        let (a, b) = self.segment(s);
        let f = t - s as f64;
        [a[0] + (b[0] - a[0]) * f, a[1] + (b[1] - a[1]) * f]
    }

    /// Unit tangent of the segment containing `param`.
    pub fn tangent_at(&self, param: f64) -> Point {
        let len = self.points.len() as f64;
        let s = (param.rem_euclid(len).floor() as usize).min(self.points.len() - 1);
        let (a, b) = self.segment(s);
        let v = [b[0] - a[0], b[1] - a[1]];
        let n = v[0].hypot(v[1]);
        [v[0] / n, v[1] / n]
    }

    /// Parameter of the point of segment `s` nearest to `at`.
    pub fn param_of(&self, s: usize, at: Point) -> f64 {
        let (a, b) = self.segment(s);
        let d = [b[0] - a[0], b[1] - a[1]];
        let len2 = d[0] * d[0] + d[1] * d[1];
        let f = if len2 > 0.0 { ((at[0] - a[0]) * d[0] + (at[1] - a[1]) * d[1]) / len2 } else { 0.0 };
        s as f64 + f.clamp(0.0, 1.0)
    }
}

/// One branch of a circle at a crossing: the circle and the segment index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ArcRef {
    pub circle: CircleId,
    pub segment: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Crossing {
    pub id: CrossingId,
    pub over: ArcRef,
    pub under: ArcRef,
    pub position: Point,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Still {
    pub time: f64,
    pub circles: Vec<Circle>,
    pub crossings: Vec<Crossing>,
}

impl Still {
    pub fn circle(&self, id: CircleId) -> Option<&Circle> {
        self.circles.iter().find(|c| c.id == id)
    }

    pub fn crossing(&self, id: CrossingId) -> Option<&Crossing> {
        self.crossings.iter().find(|c| c.id == id)
    }

    pub fn is_empty(&self) -> bool {
        self.circles.is_empty() && self.crossings.is_empty()
    }

    pub fn label_of(&self, circle: CircleId) -> Option<usize> {
        self.circle(circle).map(|c| c.label)
    }

    /// Unit tangent of the referenced branch, following the circle's orientation.
    pub fn tangent(&self, arc: ArcRef) -> Option<Point> {
        let (a, b) = self.circle(arc.circle)?.segment(arc.segment);
        let v = [b[0] - a[0], b[1] - a[1]];
        let len = v[0].hypot(v[1]);
        (len > 0.0).then(|| [v[0] / len, v[1] / len])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EventKind {
    Isotopy,
    Birth,
    Death,
    Saddle,
    R1Create,
    R1Annihilate,
    R2Create,
    R2Annihilate,
    R3,
}

/// The change between two consecutive stills.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Event {
    Isotopy,
    Birth { circle: CircleId },
    Death { circle: CircleId },
    /// A band joining arcs of `from`; the resulting circles are `to`.
    Saddle { from: Vec<CircleId>, to: Vec<CircleId> },
    /// A kink appears on `circle`; `sign` is the branch-point sign.
    R1Create { crossing: CrossingId, circle: CircleId, sign: i8 },
    R1Annihilate { crossing: CrossingId, circle: CircleId, sign: i8 },
    R2Create { crossings: [CrossingId; 2], over: CircleId, under: CircleId },
    R2Annihilate { crossings: [CrossingId; 2], over: CircleId, under: CircleId },
    /// A triple point; the crossings are named by the sheets they join.
    R3 { top_middle: CrossingId, top_bottom: CrossingId, middle_bottom: CrossingId },
}

impl Event {
    pub fn kind(&self) -> EventKind {
        match self {
            Event::Isotopy => EventKind::Isotopy,
            Event::Birth { .. } => EventKind::Birth,
            Event::Death { .. } => EventKind::Death,
            Event::Saddle { .. } => EventKind::Saddle,
            Event::R1Create { .. } => EventKind::R1Create,
            Event::R1Annihilate { .. } => EventKind::R1Annihilate,
            Event::R2Create { .. } => EventKind::R2Create,
            Event::R2Annihilate { .. } => EventKind::R2Annihilate,
            Event::R3 { .. } => EventKind::R3,
        }
    }

    /// Crossing ids the event touches.
    pub fn crossings(&self) -> Vec<CrossingId> {
        match self {
            Event::R1Create { crossing, .. } | Event::R1Annihilate { crossing, .. } => vec![*crossing],
            Event::R2Create { crossings, .. } | Event::R2Annihilate { crossings, .. } => crossings.to_vec(),
            Event::R3 { top_middle, top_bottom, middle_bottom } => vec![*top_middle, *top_bottom, *middle_bottom],
            _ => Vec::new(),
        }
    }
}

/// A movie. Linear movies start and end with empty stills and have one event
/// per consecutive pair. Periodic movies present a surface swept around an
/// axis (a spun surface): there is one more event joining the last still
/// back to the first, and `period` is the time at which the sweep closes.
#[derive(Debug, Clone, PartialEq)]
pub struct Movie {
    pub n: usize,
    pub period: Option<f64>,
    pub stills: Vec<Still>,
    pub events: Vec<Event>,
}

impl Movie {
    pub fn is_periodic(&self) -> bool {
        self.period.is_some()
    }

    /// Index of the still after event `e`.
    pub fn after(&self, e: usize) -> usize {
        (e + 1) % self.stills.len()
    }

    /// Start and end times of the slab containing event `e`.
    pub fn slab(&self, e: usize) -> (f64, f64) {
        let t0 = self.stills[e].time;
        let t1 = if e + 1 < self.stills.len() {
            self.stills[e + 1].time
        } else {
            self.period.unwrap_or(t0)
        };
        (t0, t1)
    }

    /// Translates every still by `offset` and prefixes ids with `id_offset`.
    pub fn shifted(&self, offset: Point, id_offset: u32) -> Movie {
        let mut m = self.clone();
        for s in &mut m.stills {
            for c in &mut s.circles {
                c.id += id_offset;
                for p in &mut c.points {
                    p[0] += offset[0];
                    p[1] += offset[1];
                }
            }
            for x in &mut s.crossings {
                x.id += id_offset;
                x.over.circle += id_offset;
                x.under.circle += id_offset;
                x.position[0] += offset[0];
                x.position[1] += offset[1];
            }
        }
        for e in &mut m.events {
            shift_event(e, id_offset);
        }
        m
    }
}

fn shift_event(e: &mut Event, o: u32) {
    match e {
        Event::Isotopy => {}
        Event::Birth { circle } | Event::Death { circle } => *circle += o,
        Event::Saddle { from, to } => {
            from.iter_mut().chain(to.iter_mut()).for_each(|c| *c += o);
        }
        Event::R1Create { crossing, circle, .. } | Event::R1Annihilate { crossing, circle, .. } => {
            *crossing += o;
            *circle += o;
        }
        Event::R2Create { crossings, over, under } | Event::R2Annihilate { crossings, over, under } => {
            crossings.iter_mut().for_each(|c| *c += o);
            *over += o;
            *under += o;
        }
        Event::R3 { top_middle, top_bottom, middle_bottom } => {
            *top_middle += o;
            *top_bottom += o;
            *middle_bottom += o;
        }
    }
}
