//! Generator surface-links as explicit movies.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::str::FromStr;

use super::builder::{build_movie, project_curves, BuildOptions, Motion, MotionCurve};
use super::error::MovieError;
use super::geometry::Vec3;
use super::model::{Event, Movie, Still};
use super::surface::derived_branch_sign;
use crate::expr::{parse_expr, LinkExpression};

/// A generator surface-link with its component labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Generator {
    /// Unknotted sphere.
    Sphere(usize),
    /// Sphere with a kink added and removed again.
    KinkSphere(usize),
    PositivePlane(usize),
    NegativePlane(usize),
    /// Strand `S^p(i, j)`, `p` taken mod 4.
    Strand { p: u8, i: usize, j: usize },
    /// Necklace `N^p(i, j; k)` with a single bead.
    Necklace { p: u8, i: usize, j: usize, bead: usize },
}

impl Generator {
    pub fn labels(&self) -> Vec<usize> {
        match *self {
            Generator::Sphere(i) | Generator::KinkSphere(i) | Generator::PositivePlane(i) | Generator::NegativePlane(i) => vec![i],
            Generator::Strand { i, j, .. } => vec![i, j],
            Generator::Necklace { i, j, bead, .. } => vec![i, j, bead],
        }
    }

    /// Smallest component count holding every label.
    pub fn min_components(&self) -> usize {
        self.labels().into_iter().max().unwrap_or(1)
    }

    fn check(&self) -> Result<(), MovieError> {
        let labels = self.labels();
        if labels.contains(&0) {
            return Err(MovieError::UnknownGenerator(format!("{self}: labels start at 1")));
        }
        let distinct: std::collections::BTreeSet<_> = labels.iter().collect();
        if distinct.len() != labels.len() {
            return Err(MovieError::UnknownGenerator(format!("{self}: labels must be distinct")));
        }
        Ok(())
    }

    /// The same surface-link as a symbolic expression on `n` components.
    pub fn expression(&self, n: usize) -> LinkExpression {
        let body = match *self {
            Generator::Sphere(_) | Generator::KinkSphere(_) => "0".to_string(),
            Generator::PositivePlane(i) => format!("P[1]({i})"),
            Generator::NegativePlane(i) => format!("P[-1]({i})"),
            Generator::Strand { p, i, j } => format!("S[{p}]({i},{j})"),
            Generator::Necklace { p, i, j, bead } => format!("N[{p}]({i},{j};{bead})"),
        };
        parse_expr(&format!("n={n}; {body}")).expect("generator expressions parse")
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Generator::Sphere(i) => write!(f, "sphere({i})"),
            Generator::KinkSphere(i) => write!(f, "kink-sphere({i})"),
            Generator::PositivePlane(i) => write!(f, "P+({i})"),
            Generator::NegativePlane(i) => write!(f, "P-({i})"),
            Generator::Strand { p, i, j } => write!(f, "S{p}({i},{j})"),
            Generator::Necklace { p, i, j, bead } => write!(f, "N{p}({i},{j};{bead})"),
        }
    }
}

impl FromStr for Generator {
    type Err = MovieError;

    /// Accepts `sphere(i)`, `kink-sphere(i)`, `P+(i)`, `P-(i)`, `S<p>(i,j)`
    /// and `N<p>(i,j;k)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || MovieError::UnknownGenerator(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let open = compact.find('(').ok_or_else(bad)?;
        let args = compact[open..].strip_prefix('(').and_then(|a| a.strip_suffix(')')).ok_or_else(bad)?;
        let nums = |sep: &[char]| -> Result<Vec<usize>, MovieError> {
            args.split(sep).map(|a| a.parse::<usize>().map_err(|_| bad())).collect()
        };
        let head = &compact[..open];
        let g = match head {
            "sphere" => Generator::Sphere(nums(&[])?.first().copied().ok_or_else(bad)?),
            "kink-sphere" => Generator::KinkSphere(nums(&[])?.first().copied().ok_or_else(bad)?),
            "P+" => Generator::PositivePlane(nums(&[])?.first().copied().ok_or_else(bad)?),
            "P-" => Generator::NegativePlane(nums(&[])?.first().copied().ok_or_else(bad)?),
            _ => {
                let (kind, p) = head.split_at(1.min(head.len()));
                let p = if p.is_empty() { 1 } else { p.parse::<i64>().map_err(|_| bad())? };
                let p = p.rem_euclid(4) as u8;
                match (kind, nums(&[',', ';'])?.as_slice()) {
                    ("S", [i, j]) => Generator::Strand { p, i: *i, j: *j },
                    ("N", [i, j, k]) => Generator::Necklace { p, i: *i, j: *j, bead: *k },
                    _ => return Err(bad()),
                }
            }
        };
        g.check()?;
        Ok(g)
    }
}

/// Samples per circle in generated movies.
pub const CIRCLE_SAMPLES: usize = 96;

fn sample(n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |k| TAU * (k as f64 + 0.5) / n as f64)
}

fn curve(key: u32, label: usize, f: impl Fn(f64) -> Vec3) -> MotionCurve {
    MotionCurve { key, label, points: sample(CIRCLE_SAMPLES).map(f).collect() }
}

fn still(time: f64, curves: &[MotionCurve]) -> Result<Still, MovieError> {
    let (circles, crossings) = project_curves(time, curves)?;
    Ok(Still { time, circles, crossings })
}

fn ellipse(key: u32, label: usize, a: f64, b: f64) -> MotionCurve {
    curve(key, label, |s| [0.0, a * s.cos(), b * s.sin()])
}

/// A still whose single crossing takes identifier `id`.
fn with_crossing_id(mut s: Still, id: u32) -> Result<Still, MovieError> {
    if s.crossings.len() != 1 {
        return Err(MovieError::Consistency(format!("expected one crossing, found {}", s.crossings.len())));
    }
    s.crossings[0].id = id;
    Ok(s)
}

fn sphere(label: usize) -> Result<Movie, MovieError> {
    let stills = vec![
        Still { time: 0.0, ..Still::default() },
        still(1.0, &[ellipse(1, label, 1.0, 1.0)])?,
        Still { time: 2.0, ..Still::default() },
    ];
    Ok(Movie { n: label, period: None, stills, events: vec![Event::Birth { circle: 1 }, Event::Death { circle: 1 }] })
}

/// Limaçon `r = a + cos θ` with depth `sin θ`; it has an inner loop for `a < 1`.
fn limacon(key: u32, label: usize, a: f64) -> MotionCurve {
    curve(key, label, |s| {
        let r = a + s.cos();
        [s.sin(), r * s.cos(), r * s.sin()]
    })
}

fn kink_sphere(label: usize) -> Result<Movie, MovieError> {
    let stills = vec![
        Still { time: 0.0, ..Still::default() },
        still(1.0, &[limacon(1, label, 1.5)])?,
        with_crossing_id(still(2.0, &[limacon(1, label, 0.5)])?, 1)?,
        still(3.0, &[limacon(1, label, 1.5)])?,
        Still { time: 4.0, ..Still::default() },
    ];
    let events = vec![
        Event::Birth { circle: 1 },
        Event::R1Create { crossing: 1, circle: 1, sign: 1 },
        Event::R1Annihilate { crossing: 1, circle: 1, sign: 1 },
        Event::Death { circle: 1 },
    ];
    with_derived_signs(Movie { n: label, period: None, stills, events })
}

fn with_derived_signs(mut m: Movie) -> Result<Movie, MovieError> {
    for e in 0..m.events.len() {
        let derived = derived_branch_sign(&m, e);
        if let Event::R1Create { sign, .. } | Event::R1Annihilate { sign, .. } = &mut m.events[e] {
            *sign = derived.ok_or_else(|| MovieError::Consistency(format!("no kink geometry at event {e}")))?;
        }
    }
    Ok(m)
}

/// Figure eight `(sin s, sin 2s / 2)`; the branch through the origin at
/// `s = 0` lies over the one at `s = π`.
fn figure_eight(s: f64) -> Vec3 {
    [s.cos(), s.sin(), 0.5 * (2.0 * s).sin()]
}

/// The figure eight after a band joins the far ends of its lobes over the
/// top: one circle through the same crossing.
fn banded_figure_eight(label: usize) -> MotionCurve {
    const ARC: usize = 24;
    let h: f64 = 0.25;
    let lobe = |from: f64, to: f64| -> Vec<Vec3> {
        (0..ARC).map(|k| figure_eight(from + (to - from) * (k as f64 + 0.5) / ARC as f64)).collect()
    };
    let (cx, cy) = (h.cos(), 0.5 * (2.0 * h).sin());
    let edge = |y0: f64, half: f64, top: f64| -> Vec<Vec3> {
        let corners = [[cx, y0], [half, y0], [half, top], [-half, top], [-half, y0], [-cx, y0]];
        let mut out = Vec::new();
        for w in corners.windows(2) {
            for k in 0..6 {
                let f = k as f64 / 6.0;
                out.push([0.0, w[0][0] + (w[1][0] - w[0][0]) * f, w[0][1] + (w[1][1] - w[0][1]) * f]);
            }
        }
        out.push([0.0, -cx, y0]);
        out
    };
    let mut pts = Vec::new();
    pts.extend(lobe(0.0, PI / 2.0 - h));
    pts.extend(edge(cy, 1.2, 1.0));
    pts.extend(lobe(3.0 * PI / 2.0 - h, PI));
    pts.extend(lobe(PI, PI / 2.0 + h));
    pts.extend(edge(-cy, 1.4, 1.2));
    pts.extend(lobe(3.0 * PI / 2.0 + h, TAU));
    MotionCurve { key: 2, label, points: pts }
}

fn projective_plane(label: usize, positive: bool) -> Result<Movie, MovieError> {
    let eight = curve(1, label, figure_eight);
    let stills = vec![
        Still { time: 0.0, ..Still::default() },
        still(1.0, &[ellipse(1, label, 1.0, 0.6)])?,
        with_crossing_id(still(2.0, &[eight])?, 1)?,
        with_crossing_id(still(3.0, &[banded_figure_eight(label)])?, 1)?,
        still(4.0, &[ellipse(2, label, 1.3, 1.0)])?,
        Still { time: 5.0, ..Still::default() },
    ];
    let events = vec![
        Event::Birth { circle: 1 },
        Event::R1Create { crossing: 1, circle: 1, sign: 1 },
        Event::Saddle { from: vec![1], to: vec![2] },
        Event::R1Annihilate { crossing: 1, circle: 2, sign: 1 },
        Event::Death { circle: 2 },
    ];
    let m = with_derived_signs(Movie { n: label, period: None, stills, events })?;
    Ok(if positive { m } else { mirror_movie(&m) })
}

/// The mirror image: every crossing and every triple point turned over.
pub fn mirror_movie(m: &Movie) -> Movie {
    let mut out = m.clone();
    for s in &mut out.stills {
        for x in &mut s.crossings {
            std::mem::swap(&mut x.over, &mut x.under);
        }
    }
    for e in &mut out.events {
        match e {
            Event::R1Create { sign, .. } | Event::R1Annihilate { sign, .. } => *sign = -*sign,
            Event::R2Create { over, under, .. } | Event::R2Annihilate { over, under, .. } => std::mem::swap(over, under),
            Event::R3 { top_middle, middle_bottom, .. } => std::mem::swap(top_middle, middle_bottom),
            _ => {}
        }
    }
    out
}

/// Two round circles linked as a Hopf link in vertical planes through the
/// `z` axis, spun by `p` half turns about that axis over one period.
struct HopfChain {
    p: u8,
    labels: [usize; 2],
    bead: Option<usize>,
}

const CHAIN_ANGLES: [f64; 2] = [PI / 6.0, 2.0 * PI / 3.0];
const CHAIN_CENTRES: [f64; 2] = [0.5, -0.5];
const WOBBLE: f64 = 0.15;
const BEAD_RADIUS: f64 = 2.0;
const BEAD_TIME: f64 = 0.5;
const BEAD_HALF_LIFE: f64 = 0.3;
/// Small offset of the bead centre so that its crossings appear one at a time.
const BEAD_CENTRE: [f64; 2] = [0.11, 0.07];
/// Orientation of the spin, fixed so that `S^1(i, j)` has `d(i, j) = 1`.
const SPIN: f64 = -1.0;

impl HopfChain {
    fn component(&self, which: usize, theta: f64) -> MotionCurve {
        let alpha = CHAIN_ANGLES[which] + theta;
        let (h, nu) = ([alpha.cos(), alpha.sin()], [-alpha.sin(), alpha.cos()]);
        let c = CHAIN_CENTRES[which];
        curve(which as u32 + 1, self.labels[which], |s| {
            let (a, w) = (s.cos(), WOBBLE * (2.0 * s).sin());
            let x = a * h[0] + w * nu[0];
            let y = a * h[1] + w * nu[1];
            [x, y, c + s.sin()]
        })
    }
}

impl Motion for HopfChain {
    fn n(&self) -> usize {
        self.labels.iter().chain(&self.bead).copied().max().unwrap_or(1)
    }

    fn period(&self) -> Option<f64> {
        Some(1.0)
    }

    fn span(&self) -> (f64, f64) {
        (0.0, 1.0)
    }

    fn curves(&self, t: f64) -> Vec<MotionCurve> {
        let theta = SPIN * PI * f64::from(self.p) * t;
        let mut out = vec![self.component(0, theta), self.component(1, theta)];
        if let Some(label) = self.bead {
            let tau = (t - BEAD_TIME) / BEAD_HALF_LIFE;
            if tau.abs() < 1.0 {
                let r = BEAD_RADIUS * (1.0 - tau * tau).sqrt();
                out.push(curve(3, label, |s| [BEAD_RADIUS * tau, BEAD_CENTRE[0] + r * s.cos(), BEAD_CENTRE[1] + r * s.sin()]));
            }
        }
        out
    }
}

fn chain_options(p: u8) -> BuildOptions {
    BuildOptions { stills: 48 * usize::from(p.max(1)), ..BuildOptions::default() }
}

/// The bundled movie of a generator.
pub fn generator_movie(g: Generator) -> Result<Movie, MovieError> {
    g.check()?;
    let n = g.min_components();
    let mut m = match g {
        Generator::Sphere(i) => sphere(i)?,
        Generator::KinkSphere(i) => kink_sphere(i)?,
        Generator::PositivePlane(i) => projective_plane(i, true)?,
        Generator::NegativePlane(i) => projective_plane(i, false)?,
        Generator::Strand { p, i, j } => build_movie(&HopfChain { p: p % 4, labels: [i, j], bead: None }, chain_options(p % 4))?,
        Generator::Necklace { p, i, j, bead } => {
            build_movie(&HopfChain { p: p % 4, labels: [i, j], bead: Some(bead) }, chain_options(p % 4))?
        }
    };
    m.n = n;
    Ok(m)
}

/// Every generator shape on its lowest labels.
pub fn bundled_generators() -> Vec<Generator> {
    let mut out = vec![
        Generator::Sphere(1),
        Generator::KinkSphere(1),
        Generator::PositivePlane(1),
        Generator::NegativePlane(1),
    ];
    out.extend((0..4).map(|p| Generator::Strand { p, i: 1, j: 2 }));
    out.push(Generator::Necklace { p: 0, i: 1, j: 2, bead: 3 });
    out
}

/// Places `b` beside `a` and after it in time: the split union.
pub fn split_union(a: &Movie, b: &Movie) -> Result<Movie, MovieError> {
    if a.is_periodic() || b.is_periodic() {
        return Err(MovieError::Consistency("split unions are formed from linear movies".into()));
    }
    let extent = |m: &Movie| {
        m.stills
            .iter()
            .flat_map(|s| s.circles.iter().flat_map(|c| c.points.iter().map(|p| p[0])))
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), x| (lo.min(x), hi.max(x)))
    };
    let (_, a_hi) = extent(a);
    let (b_lo, _) = extent(b);
    let shift_x = if a_hi.is_finite() && b_lo.is_finite() { a_hi - b_lo + 1.0 } else { 0.0 };
    let max_id = a
        .stills
        .iter()
        .flat_map(|s| s.circles.iter().map(|c| c.id).chain(s.crossings.iter().map(|x| x.id)))
        .max()
        .unwrap_or(0);
    let mut b2 = b.shifted([shift_x, 0.0], max_id);
    let t_end = a.stills.last().map_or(0.0, |s| s.time);
    let t_start = b2.stills.first().map_or(0.0, |s| s.time);
    for s in &mut b2.stills {
        s.time += t_end - t_start + 1.0;
    }
    let mut stills = a.stills.clone();
    let mut events = a.events.clone();
    events.push(Event::Isotopy);
    stills.extend(b2.stills);
    events.extend(b2.events);
    Ok(Movie { n: a.n.max(b.n), period: None, stills, events })
}
