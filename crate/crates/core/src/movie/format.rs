//! Versioned text format for movies.
//!
//! ```text
//! movie 1
//! n <components>
//! stills <count>
//! [period <time>]
//! still <index> time <t>
//! circle <id> label <l> points <x> <y> <x> <y> ...
//! crossing <id> over <circle> <segment> under <circle> <segment> at <x> <y>
//! event <kind> ...
//! still <index> time <t>
//! ...
//! ```
//!
//! Each still except the last of a linear movie is followed by exactly one
//! event line. Event lines:
//!
//! ```text
//! event isotopy
//! event birth circle <id>
//! event death circle <id>
//! event saddle from <ids...> to <ids...>
//! event r1-create crossing <id> circle <id> sign <+1|-1>
//! event r1-annihilate crossing <id> circle <id> sign <+1|-1>
//! event r2-create crossings <a> <b> over <circle> under <circle>
//! event r2-annihilate crossings <a> <b> over <circle> under <circle>
//! event r3 top-middle <id> top-bottom <id> middle-bottom <id>
//! ```
//!
//! Blank lines and text after `#` are ignored. Numbers print in shortest
//! round-trip form, so `print(parse(print(m))) == print(m)` bit for bit.

use std::fmt::Write;
use std::str::FromStr;

use thiserror::Error;

use super::model::{ArcRef, Circle, Crossing, Event, Movie, Still};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct MovieParseError {
    pub line: usize,
    pub message: String,
}

struct Cursor<'a> {
    line: usize,
    words: std::iter::Peekable<std::str::SplitWhitespace<'a>>,
}

impl<'a> Cursor<'a> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T, MovieParseError> {
        Err(MovieParseError { line: self.line, message: message.into() })
    }

    fn word(&mut self, what: &str) -> Result<&'a str, MovieParseError> {
        match self.words.next() {
            Some(w) => Ok(w),
            None => self.err(format!("expected {what}")),
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<(), MovieParseError> {
        let w = self.word(kw)?;
        if w == kw {
            Ok(())
        } else {
            self.err(format!("expected `{kw}`, found `{w}`"))
        }
    }

    fn num<T: FromStr>(&mut self, what: &str) -> Result<T, MovieParseError> {
        let w = self.word(what)?;
        match w.parse() {
            Ok(v) => Ok(v),
            Err(_) => self.err(format!("invalid {what} `{w}`")),
        }
    }

    fn real(&mut self, what: &str) -> Result<f64, MovieParseError> {
        let v: f64 = self.num(what)?;
        if v.is_finite() {
            Ok(v)
        } else {
            self.err(format!("non-finite {what}"))
        }
    }

    fn ids_until(&mut self, stop: Option<&str>) -> Result<Vec<u32>, MovieParseError> {
        let mut out = Vec::new();
        while let Some(w) = self.words.peek() {
            if Some(*w) == stop {
                break;
            }
            out.push(self.num("id")?);
        }
        Ok(out)
    }

    fn finish(&mut self) -> Result<(), MovieParseError> {
        match self.words.next() {
            None => Ok(()),
            Some(w) => self.err(format!("unexpected trailing `{w}`")),
        }
    }
}

fn lines(text: &str) -> impl Iterator<Item = Cursor<'_>> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let mut words = body.split_whitespace().peekable();
        words.peek()?;
        Some(Cursor { line: i + 1, words })
    })
}

fn parse_sign(c: &mut Cursor) -> Result<i8, MovieParseError> {
    match c.word("sign")? {
        "+1" | "1" => Ok(1),
        "-1" => Ok(-1),
        w => c.err(format!("branch sign must be +1 or -1, found `{w}`")),
    }
}

fn parse_event(c: &mut Cursor) -> Result<Event, MovieParseError> {
    let kind = c.word("event kind")?;
    let ev = match kind {
        "isotopy" => Event::Isotopy,
        "birth" | "death" => {
            c.keyword("circle")?;
            let circle = c.num("circle id")?;
            if kind == "birth" {
                Event::Birth { circle }
            } else {
                Event::Death { circle }
            }
        }
        "saddle" => {
            c.keyword("from")?;
            let from = c.ids_until(Some("to"))?;
            c.keyword("to")?;
            let to = c.ids_until(None)?;
            if from.is_empty() || to.is_empty() {
                return c.err("saddle needs circles on both sides");
            }
            Event::Saddle { from, to }
        }
        "r1-create" | "r1-annihilate" => {
            c.keyword("crossing")?;
            let crossing = c.num("crossing id")?;
            c.keyword("circle")?;
            let circle = c.num("circle id")?;
            c.keyword("sign")?;
            let sign = parse_sign(c)?;
            if kind == "r1-create" {
                Event::R1Create { crossing, circle, sign }
            } else {
                Event::R1Annihilate { crossing, circle, sign }
            }
        }
        "r2-create" | "r2-annihilate" => {
            c.keyword("crossings")?;
            let crossings = [c.num("crossing id")?, c.num("crossing id")?];
            c.keyword("over")?;
            let over = c.num("circle id")?;
            c.keyword("under")?;
            let under = c.num("circle id")?;
            if kind == "r2-create" {
                Event::R2Create { crossings, over, under }
            } else {
                Event::R2Annihilate { crossings, over, under }
            }
        }
        "r3" => {
            c.keyword("top-middle")?;
            let top_middle = c.num("crossing id")?;
            c.keyword("top-bottom")?;
            let top_bottom = c.num("crossing id")?;
            c.keyword("middle-bottom")?;
            let middle_bottom = c.num("crossing id")?;
            Event::R3 { top_middle, top_bottom, middle_bottom }
        }
        other => return c.err(format!("unknown event kind `{other}`")),
    };
    c.finish()?;
    Ok(ev)
}

pub fn parse_movie(text: &str) -> Result<Movie, MovieParseError> {
    let mut it = lines(text);
    let mut header = |kw: &str| -> Result<Cursor, MovieParseError> {
        match it.next() {
            Some(mut c) => {
                c.keyword(kw)?;
                Ok(c)
            }
            None => Err(MovieParseError { line: 0, message: format!("missing `{kw}` header") }),
        }
    };
    let mut c = header("movie")?;
    let version: u32 = c.num("version")?;
    if version != FORMAT_VERSION {
        return c.err(format!("unsupported movie format version {version}"));
    }
    c.finish()?;
    let mut c = header("n")?;
    let n: usize = c.num("component count")?;
    if n == 0 {
        return c.err("component count must be at least 1");
    }
    c.finish()?;
    let mut c = header("stills")?;
    let count: usize = c.num("still count")?;
    c.finish()?;

    let mut period = None;
    let mut stills: Vec<Still> = Vec::new();
    let mut events: Vec<Event> = Vec::new();
    let mut last_line = 0;
    for mut c in it {
        last_line = c.line;
        match c.word("record")? {
            "period" if stills.is_empty() && period.is_none() => {
                period = Some(c.real("period")?);
                c.finish()?;
            }
            "still" => {
                let idx: usize = c.num("still index")?;
                if idx != stills.len() {
                    return c.err(format!("expected still {}, found {idx}", stills.len()));
                }
                if !stills.is_empty() && events.len() != stills.len() {
                    return c.err(format!("missing event after still {}", stills.len() - 1));
                }
                c.keyword("time")?;
                let time = c.real("time")?;
                c.finish()?;
                stills.push(Still { time, ..Still::default() });
            }
            "circle" => {
                if stills.is_empty() || events.len() == stills.len() {
                    return c.err("circle must follow a still line");
                }
                let id = c.num("circle id")?;
                c.keyword("label")?;
                let label = c.num("label")?;
                c.keyword("points")?;
                let mut points = Vec::new();
                while c.words.peek().is_some() {
                    points.push([c.real("x")?, c.real("y")?]);
                }
                if points.len() < 3 {
                    return c.err("a circle needs at least 3 vertices");
                }
                stills.last_mut().unwrap().circles.push(Circle { id, label, points });
            }
            "crossing" => {
                if stills.is_empty() || events.len() == stills.len() {
                    return c.err("crossing must follow a still line");
                }
                let id = c.num("crossing id")?;
                c.keyword("over")?;
                let over = ArcRef { circle: c.num("circle id")?, segment: c.num("segment")? };
                c.keyword("under")?;
                let under = ArcRef { circle: c.num("circle id")?, segment: c.num("segment")? };
                c.keyword("at")?;
                let position = [c.real("x")?, c.real("y")?];
                c.finish()?;
                stills.last_mut().unwrap().crossings.push(Crossing { id, over, under, position });
            }
            "event" => {
                if events.len() != stills.len().wrapping_sub(1) || stills.is_empty() {
                    return c.err("event must follow a still");
                }
                events.push(parse_event(&mut c)?);
            }
            other => return c.err(format!("unexpected record `{other}`")),
        }
    }
    let fail = |message: String| Err(MovieParseError { line: last_line, message });
    if stills.len() != count {
        return fail(format!("header declares {count} stills, found {}", stills.len()));
    }
    if stills.is_empty() {
        return fail("a movie needs at least one still".into());
    }
    let expected = if period.is_some() { stills.len() } else { stills.len() - 1 };
    if events.len() != expected {
        return fail(format!("expected {expected} events, found {}", events.len()));
    }
    Ok(Movie { n, period, stills, events })
}

fn write_event(out: &mut String, e: &Event) {
    let ids = |v: &[u32]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
    let sign = |s: i8| if s > 0 { "+1" } else { "-1" };
    let _ = match e {
        Event::Isotopy => writeln!(out, "event isotopy"),
        Event::Birth { circle } => writeln!(out, "event birth circle {circle}"),
        Event::Death { circle } => writeln!(out, "event death circle {circle}"),
        Event::Saddle { from, to } => writeln!(out, "event saddle from {} to {}", ids(from), ids(to)),
        Event::R1Create { crossing, circle, sign: s } => {
            writeln!(out, "event r1-create crossing {crossing} circle {circle} sign {}", sign(*s))
        }
        Event::R1Annihilate { crossing, circle, sign: s } => {
            writeln!(out, "event r1-annihilate crossing {crossing} circle {circle} sign {}", sign(*s))
        }
        Event::R2Create { crossings: [a, b], over, under } => {
            writeln!(out, "event r2-create crossings {a} {b} over {over} under {under}")
        }
        Event::R2Annihilate { crossings: [a, b], over, under } => {
            writeln!(out, "event r2-annihilate crossings {a} {b} over {over} under {under}")
        }
        Event::R3 { top_middle, top_bottom, middle_bottom } => {
            writeln!(out, "event r3 top-middle {top_middle} top-bottom {top_bottom} middle-bottom {middle_bottom}")
        }
    };
}

pub fn print_movie(m: &Movie) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "movie {FORMAT_VERSION}");
    let _ = writeln!(out, "n {}", m.n);
    let _ = writeln!(out, "stills {}", m.stills.len());
    if let Some(p) = m.period {
        let _ = writeln!(out, "period {p}");
    }
    for (i, s) in m.stills.iter().enumerate() {
        let _ = writeln!(out, "still {i} time {}", s.time);
        for c in &s.circles {
            let _ = write!(out, "circle {} label {} points", c.id, c.label);
            for p in &c.points {
                let _ = write!(out, " {} {}", p[0], p[1]);
            }
            out.push('\n');
        }
        for x in &s.crossings {
            let _ = writeln!(
                out,
                "crossing {} over {} {} under {} {} at {} {}",
                x.id, x.over.circle, x.over.segment, x.under.circle, x.under.segment, x.position[0], x.position[1]
            );
        }
        if let Some(e) = m.events.get(i) {
            write_event(&mut out, e);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const SPHERE: &str = "movie 1\nn 1\nstills 3\nstill 0 time 0\nevent birth circle 1\n\
still 1 time 1\ncircle 1 label 1 points 1 0 0 1 -1 0 0 -1\nevent death circle 1\nstill 2 time 2\n";

    #[test]
    fn round_trip_is_exact() {
        let m = parse_movie(SPHERE).unwrap();
        assert_eq!(m.stills.len(), 3);
        assert_eq!(m.events, vec![Event::Birth { circle: 1 }, Event::Death { circle: 1 }]);
        let printed = print_movie(&m);
        assert_eq!(printed, SPHERE);
        assert_eq!(parse_movie(&printed).unwrap(), m);
    }

    #[test]
    fn awkward_floats_survive() {
        let mut m = parse_movie(SPHERE).unwrap();
        m.stills[1].circles[0].points[0] = [0.1 + 0.2, -1e-300];
        m.stills[1].time = std::f64::consts::PI;
        let back = parse_movie(&print_movie(&m)).unwrap();
        assert_eq!(back, m);
        assert_eq!(back.stills[1].circles[0].points[0][0].to_bits(), (0.1f64 + 0.2).to_bits());
    }

    #[test]
    fn errors_carry_line_numbers() {
        let bad = SPHERE.replace("event death circle 1", "event death loop 1");
        let e = parse_movie(&bad).unwrap_err();
        assert_eq!(e.line, 8);
        assert!(parse_movie("movie 2\nn 1\nstills 0\n").is_err());
        let short = SPHERE.replace("stills 3", "stills 4");
        assert!(parse_movie(&short).is_err());
    }

    #[test]
    fn periodic_needs_wrap_event() {
        let text = "movie 1\nn 1\nstills 1\nperiod 1\nstill 0 time 0\ncircle 1 label 1 points 0 0 1 0 0 1\nevent isotopy\n";
        let m = parse_movie(text).unwrap();
        assert_eq!(m.period, Some(1.0));
        assert_eq!(print_movie(&m), text);
        assert!(parse_movie(&text.replace("event isotopy\n", "")).is_err());
    }
}
