use std::fmt;
use std::path::Path;

use ulbordism::expr::{eval_invariants, parse_expr};
use ulbordism::movie::{movie_invariants, parse_movie, LinkingOptions, Movie, MovieError, PushOffOptions};
use ulbordism::{InvariantTuple, LinkExpression};

/// Exit statuses.
pub const EXIT_OK: u8 = 0;
pub const EXIT_NOT_BORDANT: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_CONSISTENCY: u8 = 3;

#[derive(Debug)]
pub struct Failure {
    pub source: String,
    pub message: String,
    pub status: u8,
}

impl Failure {
    pub fn input(source: &str, message: impl Into<String>) -> Self {
        Failure { source: source.to_string(), message: message.into(), status: EXIT_INPUT }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.source, self.message)
    }
}

pub enum Parsed {
    Expression(LinkExpression),
    Movie(Box<Movie>),
}

pub struct Input {
    /// File path, or the inline text itself.
    pub source: String,
    pub parsed: Parsed,
}

impl Input {
    pub fn kind(&self) -> &'static str {
        match self.parsed {
            Parsed::Expression(_) => "expression",
            Parsed::Movie(_) => "movie",
        }
    }

    pub fn invariants(&self, seed: u64) -> Result<InvariantTuple, Failure> {
        match &self.parsed {
            Parsed::Expression(x) => Ok(eval_invariants(x)),
            Parsed::Movie(m) => {
                let opts = LinkingOptions { push_off: PushOffOptions::default(), seed };
                movie_invariants(m, opts).map_err(|e| movie_failure(&self.source, e))
            }
        }
    }
}

fn movie_failure(source: &str, e: MovieError) -> Failure {
    let status = match e {
        MovieError::Invalid(_) | MovieError::LabelOutOfRange { .. } | MovieError::UnknownGenerator(_) => EXIT_INPUT,
        _ => EXIT_CONSISTENCY,
    };
    Failure { source: source.to_string(), message: e.to_string(), status }
}

/// Whether text is a movie: its first meaningful line starts with `movie`.
pub fn is_movie(text: &str) -> bool {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .is_some_and(|l| l.split_whitespace().next() == Some("movie"))
}

/// Reads an argument as a file when one exists at that path, otherwise as
/// inline text.
pub fn load(arg: &str) -> Result<Input, Failure> {
    let path = Path::new(arg);
    let text = if path.is_file() {
        std::fs::read_to_string(path).map_err(|e| Failure::input(arg, e.to_string()))?
    } else {
        arg.to_string()
    };
    let parsed = if is_movie(&text) {
        let m = parse_movie(&text).map_err(|e| Failure::input(arg, format!("line {}: {}", e.line, e.message)))?;
        Parsed::Movie(Box::new(m))
    } else {
        let body: String = text.lines().map(|l| l.split('#').next().unwrap_or("")).collect::<Vec<_>>().join("\n");
        let x = parse_expr(body.trim()).map_err(|e| Failure::input(arg, format!("offset {}: {}", e.pos, e.message)))?;
        Parsed::Expression(x)
    };
    Ok(Input { source: arg.to_string(), parsed })
}
