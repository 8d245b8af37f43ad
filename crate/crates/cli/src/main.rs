//! `ulb`: bordism classes of surface-links from expressions and movies.

mod input;
mod report;

use std::io::Write;
use std::process::ExitCode;
use std::thread;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use ulbordism::algebra::group_shape;
use ulbordism::expr::{decode_class, eval_invariants, normalize};
use ulbordism::movie::{bundled_generators, generator_movie, movie_invariants, LinkingOptions, PushOffOptions, DEFAULT_SEED};
use ulbordism::InvariantTuple;

use input::{load, Failure, Input, Parsed, EXIT_CONSISTENCY, EXIT_INPUT, EXIT_NOT_BORDANT, EXIT_OK};

/// Like `println!`, but a closed pipe ends the process quietly.
macro_rules! out {
    ($($arg:tt)*) => {
        if let Err(e) = writeln!(std::io::stdout().lock(), $($arg)*) {
            if e.kind() == std::io::ErrorKind::BrokenPipe {
                std::process::exit(0);
            }
            panic!("writing to stdout: {e}");
        }
    };
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "ulb", version, about = "Unoriented bordism classes of surface-links in 4-space")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "human", global = true)]
    format: Format,

    /// Seed for the random projection used by linking numbers.
    #[arg(long, env = "BORDISM_SEED", global = true)]
    seed: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Full invariant tuple with the derived d and t tables.
    Invariants {
        /// Files or inline expressions; movie files are recognized by header.
        #[arg(required = true)]
        inputs: Vec<String>,
    },
    /// Canonical split-union form.
    Normalize {
        #[arg(required = true)]
        inputs: Vec<String>,
    },
    /// Exit 0 iff the two inputs are bordant, 1 otherwise.
    Bordant { left: String, right: String },
    /// Summands of the unoriented and oriented bordism groups.
    GroupInfo { n: usize },
    /// Cross-checks every bundled movie against its expression.
    Selfcheck,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let seed = cli.seed.unwrap_or(DEFAULT_SEED);
    let status = match cli.command {
        Command::Invariants { inputs } => invariants(&inputs, cli.format, seed),
        Command::Normalize { inputs } => normal_forms(&inputs, cli.format, seed),
        Command::Bordant { left, right } => bordant(&left, &right, cli.format, seed),
        Command::GroupInfo { n } => group_info(n, cli.format),
        Command::Selfcheck => selfcheck(cli.format, seed),
    };
    ExitCode::from(status)
}

fn report_failure(f: &Failure) -> u8 {
    eprintln!("error: {f}");
    f.status
}

/// Loads and evaluates every input, in parallel, keeping argument order.
fn evaluate_all(args: &[String], seed: u64) -> Vec<Result<(Input, InvariantTuple), Failure>> {
    thread::scope(|scope| {
        let handles: Vec<_> = args
            .iter()
            .map(|arg| {
                scope.spawn(move || {
                    let input = load(arg)?;
                    let a = input.invariants(seed)?;
                    Ok((input, a))
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("evaluation thread panicked")).collect()
    })
}

fn invariants(args: &[String], format: Format, seed: u64) -> u8 {
    let mut status = EXIT_OK;
    let mut records = Vec::new();
    for result in evaluate_all(args, seed) {
        match result {
            Ok((input, a)) => match format {
                Format::Human => print!("{}", report::invariants_human(&input.source, input.kind(), &a)),
                Format::Json => records.push(report::invariants_json(&input.source, input.kind(), &a)),
            },
            Err(f) => status = status.max(report_failure(&f)),
        }
    }
    if format == Format::Json {
        out!("{}", serde_json::to_string_pretty(&records).expect("json"));
    }
    status
}

fn normal_forms(args: &[String], format: Format, seed: u64) -> u8 {
    let mut status = EXIT_OK;
    let mut records = Vec::new();
    for result in evaluate_all(args, seed) {
        match result {
            Ok((input, a)) => {
                let nf = match &input.parsed {
                    Parsed::Expression(x) => normalize(x),
                    Parsed::Movie(_) => decode_class(&a),
                };
                match format {
                    Format::Human => out!("{nf}"),
                    Format::Json => records.push(json!({ "input": input.source, "normal_form": nf.to_string(), "invariants": a })),
                }
            }
            Err(f) => status = status.max(report_failure(&f)),
        }
    }
    if format == Format::Json {
        out!("{}", serde_json::to_string_pretty(&records).expect("json"));
    }
    status
}

fn bordant(left: &str, right: &str, format: Format, seed: u64) -> u8 {
    let mut results = evaluate_all(&[left.to_string(), right.to_string()], seed).into_iter();
    let (a, b) = match (results.next().expect("left"), results.next().expect("right")) {
        (Ok((_, a)), Ok((_, b))) => (a, b),
        (Err(f), _) | (_, Err(f)) => return report_failure(&f),
    };
    if a.n() != b.n() {
        eprintln!("error: component counts differ: {} vs {}", a.n(), b.n());
        return EXIT_INPUT;
    }
    let equal = a == b;
    match format {
        Format::Human => out!("{}", if equal { "bordant" } else { "not bordant" }),
        Format::Json => out!("{}", json!({ "bordant": equal, "left": a, "right": b })),
    }
    if equal {
        EXIT_OK
    } else {
        EXIT_NOT_BORDANT
    }
}

fn group_info(n: usize, format: Format) -> u8 {
    let g = match group_shape(n) {
        Ok(g) => g,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT;
        }
    };
    match format {
        Format::Human => print!("{}", report::group_human(&g)),
        Format::Json => out!("{}", report::group_json(&g)),
    }
    EXIT_OK
}

fn selfcheck(format: Format, seed: u64) -> u8 {
    let opts = LinkingOptions { push_off: PushOffOptions::default(), seed };
    let mut status = EXIT_OK;
    let mut records = Vec::new();
    for g in bundled_generators() {
        let outcome = generator_movie(g).and_then(|m| {
            let expected = eval_invariants(&g.expression(m.n));
            movie_invariants(&m, opts).map(|measured| (expected, measured))
        });
        let (ok, detail) = match &outcome {
            Ok((expected, measured)) if expected == measured => (true, measured.to_string()),
            Ok((expected, measured)) => (false, format!("movie {measured} but expression {expected}")),
            Err(e) => (false, e.to_string()),
        };
        if !ok {
            status = EXIT_CONSISTENCY;
        }
        match format {
            Format::Human => out!("{} {g}: {detail}", if ok { "pass" } else { "FAIL" }),
            Format::Json => records.push(json!({ "generator": g.to_string(), "ok": ok, "detail": detail })),
        }
    }
    if format == Format::Json {
        out!("{}", serde_json::to_string_pretty(&records).expect("json"));
    }
    status
}
