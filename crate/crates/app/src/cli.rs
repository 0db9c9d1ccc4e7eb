//! The `tanglekit` command line.
//!
//! Exit codes: 0 success, 1 i/o or check failure, 2 syntax error (including
//! bad usage), 3 non-rational input, 4 any other domain error.

use std::ffi::OsString;
use std::io::{BufRead, Write};
use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use rand::Rng;

use tanglekit::coloring::{self, ColoredTangle};
use tanglekit::dance::{self, DanceState, Move};
use tanglekit::tangle::{self, CanonicalTangle};
use tanglekit::{parse_fraction, parse_tangle_arg, Error, Fraction, TangleExpr};

use crate::store::SessionStore;

#[derive(Debug, Parser)]
#[command(name = "tanglekit", version, about = "Rational tangle calculator")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the fraction of an expression.
    Fraction {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Print the canonical continued fraction form.
    Canonical {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Decide whether two rational tangles are isotopic.
    Equiv {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Print the standard form vector.
    Vector {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Integral coloring of the standard form.
    Color {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        /// Colors of the top and bottom arcs of [0], as `a,b`.
        #[arg(long, value_parser = parse_pair, default_value = "1,0")]
        start: (i64, i64),
        /// Also reduce the numerator closure modulo this number.
        #[arg(long = "mod")]
        modulus: Option<u64>,
    },
    /// Determinant of the numerator closure.
    Det {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Distinct-colors check on every rational knot and link up to a
    /// crossing number.
    Harary {
        #[arg(long)]
        max_crossings: usize,
        #[arg(long)]
        json: bool,
    },
    /// The square dance game.
    Dance {
        #[command(subcommand)]
        command: DanceCommand,
    },
    /// Run the HTTP service.
    Serve {
        #[arg(long, env = "TANGLEKIT_PORT", default_value_t = 8080)]
        port: u16,
        /// Append-only session journal, replayed at startup.
        #[arg(long)]
        state: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum DanceCommand {
    /// Print a move word reaching the target from [0].
    Solve {
        #[arg(allow_hyphen_values = true)]
        target: String,
    },
    /// Play interactively: enter T, A, hint or quit.
    Play {
        #[arg(long, allow_hyphen_values = true)]
        target: Option<String>,
    },
}

fn parse_pair(s: &str) -> Result<(i64, i64), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| "expected two integers as a,b".to_string())?;
    let int = |x: &str| x.trim().parse::<i64>().map_err(|e| e.to_string());
    Ok((int(a)?, int(b)?))
}

#[derive(Debug)]
enum Failure {
    Engine(Error),
    Io(std::io::Error),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Engine(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<crate::store::StoreError> for Failure {
    fn from(e: crate::store::StoreError) -> Self {
        Failure::Check(e.to_string())
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Syntax(_) => 2,
        Error::NotRational => 3,
        _ => 4,
    }
}

/// Runs the command line on `args` (program name first). Interactive input
/// comes from `input`.
pub fn run<I, T>(args: I, input: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli.command, input, out) {
        Ok(code) => code,
        Err(Failure::Engine(e)) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
        Err(Failure::Check(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
    }
}

fn expr(text: &str) -> Result<TangleExpr, Error> {
    parse_tangle_arg(text)
}

/// Standard-form coloring; `[inf]` has no vector to color.
fn colored(t: &TangleExpr, top: i64, bottom: i64) -> Result<ColoredTangle, Error> {
    let s = tangle::to_standard_form(t)?;
    coloring::color_tangle(s.vector(), top, bottom)
}

fn join<T: ToString>(items: &[T]) -> String {
    items
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn dispatch(
    command: Command,
    input: &mut dyn BufRead,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    match command {
        Command::Fraction { expr: e } => {
            writeln!(out, "{}", tangle::fraction_of(&expr(&e)?)?)?;
        }
        Command::Canonical { expr: e } => {
            writeln!(out, "{}", tangle::canonical_form(&expr(&e)?)?)?;
        }
        Command::Equiv { a, b } => {
            let same = tangle::equivalent(&expr(&a)?, &expr(&b)?)?;
            writeln!(
                out,
                "{}",
                if same { "equivalent" } else { "not equivalent" }
            )?;
        }
        Command::Vector { expr: e } => {
            writeln!(out, "{}", tangle::to_standard_form(&expr(&e)?)?.vector())?;
        }
        Command::Color {
            expr: e,
            start,
            modulus,
        } => {
            let c = colored(&expr(&e)?, start.0, start.1)?;
            let m = &c.matrix;
            writeln!(out, "vector {}", c.vector)?;
            writeln!(out, "matrix [[{},{}],[{},{}]]", m.nw, m.ne, m.sw, m.se)?;
            match coloring::f_of_matrix(m) {
                Ok(f) => writeln!(out, "f {f}")?,
                Err(_) => writeln!(out, "f undefined")?,
            }
            writeln!(out, "arcs {}", join(&c.arc_colors))?;
            if let Some(p) = modulus {
                let residues = coloring::closure_coloring_mod(&c, &p.into())?;
                writeln!(out, "closure mod {p}: {}", join(&residues))?;
            }
        }
        Command::Det { expr: e } => {
            let t = expr(&e)?;
            match tangle::canonical_form(&t)? {
                CanonicalTangle::Infinity => writeln!(out, "1")?,
                CanonicalTangle::Vector(_) => writeln!(
                    out,
                    "{}",
                    coloring::closure_determinant(&colored(&t, 1, 0)?)?
                )?,
            }
        }
        Command::Harary {
            max_crossings,
            json,
        } => {
            let instances = coloring::harary_check(max_crossings);
            let failures = instances.iter().filter(|i| !i.distinct).count();
            if json {
                let text = serde_json::to_string_pretty(&instances).expect("instances serialize");
                writeln!(out, "{text}")?;
            } else {
                for i in instances.iter().filter(|i| i.mod_colors.is_some()) {
                    let verdict = if i.distinct { "distinct" } else { "REPEATED" };
                    writeln!(out, "{} det {} {verdict}", i.vector, i.det)?;
                }
                let prime = instances.iter().filter(|i| i.mod_colors.is_some()).count();
                writeln!(
                    out,
                    "{} vectors, {prime} with prime determinant, {failures} failures",
                    instances.len()
                )?;
            }
            if failures > 0 {
                return Ok(1);
            }
        }
        Command::Dance {
            command: DanceCommand::Solve { target },
        } => {
            let target = parse_fraction(&target)?;
            writeln!(out, "{}", dance::solve_target(&target))?;
        }
        Command::Dance {
            command: DanceCommand::Play { target },
        } => {
            let target = match target {
                Some(t) => parse_fraction(&t)?,
                None => random_target(),
            };
            play(target, input, out)?;
        }
        Command::Serve { port, state } => {
            let store = match &state {
                Some(path) => SessionStore::open(path)?,
                None => SessionStore::in_memory(),
            };
            let runtime = tokio::runtime::Runtime::new()?;
            runtime.block_on(async {
                let addr = SocketAddr::from(([0, 0, 0, 0], port));
                let listener = tokio::net::TcpListener::bind(addr).await?;
                writeln!(out, "listening on {}", listener.local_addr()?)?;
                out.flush()?;
                crate::http::serve(listener, Arc::new(store)).await
            })?;
        }
    }
    Ok(0)
}

fn random_target() -> Fraction {
    let mut rng = rand::rng();
    let q: i64 = rng.random_range(1..=9);
    let p: i64 = rng.random_range(-9..=9);
    Fraction::new(p, q).expect("q is positive")
}

fn play(target: Fraction, input: &mut dyn BufRead, out: &mut dyn Write) -> Result<(), Failure> {
    let mut state = DanceState::new(target);
    writeln!(
        out,
        "target {}  current {}",
        state.target(),
        state.current()
    )?;
    let mut line = String::new();
    while !state.is_solved() {
        write!(out, "> ")?;
        out.flush()?;
        line.clear();
        if input.read_line(&mut line)? == 0 {
            writeln!(out)?;
            return Ok(());
        }
        match line.trim() {
            "" => continue,
            "quit" | "q" => return Ok(()),
            "hint" | "h" => writeln!(out, "hint: {}", dance::hint(&state)?)?,
            other => match other.parse::<Move>() {
                Ok(m) => {
                    state = dance::apply_move(&state, m);
                    writeln!(out, "current {}", state.current())?;
                }
                Err(_) => writeln!(out, "enter T, A, hint or quit")?,
            },
        }
    }
    writeln!(
        out,
        "solved in {} moves: {}",
        state.history().len(),
        state.history()
    )?;
    Ok(())
}
