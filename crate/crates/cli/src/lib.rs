//! The `pomset-kleene` command line.
//!
//! Exit codes: 0 success, 1 bad input, 2 state cap exceeded, 3 automaton
//! not closed or not fork-acyclic.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::fmt::Write;
use std::path::PathBuf;

use clap::builder::TypedValueParser;
use clap::{Parser, Subcommand, ValueEnum};
use pomset_kleene::automaton::{membership, PomsetAutomaton};
use pomset_kleene::derivatives::{expr_to_pa, expr_to_pa_over};
use pomset_kleene::expr::{self, Expr};
use pomset_kleene::extraction::pa_to_expr;
use pomset_kleene::language::enumerate_language;
use pomset_kleene::pomset::Pomset;
use pomset_kleene::Error;
use serde_json::json;

#[derive(Debug, Parser)]
#[command(
    name = "pomset-kleene",
    version,
    about = "Series-rational expressions and pomset automata"
)]
pub struct Cli {
    /// Largest pomset size considered by enumeration
    #[arg(long, global = true, default_value_t = 6)]
    pub max_size: usize,

    /// Largest number of automaton states to materialize
    #[arg(long, global = true, default_value_t = pomset_kleene::automaton::DEFAULT_STATE_CAP,
          value_parser = clap::value_parser!(u64).range(1..).map(|n| n as usize))]
    pub state_cap: usize,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the syntax tree of an expression
    Parse { expr: String },
    /// Print the normal form modulo the additive congruence
    Normalize { expr: String },
    /// Whether the expression accepts the empty pomset
    Nullable { expr: String },
    /// Whether the expression denotes the empty language
    Empty { expr: String },
    /// List the pomsets of the language up to --max-size, one per line
    Enum { expr: String },
    /// Decide membership of a pomset via the compiled automaton
    Member { expr: String, pomset: String },
    /// Compile an expression to an automaton (JSON, or DOT with --format dot)
    Compile { expr: String },
    /// Turn an automaton state back into an expression
    Extract { automaton: PathBuf, state: String },
    /// Compare two languages on pomsets up to a size bound
    Equiv {
        left: String,
        right: String,
        /// Size bound; defaults to --max-size
        #[arg(long)]
        bound: Option<usize>,
    },
    /// Check an automaton file: totality, closure, fork-acyclicity
    CheckPa { automaton: PathBuf },
    /// Render an automaton file in Graphviz syntax
    Dot { automaton: PathBuf },
}

/// What a command printed and how it ended.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::CapExceeded { .. } => 2,
            Error::NotForkAcyclic { .. } | Error::NotClosed(_) => 3,
            _ => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn input(message: String) -> Failure {
    Failure { code: 1, message }
}

/// Runs the command line given by `args` (program name first).
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Output {
                    stdout: text,
                    stderr: String::new(),
                    code,
                }
            } else {
                Output {
                    stdout: String::new(),
                    stderr: text,
                    code,
                }
            };
        }
    };
    match execute(&cli) {
        Ok(stdout) => Output {
            stdout,
            stderr: String::new(),
            code: 0,
        },
        Err(f) => Output {
            stdout: String::new(),
            stderr: format!("error: {}\n", f.message),
            code: f.code,
        },
    }
}

fn parse_expr(text: &str) -> Result<Expr, Failure> {
    Ok(expr::parse(text)?)
}

fn parse_pomset(text: &str) -> Result<Pomset, Failure> {
    Ok(text.parse::<Pomset>()?)
}

fn load(path: &PathBuf) -> Result<PomsetAutomaton, Failure> {
    let text =
        std::fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))?;
    Ok(PomsetAutomaton::from_json(&text)?)
}

fn line(s: impl std::fmt::Display) -> String {
    format!("{s}\n")
}

fn execute(cli: &Cli) -> Result<String, Failure> {
    match &cli.command {
        Command::Parse { expr } => Ok(line(format!("{:?}", parse_expr(expr)?))),
        Command::Normalize { expr } => Ok(line(parse_expr(expr)?.normalize())),
        Command::Nullable { expr } => Ok(line(parse_expr(expr)?.nullable())),
        Command::Empty { expr } => Ok(line(parse_expr(expr)?.is_empty())),
        Command::Enum { expr } => {
            let lang = enumerate_language(&parse_expr(expr)?, cli.max_size);
            Ok(lang.sorted_strings().iter().map(line).collect())
        }
        Command::Member { expr, pomset } => {
            let e = parse_expr(expr)?;
            let u = parse_pomset(pomset)?;
            let compiled = expr_to_pa_over(&e, u.labels(), cli.state_cap)?;
            Ok(line(membership(&compiled.pa, &compiled.start, &u)))
        }
        Command::Compile { expr } => {
            let compiled = expr_to_pa(&parse_expr(expr)?, cli.state_cap)?;
            Ok(render(&compiled.pa, cli.format))
        }
        Command::Extract { automaton, state } => {
            let pa = load(automaton)?;
            let q = pa.state_by_name(state)?;
            Ok(line(pa_to_expr(&pa, q)?))
        }
        Command::Equiv { left, right, bound } => {
            let n = bound.unwrap_or(cli.max_size);
            let (l, r) = (parse_expr(left)?, parse_expr(right)?);
            let (ll, rl) = (enumerate_language(&l, n), enumerate_language(&r, n));
            Ok(match ll.first_difference(&rl) {
                None => line(format!("equivalent up to {n}")),
                Some(u) => {
                    let side = if ll.contains(u) { "left" } else { "right" };
                    line(format!("counterexample {u} (only in {side})"))
                }
            })
        }
        Command::CheckPa { automaton } => check_pa(&load(automaton)?, cli.format),
        Command::Dot { automaton } => Ok(load(automaton)?.to_dot()),
    }
}

fn render(pa: &PomsetAutomaton, format: Format) -> String {
    match format {
        Format::Dot => pa.to_dot(),
        Format::Text | Format::Json => line(pa.to_json()),
    }
}

fn check_pa(pa: &PomsetAutomaton, format: Format) -> Result<String, Failure> {
    // Totality and well-formedness were checked on load.
    let all: BTreeSet<usize> = pa.states().collect();
    if !pa.is_closed(&all) {
        return Err(Error::NotClosed("the full state set".into()).into());
    }
    let order = pa.fork_order()?;
    let pairs: Vec<(String, String)> = order
        .pairs()
        .into_iter()
        .map(|(lo, hi)| (pa.name(lo).to_string(), pa.name(hi).to_string()))
        .collect();
    if format == Format::Json {
        let report = json!({
            "states": pa.num_states(),
            "total": true,
            "closed": true,
            "fork_acyclic": true,
            "fork_order": pairs.iter().map(|(lo, hi)| [lo, hi]).collect::<Vec<_>>(),
        });
        return Ok(line(
            serde_json::to_string_pretty(&report).expect("JSON values always serialize"),
        ));
    }
    let mut out = String::new();
    let _ = writeln!(out, "states: {}", pa.num_states());
    let _ = writeln!(out, "total: yes");
    let _ = writeln!(out, "closed: yes");
    let _ = writeln!(out, "fork-acyclic: yes");
    let _ = writeln!(out, "fork order:");
    for (lo, hi) in &pairs {
        let _ = writeln!(out, "  {lo} < {hi}");
    }
    Ok(out)
}
