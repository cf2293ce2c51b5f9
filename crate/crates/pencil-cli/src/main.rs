//! `pencil-lab`: analyze polynomial pencils f − c·w over the rationals,
//! run the self-verification suites and inspect the golden corpus.
//!
//! Exit codes: 0 success, 1 failed verification, 2 input or parse error,
//! 3 precondition violation, 4 internal error.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use pencil_lab::corpus::golden_corpus;
use pencil_lab::io::{analyze, read_polynomial, unparse, AnalyzeOptions, SetKind};
use pencil_lab::verify::{parse_suites, run_suite, SuiteSizes};
use pencil_lab::Error;

#[derive(Parser)]
#[command(name = "pencil-lab", version, about = "Exact invariants of plane polynomial pencils f - c*w over Q")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Switch {
    On,
    Off,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the sets (and optionally the ranks) of a pencil.
    Analyze {
        /// The polynomial f: an expression, a JSON polynomial object, or @path.
        #[arg(long = "f", value_name = "EXPR|@FILE")]
        f: String,
        /// The polynomial w of a general pencil f - c*w (default: w = 1).
        #[arg(long = "w", value_name = "EXPR|@FILE")]
        w: Option<String>,
        /// Variable names, comma separated.
        #[arg(long, default_value = "X,Y")]
        vars: String,
        /// `all` or a comma-separated list of singset, multset, redset, primset, uniset, composite.
        #[arg(long, default_value = "all")]
        sets: String,
        /// Compute the ranks and the defect set (special pencils only).
        #[arg(long, value_enum, default_value = "off")]
        rank: Switch,
        /// Seed for randomized sampling.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Write the report to a file instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Add wall-clock timings to the report (nondeterministic).
        #[arg(long)]
        timing: bool,
    },
    /// Run a self-verification suite: paper-examples, identities, oracles or all.
    Verify {
        suite: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// List the golden corpus, or dump one item (or all) as JSON.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
}

#[derive(Subcommand)]
enum CorpusAction {
    /// One line per item: id and expected facts.
    List,
    /// Items as JSON.
    Dump {
        /// Only the item with this id.
        #[arg(long)]
        id: Option<String>,
    },
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } => 2,
            Error::CharacteristicTooSmall { .. }
            | Error::NotSquarefree
            | Error::Reducible
            | Error::DivisionByZero
            | Error::CommonFactor
            | Error::Precondition(_)
            | Error::Infinite
            | Error::Degenerate => 3,
            Error::FieldMismatch | Error::ShearInstability(_) | Error::DepthExceeded(_) | Error::Internal(_) => 4,
        };
        Failure { code, message: e.to_string() }
    }
}

fn input_error(message: String) -> Failure {
    Failure { code: 2, message }
}

fn read_arg(arg: &str) -> Result<String, Failure> {
    match arg.strip_prefix('@') {
        Some(path) => fs::read_to_string(path).map_err(|e| input_error(format!("cannot read {path}: {e}"))),
        None => Ok(arg.to_string()),
    }
}

fn parse_vars(s: &str) -> Result<[String; 2], Failure> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let ok = |v: &str| v.chars().next().is_some_and(|c| c.is_ascii_alphabetic()) && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
    match parts.as_slice() {
        [a, b] if ok(a) && ok(b) && a != b => Ok([a.to_string(), b.to_string()]),
        _ => Err(input_error(format!("--vars expects two distinct identifiers, got '{s}'"))),
    }
}

#[allow(clippy::too_many_arguments)]
fn run_analyze(
    f: &str,
    w: Option<&str>,
    vars: &str,
    sets: &str,
    rank: Switch,
    seed: u64,
    format: Format,
    timing: bool,
) -> Result<String, Failure> {
    let mut vars = parse_vars(vars)?;
    let names = [vars[0].as_str(), vars[1].as_str()];
    let with_input = |which: &str, e: Error| match e {
        Error::Parse { offset, msg } => input_error(format!("--{which}: parse error at byte {offset}: {msg}")),
        e => e.into(),
    };
    let (fp, fvars) = read_polynomial(&read_arg(f)?, names).map_err(|e| with_input("f", e))?;
    let wp = match w {
        Some(w) => Some(read_polynomial(&read_arg(w)?, names).map_err(|e| with_input("w", e))?.0),
        None => None,
    };
    if let Some(v) = fvars {
        vars = v;
    }
    let sets = SetKind::parse_list(sets).map_err(|e| input_error(format!("--sets: {e}")))?;
    let opts = AnalyzeOptions { vars, sets, rank: rank == Switch::On, seed, timing };
    let report = analyze(&fp, wp.as_ref(), &opts)?;
    Ok(match format {
        Format::Json => report.to_json() + "\n",
        Format::Text => report.to_text(),
    })
}

fn run_verify(suite: &str, seed: u64, format: Format) -> Result<(String, bool), Failure> {
    let suites = parse_suites(suite).map_err(|e| input_error(e.to_string()))?;
    let lines: Vec<_> = suites.into_iter().flat_map(|s| run_suite(s, seed, &SuiteSizes::default())).collect();
    let all = lines.iter().all(|l| l.passed);
    let out = match format {
        Format::Json => serde_json::to_string_pretty(&json!({ "seed": seed, "passed": all, "checks": lines })).unwrap() + "\n",
        Format::Text => {
            let mut s = String::new();
            for l in &lines {
                s += &format!("{:<4} {:<15} {}  [{}]\n", if l.passed { "ok" } else { "FAIL" }, l.suite, l.label, l.detail);
            }
            let failed = lines.iter().filter(|l| !l.passed).count();
            s += &format!("{} checks, {} failed\n", lines.len(), failed);
            s
        }
    };
    Ok((out, all))
}

fn run_corpus(action: &CorpusAction) -> Result<String, Failure> {
    let xy = ["X", "Y"];
    let items = golden_corpus();
    match action {
        CorpusAction::List => Ok(items
            .iter()
            .map(|it| {
                let facts: Vec<String> = it.facts.iter().map(|f| f.describe()).collect();
                format!("{:<28} {}\n", it.id, facts.join("; "))
            })
            .collect()),
        CorpusAction::Dump { id } => {
            let chosen: Vec<_> = items.iter().filter(|it| id.as_ref().is_none_or(|i| *i == it.id)).collect();
            if chosen.is_empty() {
                return Err(input_error(format!("no corpus item '{}'", id.as_deref().unwrap_or(""))));
            }
            let docs: Vec<_> = chosen
                .iter()
                .map(|it| {
                    json!({
                        "id": it.id,
                        "params": it.params.iter().map(|(k, v)| (k.clone(), json!(v))).collect::<serde_json::Map<_, _>>(),
                        "f": unparse(&it.f, xy),
                        "w": it.w.as_ref().map(|w| unparse(w, xy)),
                        "partner": it.partner.as_ref().map(|g| unparse(g, xy)),
                        "facts": it.facts.iter().map(|f| f.describe()).collect::<Vec<_>>(),
                    })
                })
                .collect();
            Ok(serde_json::to_string_pretty(&docs).unwrap() + "\n")
        }
    }
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| input_error(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Analyze { f, w, vars, sets, rank, seed, format, out, timing } => {
            run_analyze(f, w.as_deref(), vars, sets, *rank, *seed, *format, *timing).and_then(|t| emit(&t, out.as_ref()).map(|_| true))
        }
        Command::Verify { suite, seed, format } => {
            run_verify(suite, *seed, *format).and_then(|(t, ok)| emit(&t, None).map(|_| ok))
        }
        Command::Corpus { action } => run_corpus(action).and_then(|t| emit(&t, None).map(|_| true)),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure { code, message }) => {
            eprintln!("pencil-lab: {message}");
            ExitCode::from(code)
        }
    }
}
