//! Command-line front end.
//!
//! Exit codes: 0 success, 1 invalid input, 2 verification failure (a family
//! member missing its bound, a search witness failing its recheck, or a
//! computed report breaking its own invariants). Results go to stdout as
//! JSON or CSV, diagnostics to stderr.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::arith::{FpPoly, PrimeModulus};
use crate::bounds::{lower_bound_multi, lower_bound_single, upper_bound, upper_bound_multi, BreakMultiset};
use crate::cartier::cartier_matrix;
use crate::curve::Curve;
use crate::error::Error;
use crate::families::{family_verify, FamilyId, FamilyName};
use crate::linalg::rank;
use crate::report::{invariants, CSV_HEADER};
use crate::search::{search_minimal, SearchConfig, Strategy, TRIAL_CSV_HEADER};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_VERIFY: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "ascurve", version, about = "Invariants of Artin-Schreier curves y^p - y = f(x) over F_p")]
pub struct Cli {
    /// Read flags from a JSON object: {"command": "...", "flag": value, ...}.
    /// Flags given on the command line are appended after them.
    #[arg(long, global = true, value_name = "FILE")]
    pub json_args: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Genus, a-number, p-rank and bounds of one curve.
    Invariants(CurveArgs),
    /// Lower and upper a-number bounds for a break or multiset of breaks.
    Bounds(BoundsArgs),
    /// Build and verify a member of a known minimal family.
    Family(FamilyArgs),
    /// Randomized or exhaustive search for a curve attaining L(d).
    Search(SearchArgs),
    /// Verify the experiment family for n = 1..=n_max.
    Conjecture(ConjectureArgs),
    /// Dump the Cartier matrix (row-major residues) and its basis.
    Matrix(CurveArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct CurveArgs {
    #[arg(long)]
    pub p: u64,
    /// Right-hand side f, e.g. "x^7 + x^5" or "[0, 1, 2]".
    #[arg(long, allow_hyphen_values = true)]
    pub poly: String,
    /// Keep exponents divisible by p instead of reducing them away.
    #[arg(long)]
    pub no_normalize: bool,
    #[arg(long, value_enum, default_value = "json")]
    pub out: OutputFormat,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long, conflicts_with = "multi", required_unless_present = "multi")]
    pub d: Option<u64>,
    /// Comma-separated breaks d1,d2,...
    #[arg(long, value_delimiter = ',')]
    pub multi: Option<Vec<u64>>,
    /// a-number of the base curve in the upper bound.
    #[arg(long, default_value_t = 0)]
    pub a_base: u64,
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    #[arg(long)]
    pub name: String,
    #[arg(long)]
    pub p: u64,
    /// Family index for `experiment`.
    #[arg(long)]
    pub n: Option<u64>,
    /// Expected degree; only `farnell` accepts it and it must be p - 1.
    #[arg(long)]
    pub deg: Option<u64>,
    /// Explicit degree p - 1 polynomial for `farnell`.
    #[arg(long, allow_hyphen_values = true)]
    pub poly: Option<String>,
    /// Seed for the random `farnell` polynomial.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long)]
    pub d: u64,
    #[arg(long, default_value_t = 50_000)]
    pub budget: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
    #[arg(long, default_value = "random")]
    pub strategy: String,
    #[arg(long, value_enum, default_value = "json")]
    pub out: OutputFormat,
}

#[derive(Debug, Args)]
pub struct ConjectureArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long, default_value_t = 7)]
    pub n_max: u64,
}

/// A failed command: exit code plus a message for stderr.
#[derive(Debug)]
struct Failure(i32, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InternalRange { .. } | Error::InvariantViolation(_) => EXIT_VERIFY,
            _ => EXIT_INPUT,
        };
        Failure(code, e.to_string())
    }
}

type CmdResult = std::result::Result<i32, Failure>;

/// Runs the CLI on `argv` (program name first), writing to the given
/// streams, and returns the exit code.
pub fn run<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let argv: Vec<String> = argv.into_iter().map(Into::into).collect();
    let argv = match expand_json_args(argv) {
        Ok(a) => a,
        Err(Failure(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            return code;
        }
    };
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    return EXIT_OK;
                }
                _ => EXIT_INPUT,
            };
            let _ = write!(err, "{}", e.render());
            return code;
        }
    };
    let result = match cli.command {
        Command::Invariants(a) => cmd_invariants(&a, out),
        Command::Bounds(a) => cmd_bounds(&a, out),
        Command::Family(a) => cmd_family(&a, out, err),
        Command::Search(a) => cmd_search(&a, out, err),
        Command::Conjecture(a) => cmd_conjecture(&a, out, err),
        Command::Matrix(a) => cmd_matrix(&a, out),
    };
    match result {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

/// Splices flags from a `--json-args FILE` object in front of the remaining
/// command-line flags.
fn expand_json_args(argv: Vec<String>) -> std::result::Result<Vec<String>, Failure> {
    let Some(pos) = argv.iter().position(|a| a == "--json-args" || a.starts_with("--json-args=")) else {
        return Ok(argv);
    };
    let mut rest = argv.clone();
    let path = if let Some(v) = argv[pos].strip_prefix("--json-args=") {
        rest.remove(pos);
        v.to_string()
    } else {
        let v = argv.get(pos + 1).cloned().ok_or_else(|| Failure(EXIT_INPUT, "--json-args needs a file".into()))?;
        rest.drain(pos..=pos + 1);
        v
    };
    let text = std::fs::read_to_string(&path).map_err(|e| Failure(EXIT_INPUT, format!("{path}: {e}")))?;
    let value: Value = serde_json::from_str(&text).map_err(|e| Failure(EXIT_INPUT, format!("{path}: {e}")))?;
    let Value::Object(map) = value else {
        return Err(Failure(EXIT_INPUT, format!("{path}: expected a JSON object")));
    };
    let mut expanded = vec![rest.first().cloned().unwrap_or_else(|| "ascurve".into())];
    let mut tail: Vec<String> = rest.into_iter().skip(1).collect();
    match map.get("command") {
        Some(Value::String(cmd)) => {
            expanded.push(cmd.clone());
            // A subcommand repeated on the command line would be parsed as a
            // stray positional.
            if tail.first() == Some(cmd) {
                tail.remove(0);
            }
        }
        Some(_) => return Err(Failure(EXIT_INPUT, "\"command\" must be a string".into())),
        None => {}
    }
    for (key, v) in map.iter().filter(|(k, _)| k.as_str() != "command") {
        let flag = format!("--{}", key.replace('_', "-"));
        match v {
            Value::Bool(true) => expanded.push(flag),
            Value::Bool(false) | Value::Null => {}
            Value::Array(items) => {
                let joined: Vec<String> = items.iter().map(scalar_text).collect();
                expanded.push(format!("{flag}={}", joined.join(",")));
            }
            other => expanded.push(format!("{flag}={}", scalar_text(other))),
        }
    }
    expanded.extend(tail);
    Ok(expanded)
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn modulus(p: u64) -> std::result::Result<PrimeModulus, Failure> {
    Ok(PrimeModulus::new(p)?)
}

fn emit_json(out: &mut dyn Write, value: &impl serde::Serialize) -> std::result::Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Failure(EXIT_INPUT, e.to_string()))?;
    writeln!(out, "{text}").map_err(|e| Failure(EXIT_INPUT, e.to_string()))
}

fn emit_line(out: &mut dyn Write, line: &str) -> std::result::Result<(), Failure> {
    writeln!(out, "{line}").map_err(|e| Failure(EXIT_INPUT, e.to_string()))
}

fn parse_curve(a: &CurveArgs) -> std::result::Result<Curve, Failure> {
    Ok(Curve::parse(modulus(a.p)?, &a.poly, !a.no_normalize)?)
}

fn cmd_invariants(a: &CurveArgs, out: &mut dyn Write) -> CmdResult {
    let report = invariants(&parse_curve(a)?)?;
    match a.out {
        OutputFormat::Json => emit_json(out, &report)?,
        OutputFormat::Csv => {
            emit_line(out, CSV_HEADER)?;
            emit_line(out, &report.to_csv_row())?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_bounds(a: &BoundsArgs, out: &mut dyn Write) -> CmdResult {
    let p = modulus(a.p)?;
    let breaks = match (&a.d, &a.multi) {
        (Some(d), _) => vec![*d],
        (None, Some(ds)) => ds.clone(),
        (None, None) => unreachable!("clap requires --d or --multi"),
    };
    let set = BreakMultiset::new(p, breaks)?;
    let (lower, upper) = match a.d {
        Some(d) => (lower_bound_single(p, d), upper_bound(p, d, a.a_base)),
        None => (lower_bound_multi(p, &set), upper_bound_multi(p, &set, a.a_base)),
    };
    emit_json(out, &json!({ "p": p.get(), "D": set.breaks(), "lower": lower, "upper": upper }))?;
    Ok(EXIT_OK)
}

fn cmd_family(a: &FamilyArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let p = modulus(a.p)?;
    let name: FamilyName = a.name.parse()?;
    let bad = |msg: String| Failure(EXIT_INPUT, msg);
    if a.deg.is_some() && name != FamilyName::Farnell {
        return Err(bad(format!("--deg only applies to farnell, not {name}")));
    }
    if a.poly.is_some() && name != FamilyName::Farnell {
        return Err(bad(format!("--poly only applies to farnell, not {name}")));
    }
    if a.n.is_some() && name != FamilyName::Experiment {
        return Err(bad(format!("--n only applies to experiment, not {name}")));
    }
    let id = match name {
        FamilyName::BcMinus => FamilyId::BcMinus { p },
        FamilyName::BcPlus => FamilyId::BcPlus { p },
        FamilyName::Farnell => {
            if let Some(deg) = a.deg {
                if deg != p.get() - 1 {
                    return Err(bad(format!("farnell has degree p - 1 = {}, not {deg}", p.get() - 1)));
                }
            }
            let poly = a.poly.as_deref().map(|s| FpPoly::parse(p, s)).transpose()?;
            FamilyId::Farnell { p, poly, seed: a.seed }
        }
        FamilyName::Experiment => {
            let n = a.n.ok_or_else(|| bad("experiment needs --n".into()))?;
            FamilyId::Experiment { p, n }
        }
    };
    let report = family_verify(&id)?;
    emit_json(out, &report)?;
    if report.attained {
        Ok(EXIT_OK)
    } else {
        let _ = writeln!(
            err,
            "{name} p={p}: a = {} but L = {}",
            report.report.a_number, report.report.lower_bound
        );
        Ok(EXIT_VERIFY)
    }
}

fn cmd_search(a: &SearchArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let cfg = SearchConfig {
        p: modulus(a.p)?,
        d: a.d,
        budget: a.budget,
        seed: a.seed,
        threads: a.threads,
        strategy: a.strategy.parse::<Strategy>()?,
    };
    let outcome = search_minimal(&cfg)?;
    match a.out {
        OutputFormat::Json => emit_json(out, &outcome)?,
        OutputFormat::Csv => {
            emit_line(out, TRIAL_CSV_HEADER)?;
            for rec in &outcome.log {
                emit_line(out, &rec.to_csv_row())?;
            }
        }
    }
    let Some(w) = &outcome.witness else {
        let _ = writeln!(err, "no witness within {} trials", outcome.stats.trials);
        return Ok(EXIT_OK);
    };
    // Rebuild from the printed polynomial and recompute from scratch.
    let recheck = Curve::parse(cfg.p, &w.curve.f().to_string(), false).and_then(|c| invariants(&c));
    match recheck {
        Ok(r) if r.a_number == w.a && r.attains_lower => Ok(EXIT_OK),
        Ok(r) => {
            let _ = writeln!(err, "witness recheck failed: a = {}, L = {}", r.a_number, r.lower_bound);
            Ok(EXIT_VERIFY)
        }
        Err(e) => {
            let _ = writeln!(err, "witness recheck failed: {e}");
            Ok(EXIT_VERIFY)
        }
    }
}

fn cmd_conjecture(a: &ConjectureArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let p = modulus(a.p)?;
    if a.n_max == 0 {
        return Err(Failure(EXIT_INPUT, "--n-max must be at least 1".into()));
    }
    let cells: Vec<_> = (1..=a.n_max)
        .into_par_iter()
        .map(|n| family_verify(&FamilyId::Experiment { p, n }))
        .collect::<crate::Result<_>>()?;
    let failures: Vec<u64> = cells.iter().filter(|c| !c.attained).filter_map(|c| c.n).collect();
    emit_json(
        out,
        &json!({ "p": p.get(), "n_max": a.n_max, "all_attained": failures.is_empty(), "cells": cells }),
    )?;
    if failures.is_empty() {
        Ok(EXIT_OK)
    } else {
        let _ = writeln!(err, "experiment family misses the bound at n = {failures:?}");
        Ok(EXIT_VERIFY)
    }
}

fn cmd_matrix(a: &CurveArgs, out: &mut dyn Write) -> CmdResult {
    let curve = parse_curve(a)?;
    let cm = cartier_matrix(&curve)?;
    let r = rank(cm.matrix());
    let basis: Vec<[u64; 2]> = cm.basis().elements().iter().map(|b| [b.i, b.j]).collect();
    match a.out {
        OutputFormat::Json => emit_json(
            out,
            &json!({
                "p": curve.p().get(),
                "d": curve.ramification_break(),
                "f": curve.f().to_string(),
                "genus": cm.genus(),
                "basis": basis,
                "rows": cm.matrix().to_rows(),
                "rank": r,
                "a_number": cm.genus() - r,
            }),
        )?,
        OutputFormat::Csv => {
            for row in cm.matrix().to_rows() {
                let cells: Vec<String> = row.iter().map(u64::to_string).collect();
                emit_line(out, &cells.join(","))?;
            }
        }
    }
    Ok(EXIT_OK)
}
