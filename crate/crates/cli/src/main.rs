//! `circdim`: metric dimension of circulant graphs from the command line.
//!
//! Every command prints a JSON envelope `{command, parameters, result,
//! timing, version}` (tables may instead be rendered as CSV or Markdown).
//! Exit codes: 0 success, 1 verification failure, 2 usage error, 3 budget
//! exceeded.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::process::ExitCode;
use std::time::Instant;

use circdim::constructions::{basis_t4_with, verify_construction_range, ConstructionError};
use circdim::formulas::{formula_dim, known_bounds, literal_t4_statement, BoundsReport};
use circdim::lemmas::{self, check_lemma, LemmaError, Verdict};
use circdim::resolve::{is_resolving, representation, Resolution};
use circdim::solver::{
    brute_force_dim, exact_dim, find_resolving_set, Minimality, SearchOptions, SolverError,
    DEFAULT_ORACLE_BUDGET,
};
use circdim::{CirculantGraph, Vertex};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

const ABSENT: &str = "\u{2014}";

#[derive(Parser)]
#[command(name = "circdim", version, about = "Metric dimension of circulant graphs C(n, ±{1..t})")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Metric dimension of C(n, ±{1..t}).
    Dim(DimArgs),
    /// Check whether a vertex set resolves C(n, ±{1..t}).
    Verify(VerifyArgs),
    /// One row per n: closed form, optionally cross-checked by the oracle.
    Table(TableArgs),
    /// Explicit metric basis for t = 4, or a batch check of the 8k+7 / 8k+9 bases.
    Construct(ConstructArgs),
    /// Validate lemma descriptors by exhaustive search.
    CheckLemmas(CheckArgs),
    /// Print the lemma registry.
    Manifest,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
enum MethodArg {
    Auto,
    Formula,
    Search,
    Oracle,
}

#[derive(Args, Serialize)]
struct DimArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 4)]
    t: usize,
    #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
    method: MethodArg,
    #[arg(long)]
    max_k: Option<usize>,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Node budget for search, or per-size subset budget for the oracle.
    #[arg(long, env = "CIRCDIM_BUDGET")]
    budget: Option<u64>,
}

#[derive(Args, Serialize)]
struct VerifyArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 4)]
    t: usize,
    /// Comma-separated vertices, e.g. 0,2,3,10.
    #[arg(long)]
    set: String,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
enum Format {
    Csv,
    Json,
    Md,
}

#[derive(Args, Serialize)]
struct TableArgs {
    #[arg(long, default_value_t = 4)]
    t: usize,
    #[arg(long)]
    n_min: usize,
    #[arg(long)]
    n_max: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Cross-check every row with the brute-force oracle.
    #[arg(long)]
    check: bool,
    #[arg(long, env = "CIRCDIM_BUDGET")]
    budget: Option<u64>,
}

#[derive(Args, Serialize)]
struct ConstructArgs {
    #[arg(long, conflicts_with_all = ["residue", "k_max"], required_unless_present = "residue")]
    n: Option<usize>,
    /// Verify the explicit basis for every n = 8k + residue, k = 1..=k-max.
    #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(["7", "9"]), requires = "k_max")]
    residue: Option<String>,
    #[arg(long)]
    k_max: Option<usize>,
    #[arg(long, env = "CIRCDIM_BUDGET")]
    budget: Option<u64>,
}

#[derive(Args, Serialize)]
struct CheckArgs {
    /// Descriptor id, or `all`.
    #[arg(long, default_value = "all")]
    id: String,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    k_max: u64,
    /// Include every instantiation, not just failures.
    #[arg(long)]
    verbose: bool,
}

/// A finished command: its JSON result and exit code.
struct Outcome {
    result: Value,
    code: u8,
}

impl Outcome {
    fn ok(result: Value) -> Self {
        Self { result, code: 0 }
    }

    fn failed(result: Value) -> Self {
        Self { result, code: 1 }
    }

    fn usage(message: impl Into<String>) -> Self {
        Self {
            result: json!({ "error": message.into() }),
            code: 2,
        }
    }

    fn budget(message: impl Into<String>) -> Self {
        Self {
            result: json!({ "error": message.into() }),
            code: 3,
        }
    }
}

fn solver_failure(e: SolverError) -> Outcome {
    match e {
        SolverError::BudgetExceeded { .. } => Outcome::budget(e.to_string()),
        SolverError::CapExceeded { .. } => Outcome::failed(json!({ "error": e.to_string() })),
        other => Outcome::usage(other.to_string()),
    }
}

fn graph(n: usize, t: usize) -> Result<CirculantGraph, Outcome> {
    CirculantGraph::consecutive(n, t).map_err(|e| Outcome::usage(e.to_string()))
}

fn emit(command: &str, parameters: Value, outcome: Outcome, started: Instant) -> ExitCode {
    let envelope = json!({
        "command": command,
        "parameters": parameters,
        "result": outcome.result,
        "timing": { "elapsed_ms": started.elapsed().as_secs_f64() * 1e3 },
        "version": env!("CARGO_PKG_VERSION"),
    });
    println!("{}", serde_json::to_string_pretty(&envelope).expect("JSON value"));
    ExitCode::from(outcome.code)
}

#[derive(Serialize)]
struct DimPayload {
    n: usize,
    t: usize,
    dim: usize,
    basis: Option<Vec<Vertex>>,
    method: &'static str,
    minimality: Option<Minimality>,
    nodes_explored: Option<u64>,
    lower_bound_used: Option<usize>,
    formula: Option<usize>,
    bounds: Option<BoundsReport>,
}

fn cmd_dim(a: &DimArgs) -> Outcome {
    let g = match graph(a.n, a.t) {
        Ok(g) => g,
        Err(o) => return o,
    };
    let formula = formula_dim(a.n, a.t);
    let bounds = known_bounds(a.n, a.t).ok();
    let mut opts = SearchOptions::default().with_workers(a.workers);
    opts.max_k = a.max_k;
    opts.node_budget = a.budget;
    let payload = |dim, basis, method, r: Option<&circdim::solver::DimResult>| DimPayload {
        n: a.n,
        t: a.t,
        dim,
        basis,
        method,
        minimality: r.map(|r| r.minimality),
        nodes_explored: r.map(|r| r.nodes_explored),
        lower_bound_used: r.map(|r| r.lower_bound_used),
        formula,
        bounds: bounds.clone(),
    };
    let searched = |opts: &SearchOptions| exact_dim(&g, opts).map(|r| payload(r.dim, Some(r.basis.clone()), "search", Some(&r)));
    let result = match (a.method, formula) {
        (MethodArg::Formula, None) => {
            return Outcome::usage(format!("no closed form for n = {}, t = {}", a.n, a.t))
        }
        (MethodArg::Formula, Some(d)) => Ok(DimPayload {
            minimality: Some(Minimality::Formula),
            ..payload(d, None, "formula", None)
        }),
        (MethodArg::Auto, Some(d)) => match find_resolving_set(&g, d, &opts) {
            Ok((Some(basis), nodes)) => Ok(DimPayload {
                minimality: Some(Minimality::Formula),
                nodes_explored: Some(nodes),
                ..payload(d, Some(basis), "formula", None)
            }),
            Ok((None, _)) => searched(&opts),
            Err(e) => Err(e),
        },
        (MethodArg::Auto | MethodArg::Search, _) => searched(&opts),
        (MethodArg::Oracle, _) => brute_force_dim(&g, a.budget.unwrap_or(DEFAULT_ORACLE_BUDGET))
            .map(|r| payload(r.dim, Some(r.basis.clone()), "oracle", Some(&r))),
    };
    match result {
        Ok(p) => Outcome::ok(serde_json::to_value(p).expect("serializable")),
        Err(e) => solver_failure(e),
    }
}

/// Parses a comma-separated vertex list, reducing mod `n` and rejecting duplicates.
fn parse_set(text: &str, n: usize) -> Result<Vec<Vertex>, String> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for item in text.split(',').map(str::trim) {
        let v: usize = item
            .parse()
            .map_err(|_| format!("{item:?} is not a non-negative integer"))?;
        let r = v % n;
        if !seen.insert(r) {
            return Err(format!(
                "vertex {v} reduces to {r} mod {n}, which is already in the set"
            ));
        }
        out.push(r);
    }
    Ok(out)
}

fn cmd_verify(a: &VerifyArgs) -> Outcome {
    let g = match graph(a.n, a.t) {
        Ok(g) => g,
        Err(o) => return o,
    };
    let set = match parse_set(&a.set, a.n) {
        Ok(s) => s,
        Err(e) => return Outcome::usage(e),
    };
    match is_resolving(&g, &set) {
        Ok(Resolution::Resolved) => Outcome::ok(json!({ "set": set, "resolving": true })),
        Ok(Resolution::Unresolved(w)) => {
            let rep = |v| representation(&g, v, &set).map(|r| r.coords).unwrap_or_default();
            Outcome::failed(json!({
                "set": set,
                "resolving": false,
                "witness": w,
                "representations": { w.u.to_string(): rep(w.u), w.v.to_string(): rep(w.v) },
            }))
        }
        Err(e) => Outcome::usage(e.to_string()),
    }
}

#[derive(Serialize)]
struct Row {
    n: usize,
    residue: usize,
    formula: Option<usize>,
    searched: Option<usize>,
    agrees: Option<bool>,
    note: String,
}

fn table_rows(a: &TableArgs) -> Result<Vec<Row>, Outcome> {
    if a.n_min > a.n_max {
        return Err(Outcome::usage("n-min must not exceed n-max"));
    }
    let mut rows = Vec::new();
    for n in a.n_min..=a.n_max {
        let g = graph(n, a.t)?;
        let formula = formula_dim(n, a.t);
        let searched = if a.check {
            let r = brute_force_dim(&g, a.budget.unwrap_or(DEFAULT_ORACLE_BUDGET))
                .map_err(solver_failure)?;
            Some(r.dim)
        } else {
            None
        };
        let mut note = String::new();
        if g.is_complete() {
            let _ = write!(note, "complete graph K_{n}, dim {}", n - 1);
            if a.t == 4 {
                if let Some(lit) = literal_t4_statement(n).filter(|&lit| lit != n - 1) {
                    let _ = write!(note, "; the residue rule read literally gives {lit}");
                }
            }
        }
        rows.push(Row {
            n,
            residue: n % (2 * a.t),
            formula,
            searched,
            agrees: formula.zip(searched).map(|(f, s)| f == s),
            note,
        });
    }
    Ok(rows)
}

fn cell<T: ToString>(v: Option<T>, absent: &str) -> String {
    v.map_or_else(|| absent.to_string(), |x| x.to_string())
}

fn render(rows: &[Row], format: Format) -> String {
    let cells = |r: &Row| {
        [
            r.n.to_string(),
            r.residue.to_string(),
            cell(r.formula, ABSENT),
            cell(r.searched, ""),
            cell(r.agrees, ""),
        ]
    };
    let mut out = String::new();
    match format {
        Format::Csv => {
            out.push_str("n,residue,formula,searched,agrees,note\n");
            for r in rows {
                let note = if r.note.contains(',') || r.note.contains('"') {
                    format!("\"{}\"", r.note.replace('"', "\"\""))
                } else {
                    r.note.clone()
                };
                let _ = writeln!(out, "{},{note}", cells(r).join(","));
            }
        }
        Format::Md => {
            out.push_str("| n | residue | formula | searched | agrees | note |\n");
            out.push_str("|---|---|---|---|---|---|\n");
            for r in rows {
                let _ = writeln!(out, "| {} | {} |", cells(r).join(" | "), r.note);
            }
        }
        Format::Json => unreachable!("JSON tables go through the envelope"),
    }
    out
}

fn cmd_construct(a: &ConstructArgs) -> Outcome {
    if let (Some(residue), Some(k_max)) = (&a.residue, a.k_max) {
        let residue: usize = residue.parse().expect("validated by clap");
        return match verify_construction_range(residue, k_max) {
            Ok(verdicts) => {
                let all = verdicts.iter().all(|v| v.passed());
                let result = json!({ "residue": residue, "all_passed": all, "verdicts": verdicts });
                if all {
                    Outcome::ok(result)
                } else {
                    Outcome::failed(result)
                }
            }
            Err(e) => Outcome::usage(e.to_string()),
        };
    }
    let n = a.n.expect("clap requires n without residue");
    let opts = SearchOptions {
        node_budget: a.budget,
        ..SearchOptions::default()
    };
    match basis_t4_with(n, &opts) {
        Ok(report) => {
            let verified = report.verified;
            let value = json!({
                "n": report.n,
                "basis": report.basis,
                "source": report.source.tag(),
                "verified": report.verified,
                "matches_formula": report.matches_formula,
                "printed": report.printed,
                "anomaly": report.anomaly,
            });
            if verified {
                Outcome::ok(value)
            } else {
                Outcome::failed(value)
            }
        }
        Err(ConstructionError::Solver(e)) => solver_failure(e),
        Err(e) => Outcome::usage(e.to_string()),
    }
}

fn cmd_check_lemmas(a: &CheckArgs) -> Outcome {
    let descriptors: Vec<&lemmas::LemmaDescriptor> = if a.id == "all" {
        lemmas::registry().iter().collect()
    } else {
        match lemmas::find(&a.id) {
            Ok(d) => vec![d],
            Err(e) => return Outcome::usage(e.to_string()),
        }
    };
    let mut reports = Vec::new();
    let mut any_failed = false;
    for d in descriptors {
        let report = match check_lemma(d, 1..=a.k_max as usize) {
            Ok(r) => r,
            Err(LemmaError::Solver(e)) => return solver_failure(e),
            Err(e) => return Outcome::usage(e.to_string()),
        };
        any_failed |= !report.ok();
        let failures: Vec<_> = report
            .instances
            .iter()
            .filter(|i| i.verdict == Verdict::Fail)
            .collect();
        let mut entry = json!({
            "id": report.id,
            "claim": d.claim(),
            "passed": report.ok(),
            "counts": report.counts,
            "tightness": report.tightness,
            "failures": failures,
        });
        if a.verbose {
            entry["instances"] = serde_json::to_value(&report.instances).expect("serializable");
        }
        reports.push(entry);
    }
    let result = json!({ "descriptors": reports.len(), "all_passed": !any_failed, "reports": reports });
    if any_failed {
        Outcome::failed(result)
    } else {
        Outcome::ok(result)
    }
}

fn params<T: Serialize>(args: &T) -> Value {
    serde_json::to_value(args).expect("serializable")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    match &cli.command {
        Command::Dim(a) => emit("dim", params(a), cmd_dim(a), started),
        Command::Verify(a) => emit("verify", params(a), cmd_verify(a), started),
        Command::Table(a) => match table_rows(a) {
            Ok(rows) if a.format == Format::Json => emit(
                "table",
                params(a),
                Outcome::ok(json!({ "rows": rows })),
                started,
            ),
            Ok(rows) => {
                print!("{}", render(&rows, a.format));
                ExitCode::SUCCESS
            }
            Err(o) => emit("table", params(a), o, started),
        },
        Command::Construct(a) => emit("construct", params(a), cmd_construct(a), started),
        Command::CheckLemmas(a) => emit("check-lemmas", params(a), cmd_check_lemmas(a), started),
        Command::Manifest => emit(
            "manifest",
            json!({}),
            Outcome::ok(serde_json::to_value(lemmas::manifest()).expect("serializable")),
            started,
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_set_reduces_and_rejects_duplicates() {
        assert_eq!(parse_set("0, 2,3,10", 11).unwrap(), vec![0, 2, 3, 10]);
        assert_eq!(parse_set("12", 11).unwrap(), vec![1]);
        let err = parse_set("0,2,7,19", 19).unwrap_err();
        assert!(err.contains("19 reduces to 0 mod 19"), "{err}");
        assert!(parse_set("0,x", 11).is_err());
        assert!(parse_set("", 11).is_err());
    }

    #[test]
    fn renderings_share_values() {
        let rows = vec![
            Row { n: 8, residue: 0, formula: None, searched: Some(7), agrees: None, note: "a, b".into() },
            Row { n: 13, residue: 5, formula: Some(5), searched: Some(5), agrees: Some(true), note: String::new() },
        ];
        let csv = render(&rows, Format::Csv);
        let md = render(&rows, Format::Md);
        assert!(csv.contains(&format!("8,0,{ABSENT},7,,\"a, b\"")), "{csv}");
        assert!(csv.contains("13,5,5,5,true,"));
        assert!(md.contains(&format!("| 8 | 0 | {ABSENT} | 7 |  | a, b |")), "{md}");
        assert!(md.contains("| 13 | 5 | 5 | 5 | true |  |"));
    }
}
