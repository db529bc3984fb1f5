//! Command-line front end for `umbral-core`.
//!
//! Three commands:
//!
//! * `table`: coefficient vectors of a family for a range of indices,
//! * `eval`: one family member evaluated at a rational point,
//! * `check`: identity sweeps with CI-friendly exit codes.
//!
//! Exit codes: 0 on success (or aggregate pass), 1 when a mandatory check
//! fails, 2 on usage or configuration errors.

pub mod format;

use std::fmt::Write as _;
use std::ops::RangeInclusive;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use umbral_core::families::Family;
use umbral_core::identities::{self, Adjudication, CheckGrid, IdentityId, Verdict};
use umbral_core::{parse_rational, FamilyId, Rational};

use crate::format::{poly_strings, rational_str, report_json};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Engine(#[from] umbral_core::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

#[derive(Parser, Debug)]
#[command(name = "umbral", version, about = "Exact umbral calculus: family tables, evaluation and identity checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Coefficient table of a family over a range of indices.
    Table(TableArgs),
    /// Evaluate one family member at a rational point.
    Eval(EvalArgs),
    /// Run identity checks over a parameter grid.
    Check(CheckArgs),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

#[derive(Args, Debug)]
pub struct FamilyArgs {
    /// bernoulli, hermite, beta-linear, hbeta or phi-custom
    #[arg(long, value_parser = parse_family)]
    pub family: FamilyId,
    /// Order a (any integer).
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub a: i64,
    /// Deformation v, "p/q" or an integer.
    #[arg(long, default_value = "0", allow_hyphen_values = true, value_parser = parse_rational_arg)]
    pub v: Rational,
    /// phi-custom only: ordinary coefficients of f(t), comma-separated.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_rational_list)]
    pub f: Option<RationalList>,
    /// phi-custom only: ordinary coefficients of h(t), comma-separated; constant term must be 0.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_rational_list)]
    pub h: Option<RationalList>,
    /// Series truncation order; defaults to n + |a| + 4.
    #[arg(long)]
    pub guard_order: Option<usize>,
    #[arg(long, value_enum, default_value_t)]
    pub format: OutputFormat,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Inclusive index range "lo..hi" (or a single index).
    #[arg(long, value_parser = parse_range)]
    pub n: RangeInclusive<usize>,
}

#[derive(Args, Debug)]
pub struct EvalArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    #[arg(long)]
    pub n: usize,
    /// Evaluation point, "p/q" or an integer.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_rational_arg)]
    pub x: Rational,
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    /// "all" or a comma-separated list of identity tags.
    #[arg(long, default_value = "all")]
    pub identities: String,
    #[arg(long, default_value_t = 10)]
    pub n_max: usize,
    #[arg(long, default_value = "-1,0,1,2,3,4", allow_hyphen_values = true, value_parser = parse_int_list)]
    pub a_values: IntList,
    #[arg(long, default_value = "-2,-1,0,1/2,1,3", allow_hyphen_values = true, value_parser = parse_rational_list)]
    pub v_set: RationalList,
    #[arg(long, default_value_t = 6)]
    pub k_max: usize,
    #[arg(long, value_enum, default_value_t)]
    pub format: OutputFormat,
}

fn parse_family(s: &str) -> Result<FamilyId, String> {
    s.parse().map_err(|e: umbral_core::Error| e.to_string())
}

fn parse_rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn split_list(s: &str) -> impl Iterator<Item = &str> {
    s.split(',').map(str::trim).filter(|p| !p.is_empty())
}

/// Comma-separated rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalList(pub Vec<Rational>);

/// Comma-separated integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntList(pub Vec<i64>);

fn parse_rational_list(s: &str) -> Result<RationalList, String> {
    split_list(s).map(parse_rational_arg).collect::<Result<_, _>>().map(RationalList)
}

fn parse_int_list(s: &str) -> Result<IntList, String> {
    split_list(s)
        .map(|p| p.parse::<i64>().map_err(|e| format!("{p:?}: {e}")))
        .collect::<Result<_, _>>()
        .map(IntList)
}

/// `"lo..hi"` inclusive, or a single index.
pub fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let parse = |p: &str| p.trim().parse::<usize>().map_err(|e| format!("{p:?}: {e}"));
    let (lo, hi) = match s.split_once("..") {
        Some((lo, hi)) => (parse(lo)?, parse(hi)?),
        None => {
            let n = parse(s)?;
            (n, n)
        }
    };
    if lo > hi {
        return Err(format!("empty range {s:?}"));
    }
    Ok(lo..=hi)
}

/// What a command produced; `main` prints it and exits with `code`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn usage(msg: impl std::fmt::Display) -> Self {
        Self { code: EXIT_USAGE, stdout: String::new(), stderr: format!("error: {msg}\n") }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run(args: &[String]) -> Outcome {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code, stdout: String::new(), stderr: text }
            } else {
                Outcome { code, stdout: text, stderr: String::new() }
            };
        }
    };
    let result = match &cli.command {
        Command::Table(args) => cmd_table(args),
        Command::Eval(args) => cmd_eval(args),
        Command::Check(args) => cmd_check(args),
    };
    result.unwrap_or_else(Outcome::usage)
}

fn build_family(args: &FamilyArgs) -> Result<Family, CliError> {
    if args.family != FamilyId::PhiCustom && (args.f.is_some() || args.h.is_some()) {
        return Err(CliError::Usage("--f and --h only apply to --family phi-custom".into()));
    }
    let mut family = Family::new(args.family, args.a, args.v.clone());
    if let Some(f) = &args.f {
        if f.0.is_empty() {
            return Err(CliError::Usage("--f needs at least one coefficient".into()));
        }
        family.f = f.0.clone();
    }
    if let Some(h) = &args.h {
        family.h = h.0.clone();
    }
    Ok(family)
}

fn check_guard(args: &FamilyArgs, n_hi: usize) -> Result<(), CliError> {
    match args.guard_order {
        Some(g) if g < n_hi => Err(CliError::Usage(format!("--guard-order {g} is below the largest index {n_hi}"))),
        _ => Ok(()),
    }
}

fn to_json_text(value: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn to_csv_text(header: &[String], rows: &[Vec<String>]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn cmd_table(args: &TableArgs) -> Result<Outcome, CliError> {
    let fam = &args.family;
    check_guard(fam, *args.n.end())?;
    let family = build_family(fam)?;
    let members = args
        .n
        .clone()
        .map(|n| Ok((n, family.member(n, fam.guard_order)?)))
        .collect::<Result<Vec<_>, CliError>>()?;
    let stdout = match fam.format {
        OutputFormat::Json => {
            let rows: Vec<_> = members.iter().map(|(n, p)| json!({"n": n, "coeffs": poly_strings(p)})).collect();
            to_json_text(&json!(rows))
        }
        OutputFormat::Csv => {
            let width = *args.n.end() + 1;
            let mut header = vec!["n".to_owned()];
            header.extend((0..width).map(|i| format!("c{i}")));
            let rows: Vec<Vec<String>> = members
                .iter()
                .map(|(n, p)| {
                    let mut row = vec![n.to_string()];
                    row.extend((0..width).map(|i| rational_str(&p.coeff(i))));
                    row
                })
                .collect();
            to_csv_text(&header, &rows)?
        }
    };
    Ok(Outcome { code: EXIT_OK, stdout, stderr: String::new() })
}

pub fn cmd_eval(args: &EvalArgs) -> Result<Outcome, CliError> {
    let fam = &args.family;
    check_guard(fam, args.n)?;
    let family = build_family(fam)?;
    let value = family.member(args.n, fam.guard_order)?.eval(&args.x);
    let fields = [
        ("family", family.id.as_str().to_owned()),
        ("n", args.n.to_string()),
        ("a", fam.a.to_string()),
        ("v", rational_str(&fam.v)),
        ("x", rational_str(&args.x)),
        ("value", rational_str(&value)),
    ];
    let stdout = match fam.format {
        OutputFormat::Json => to_json_text(&json!({
            "family": family.id.as_str(),
            "n": args.n,
            "a": fam.a,
            "v": rational_str(&fam.v),
            "x": rational_str(&args.x),
            "value": rational_str(&value),
        })),
        OutputFormat::Csv => {
            let header: Vec<String> = fields.iter().map(|(k, _)| (*k).to_owned()).collect();
            let row: Vec<String> = fields.iter().map(|(_, v)| v.clone()).collect();
            to_csv_text(&header, &[row])?
        }
    };
    Ok(Outcome { code: EXIT_OK, stdout, stderr: String::new() })
}

fn parse_identities(s: &str) -> Result<Vec<IdentityId>, CliError> {
    if s.trim() == "all" {
        return Ok(IdentityId::ALL.to_vec());
    }
    let ids = split_list(s).map(|t| t.parse::<IdentityId>()).collect::<Result<Vec<_>, _>>()?;
    if ids.is_empty() {
        return Err(CliError::Usage("--identities is empty".into()));
    }
    Ok(ids)
}

/// Runs each identity on its own thread; reports come back in catalog order.
pub fn run_sharded(ids: &[IdentityId], grid: &CheckGrid) -> Result<Vec<identities::CheckReport>, CliError> {
    let mut ids = ids.to_vec();
    ids.sort();
    ids.dedup();
    grid.validate(&ids)?;
    Ok(std::thread::scope(|scope| {
        let handles: Vec<_> =
            ids.iter().map(|&id| scope.spawn(move || identities::check_identity_recorded(id, grid))).collect();
        handles.into_iter().map(|h| h.join().expect("check thread panicked")).collect()
    }))
}

pub fn cmd_check(args: &CheckArgs) -> Result<Outcome, CliError> {
    let ids = parse_identities(&args.identities)?;
    let grid = CheckGrid {
        n_max: args.n_max,
        a_values: args.a_values.0.clone(),
        v_values: args.v_set.0.clone(),
        k_max: args.k_max,
    };
    let reports = run_sharded(&ids, &grid)?;
    let verdict = identities::aggregate(&reports);

    let stdout = match args.format {
        OutputFormat::Json => to_json_text(&serde_json::Value::Array(reports.iter().map(report_json).collect())),
        OutputFormat::Csv => {
            let header: Vec<String> = ["id", "verdict", "total_points", "skipped_points", "failures", "note"]
                .iter()
                .map(|s| (*s).to_owned())
                .collect();
            let rows: Vec<Vec<String>> = reports
                .iter()
                .map(|r| {
                    vec![
                        r.id.tag().to_owned(),
                        r.verdict.as_str().to_owned(),
                        r.total_points.to_string(),
                        r.skipped_points.to_string(),
                        r.failures.len().to_string(),
                        r.note.clone(),
                    ]
                })
                .collect();
            to_csv_text(&header, &rows)?
        }
    };

    let mut stderr = String::new();
    for r in &reports {
        let _ = writeln!(stderr, "{:<26} {:<4} points={} failures={}", r.id.tag(), r.verdict.as_str(), r.total_points, r.failures.len());
    }
    for (published, derived, outcome) in &verdict.adjudications {
        let text = match outcome {
            Adjudication::PublishedHolds => format!("{published} holds, {derived} does not"),
            Adjudication::DerivedHolds => format!("{derived} holds, {published} does not"),
            Adjudication::EngineError => format!("engine error: {published} and {derived} agree in verdict"),
        };
        let _ = writeln!(stderr, "adjudication: {text}");
    }
    let failed = reports.iter().filter(|r| r.verdict == Verdict::Fail).count();
    let _ = writeln!(stderr, "aggregate: {} ({} of {} reports failed)", if verdict.pass { "pass" } else { "fail" }, failed, reports.len());

    Ok(Outcome { code: if verdict.pass { EXIT_OK } else { EXIT_FAIL }, stdout, stderr })
}
