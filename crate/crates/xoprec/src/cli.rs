//! Command-line surface: coefficient tables, verification runs,
//! config-driven sweeps, point evaluation, and Gram reports.
//!
//! Exit-code contract: 0 = success, 1 = a mathematical check failed,
//! 2 = usage or configuration error. Rationals cross this boundary as
//! strings only; JSON data outputs are byte-deterministic (wall-clock
//! timings appear only inside verification reports, never in data files).

use std::env;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde_json::{Map, Value};

use crate::checks::{
    run_check, skipped_outcome, CheckName, CheckOutcome, CheckStatus, SweepGrid, ALL_CHECKS,
    PAPER_CHECKS,
};
use crate::classical::{FamilySpec, XType};
use crate::error::Error;
use crate::quadcheck::{arbitrate_pi, gram, report_from_data, GramOptions};
use crate::ratpoly::{parse_rat, BigReal, ExactScalar};
use crate::recurrence::{CoeffTable, Convention};
use crate::xop::{xop_poly, PiVariant, Strictness, XopSpec};

#[derive(Parser)]
#[command(
    name = "xoprec",
    version,
    about = "Exact recurrence tables and verification for exceptional orthogonal polynomials"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Emit band-coefficient tables for one spec over a row range.
    Table(TableArgs),
    /// Run the named verification checks and print a report.
    Verify(VerifyArgs),
    /// Run a config-driven sweep: per-cell table artifacts plus checks.
    Sweep(SweepArgs),
    /// Evaluate one member polynomial at exact or decimal points.
    Eval(EvalArgs),
    /// Compute a quadrature Gram report for one spec.
    Gram(GramArgs),
}

/// Flags selecting one polynomial family spec.
#[derive(Args)]
struct SpecArgs {
    /// Classical family: hermite, laguerre, or jacobi.
    #[arg(long)]
    family: String,
    /// Exceptional type (I, II, or III); omit together with --j for the
    /// classical family.
    #[arg(long = "type", value_name = "TYPE")]
    xtype: Option<String>,
    /// Transformation order j ≥ 1; omit together with --type for the
    /// classical family.
    #[arg(long)]
    j: Option<u32>,
    /// Parameter a as an exact rational string (Laguerre and Jacobi).
    #[arg(long)]
    a: Option<String>,
    /// Parameter b as an exact rational string (Jacobi only).
    #[arg(long)]
    b: Option<String>,
}

impl SpecArgs {
    fn build(&self, strictness: Strictness) -> Result<XopSpec, Error> {
        let fam = FamilySpec::from_strings(&self.family, self.a.as_deref(), self.b.as_deref())?;
        match (&self.xtype, self.j) {
            (None, None) => XopSpec::classical(fam),
            (Some(t), Some(j)) => {
                if j == 0 {
                    return Err(Error::Config {
                        reason: "--j must be at least 1 (omit --type and --j for the \
                                 classical family)"
                            .into(),
                    });
                }
                let t: XType = t.parse()?;
                XopSpec::new(fam, t, j as usize, strictness)
            }
            _ => Err(Error::Config {
                reason: "--type and --j must be given together (omit both for the \
                         classical family)"
                    .into(),
            }),
        }
    }
}

#[derive(Args)]
struct TableArgs {
    #[command(flatten)]
    spec: SpecArgs,
    /// Row index or inclusive range, e.g. "2" or "0..5".
    #[arg(long)]
    n: String,
    /// Multiplier convention: closed or raw.
    #[arg(long, default_value = "closed")]
    convention: String,
    /// Output format: json, csv, or latex.
    #[arg(long, default_value = "json")]
    format: String,
}

#[derive(Args)]
struct VerifyArgs {
    /// Verification scope: "paper" (displayed-table reproduction plus the
    /// multiplier decomposition) or "all" (every check).
    #[arg(long, default_value = "all")]
    scope: String,
    /// Check names to skip (repeatable); skipped checks are reported as
    /// such, never silently dropped.
    #[arg(long = "skip", value_name = "CHECK")]
    skip: Vec<String>,
    /// Binary precision for the quadrature checks.
    #[arg(long)]
    precision: Option<u32>,
    /// First quadrature order of the Gram ladder.
    #[arg(long = "order-start")]
    order_start: Option<u32>,
    /// Hard cap on the quadrature order.
    #[arg(long = "order-cap")]
    order_cap: Option<u32>,
    /// Largest member row in Gram matrices.
    #[arg(long)]
    nmax: Option<u32>,
}

#[derive(Args)]
struct SweepArgs {
    /// Path to the JSON sweep configuration (see the shipped
    /// configs/sweep-default.json for the schema).
    #[arg(long)]
    config: PathBuf,
}

#[derive(Args)]
struct EvalArgs {
    #[command(flatten)]
    spec: SpecArgs,
    /// Row index of the member to evaluate.
    #[arg(long)]
    n: u64,
    /// Comma-separated points: exact rationals ("1/2", "-3") or
    /// decimal-with-precision ("0.125@192" evaluates at 192 bits).
    #[arg(long)]
    points: String,
}

#[derive(Args)]
struct GramArgs {
    #[command(flatten)]
    spec: SpecArgs,
    /// First quadrature order of the doubling ladder.
    #[arg(long)]
    order: Option<u32>,
    /// Hard cap on the quadrature order.
    #[arg(long = "order-cap")]
    order_cap: Option<u32>,
    /// Binary precision of the reported values.
    #[arg(long)]
    precision: Option<u32>,
    /// Largest member row index included in the matrix.
    #[arg(long)]
    nmax: Option<u32>,
    /// Type-III Jacobi denominator variant: adopted or printed.
    #[arg(long, default_value = "adopted")]
    variant: String,
    /// Run both type-III Jacobi denominator variants and report which one
    /// yields an orthogonal family.
    #[arg(long)]
    arbitrate: bool,
}

/// Parses the process arguments, dispatches, and returns the exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    let result = match cli.cmd {
        Cmd::Table(args) => cmd_table(&args),
        Cmd::Verify(args) => cmd_verify(&args),
        Cmd::Sweep(args) => cmd_sweep(&args),
        Cmd::Eval(args) => cmd_eval(&args),
        Cmd::Gram(args) => cmd_gram(&args),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}

/// Usage and configuration problems exit 2; mathematical failures exit 1.
fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::InvalidParameter { .. }
        | Error::NonexistentCombination { .. }
        | Error::SeedHasRootsInDomain { .. }
        | Error::DegenerateDivisor { .. }
        | Error::EigenvalueCollision { .. }
        | Error::Config { .. }
        | Error::Io { .. } => 2,
        _ => 1,
    }
}

fn io_err(context: &str, e: std::io::Error) -> Error {
    Error::Io {
        reason: format!("{context}: {e}"),
    }
}

// ---------------------------------------------------------------------------
// table
// ---------------------------------------------------------------------------

fn parse_n_range(s: &str) -> Result<(usize, usize), Error> {
    let bad = |reason: String| Error::Config { reason };
    if let Some((lo, hi)) = s.split_once("..") {
        let lo: usize = lo.trim().parse().map_err(|_| {
            bad(format!(
                "row range start {lo:?} is not a nonnegative integer"
            ))
        })?;
        let hi: usize = hi
            .trim()
            .parse()
            .map_err(|_| bad(format!("row range end {hi:?} is not a nonnegative integer")))?;
        if hi < lo {
            return Err(bad(format!("empty row range {s:?}")));
        }
        Ok((lo, hi))
    } else {
        let n: usize = s
            .trim()
            .parse()
            .map_err(|_| bad(format!("row index {s:?} is not a nonnegative integer")))?;
        Ok((n, n))
    }
}

/// JSON record for a row index that names an excluded (gap) degree.
fn excluded_record(spec: &XopSpec, n: usize) -> Value {
    let mut m = Map::new();
    m.insert(
        "family".into(),
        Value::String(spec.family().kind().to_string()),
    );
    if let Some(t) = spec.xtype() {
        m.insert("type".into(), Value::String(t.to_string()));
    }
    m.insert("j".into(), Value::Number((spec.j() as u64).into()));
    let mut params = Map::new();
    for (k, v) in spec.family().param_pairs() {
        params.insert(k.to_string(), Value::String(v));
    }
    m.insert("params".into(), Value::Object(params));
    m.insert("n".into(), Value::Number((n as u64).into()));
    m.insert("excluded".into(), Value::Bool(true));
    m.insert(
        "reason".into(),
        Value::String(format!(
            "row {n} is an excluded (gap) degree of {}",
            spec.label()
        )),
    );
    Value::Object(m)
}

enum RowOutput {
    Table(CoeffTable),
    Excluded(usize),
}

fn table_rows(
    spec: &XopSpec,
    convention: Convention,
    lo: usize,
    hi: usize,
) -> Result<Vec<RowOutput>, Error> {
    let set = spec.degree_set();
    let mut out = Vec::new();
    for n in lo..=hi {
        if set.index_to_degree(n).is_none() {
            out.push(RowOutput::Excluded(n));
        } else {
            out.push(RowOutput::Table(CoeffTable::two_j_three(
                spec, convention, n,
            )?));
        }
    }
    Ok(out)
}

fn cmd_table(args: &TableArgs) -> Result<i32, Error> {
    let spec = args.spec.build(Strictness::Algebraic)?;
    let (lo, hi) = parse_n_range(&args.n)?;
    let convention: Convention = args.convention.parse()?;
    let rows = table_rows(&spec, convention, lo, hi)?;
    match args.format.as_str() {
        "json" => {
            let values: Vec<Value> = rows
                .iter()
                .map(|r| match r {
                    RowOutput::Table(t) => t.to_json(),
                    RowOutput::Excluded(n) => excluded_record(&spec, *n),
                })
                .collect();
            if lo == hi {
                println!("{}", values[0]);
            } else {
                println!("{}", Value::Array(values));
            }
        }
        "csv" => {
            let mut out = String::from("family,type,j,params,n,kind,multiplier,l,coefficient\n");
            for r in &rows {
                match r {
                    RowOutput::Table(t) => {
                        let body = t.to_csv();
                        out.push_str(body.split_once('\n').map(|(_, b)| b).unwrap_or(""));
                    }
                    RowOutput::Excluded(n) => {
                        out.push_str(&format!(
                            "{},{},{},{},{},excluded,,,\n",
                            spec.family().kind(),
                            spec.xtype().map(|t| t.to_string()).unwrap_or_default(),
                            spec.j(),
                            spec.family()
                                .param_pairs()
                                .iter()
                                .map(|(k, v)| format!("{k}={v}"))
                                .collect::<Vec<_>>()
                                .join(";"),
                            n
                        ));
                    }
                }
            }
            print!("{out}");
        }
        "latex" => {
            let blocks: Vec<String> = rows
                .iter()
                .map(|r| match r {
                    RowOutput::Table(t) => t.to_latex(),
                    RowOutput::Excluded(n) => {
                        format!("% n = {n}: excluded (gap) degree\n")
                    }
                })
                .collect();
            print!("{}", blocks.join("\n"));
        }
        other => {
            return Err(Error::Config {
                reason: format!("unknown format {other:?} (json|csv|latex)"),
            })
        }
    }
    Ok(0)
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

fn parse_skip(names: &[String]) -> Result<Vec<CheckName>, Error> {
    names.iter().map(|s| s.parse()).collect()
}

fn apply_quad_overrides(
    gram: &mut GramOptions,
    precision: Option<u32>,
    order_start: Option<u32>,
    order_cap: Option<u32>,
    nmax: Option<u32>,
) {
    if let Some(p) = precision {
        gram.precision = p;
    }
    if let Some(o) = order_start {
        gram.order_start = o;
    }
    if let Some(o) = order_cap {
        gram.order_cap = o;
    }
    if let Some(n) = nmax {
        gram.nmax = n;
    }
}

fn outcome_line(o: &CheckOutcome) -> String {
    match o.status {
        CheckStatus::Pass => format!(
            "[PASS] {}: {} cases ({} cells skipped) in {} ms",
            o.name, o.cases, o.skipped_cases, o.millis
        ),
        CheckStatus::Fail => format!(
            "[FAIL] {}: {} of {} cases failed in {} ms; first counterexample: {}",
            o.name,
            o.failures,
            o.cases,
            o.millis,
            o.first_counterexample
                .as_deref()
                .unwrap_or("(none recorded)")
        ),
        CheckStatus::Skip => format!(
            "[SKIP] {}: {}",
            o.name,
            o.skip_reason.as_deref().unwrap_or("skipped")
        ),
    }
}

/// Runs checks in order, echoing one status line per check to stderr.
fn run_and_print(names: &[CheckName], grid: &SweepGrid, skip: &[CheckName]) -> Vec<CheckOutcome> {
    names
        .iter()
        .map(|&name| {
            let out = if skip.contains(&name) {
                skipped_outcome(name, "skipped by request")
            } else {
                run_check(name, grid)
            };
            eprintln!("{}", outcome_line(&out));
            out
        })
        .collect()
}

fn grid_json(grid: &SweepGrid) -> Value {
    let mut m = Map::new();
    m.insert("hermite".into(), Value::Bool(grid.hermite));
    m.insert(
        "laguerre_samples".into(),
        Value::Array(
            grid.laguerre_samples
                .iter()
                .map(|a| Value::String(crate::ratpoly::fmt_rat(a)))
                .collect(),
        ),
    );
    m.insert(
        "jacobi_samples".into(),
        Value::Array(
            grid.jacobi_samples
                .iter()
                .map(|(a, b)| {
                    Value::Array(vec![
                        Value::String(crate::ratpoly::fmt_rat(a)),
                        Value::String(crate::ratpoly::fmt_rat(b)),
                    ])
                })
                .collect(),
        ),
    );
    m.insert(
        "types".into(),
        Value::Array(
            grid.types
                .iter()
                .map(|t| Value::String(t.to_string()))
                .collect(),
        ),
    );
    m.insert("j_min".into(), Value::Number((grid.j_min as u64).into()));
    m.insert("j_max".into(), Value::Number((grid.j_max as u64).into()));
    m.insert("n_max".into(), Value::Number((grid.n_max as u64).into()));
    Value::Object(m)
}

fn quad_json(g: &GramOptions) -> Value {
    let mut m = Map::new();
    m.insert("precision".into(), Value::Number(g.precision.into()));
    m.insert("order_start".into(), Value::Number(g.order_start.into()));
    m.insert("order_cap".into(), Value::Number(g.order_cap.into()));
    m.insert("nmax".into(), Value::Number(g.nmax.into()));
    m.insert("tol_log2".into(), Value::Number(g.tol_log2.into()));
    Value::Object(m)
}

fn report_json(
    command: &str,
    scope: Option<&str>,
    grid: &SweepGrid,
    skip: &[CheckName],
    extra_config: Vec<(String, Value)>,
    cells: Option<Vec<Value>>,
    outcomes: &[CheckOutcome],
    total_millis: u128,
) -> Value {
    let mut config = Map::new();
    if let Some(s) = scope {
        config.insert("scope".into(), Value::String(s.to_string()));
    }
    config.insert("grid".into(), grid_json(grid));
    config.insert("quadrature".into(), quad_json(&grid.gram));
    config.insert(
        "skip".into(),
        Value::Array(skip.iter().map(|c| Value::String(c.to_string())).collect()),
    );
    for (k, v) in extra_config {
        config.insert(k, v);
    }
    let failed = outcomes.iter().any(|o| o.status == CheckStatus::Fail);
    let mut m = Map::new();
    m.insert("command".into(), Value::String(command.to_string()));
    m.insert("config".into(), Value::Object(config));
    if let Some(cells) = cells {
        m.insert("cells".into(), Value::Array(cells));
    }
    m.insert(
        "checks".into(),
        Value::Array(outcomes.iter().map(|o| o.to_json()).collect()),
    );
    m.insert(
        "status".into(),
        Value::String(if failed { "fail" } else { "pass" }.into()),
    );
    m.insert(
        "total_millis".into(),
        Value::Number((total_millis as u64).into()),
    );
    Value::Object(m)
}

fn cmd_verify(args: &VerifyArgs) -> Result<i32, Error> {
    let names: &[CheckName] = match args.scope.as_str() {
        "paper" => &PAPER_CHECKS,
        "all" => &ALL_CHECKS,
        other => {
            return Err(Error::Config {
                reason: format!("unknown scope {other:?} (paper|all)"),
            })
        }
    };
    let skip = parse_skip(&args.skip)?;
    let mut grid = SweepGrid::default();
    if args.scope == "paper" {
        // The displayed tables are stated for rows up to 12.
        grid.n_max = 12;
    }
    apply_quad_overrides(
        &mut grid.gram,
        args.precision,
        args.order_start,
        args.order_cap,
        args.nmax,
    );
    let started = Instant::now();
    let outcomes = run_and_print(names, &grid, &skip);
    let failed = outcomes.iter().any(|o| o.status == CheckStatus::Fail);
    let report = report_json(
        "verify",
        Some(&args.scope),
        &grid,
        &skip,
        Vec::new(),
        None,
        &outcomes,
        started.elapsed().as_millis(),
    );
    println!("{report}");
    Ok(if failed { 1 } else { 0 })
}

// ---------------------------------------------------------------------------
// sweep
// ---------------------------------------------------------------------------

struct SweepConfig {
    grid: SweepGrid,
    n_min: usize,
    checks: Vec<CheckName>,
    output_dir: PathBuf,
}

fn cfg_err(reason: String) -> Error {
    Error::Config { reason }
}

fn expect_object<'v>(v: &'v Value, what: &str) -> Result<&'v Map<String, Value>, Error> {
    v.as_object()
        .ok_or_else(|| cfg_err(format!("{what} must be a JSON object")))
}

fn expect_array<'v>(v: &'v Value, what: &str) -> Result<&'v Vec<Value>, Error> {
    v.as_array()
        .ok_or_else(|| cfg_err(format!("{what} must be a JSON array")))
}

fn expect_str<'v>(v: &'v Value, what: &str) -> Result<&'v str, Error> {
    v.as_str()
        .ok_or_else(|| cfg_err(format!("{what} must be a JSON string")))
}

fn expect_u64(v: &Value, what: &str) -> Result<u64, Error> {
    v.as_u64()
        .ok_or_else(|| cfg_err(format!("{what} must be a nonnegative integer")))
}

fn reject_unknown_keys(
    obj: &Map<String, Value>,
    allowed: &[&str],
    what: &str,
) -> Result<(), Error> {
    for key in obj.keys() {
        if !allowed.contains(&key.as_str()) {
            return Err(cfg_err(format!(
                "unknown key {key:?} in {what} (allowed: {})",
                allowed.join(", ")
            )));
        }
    }
    Ok(())
}

fn require<'v>(obj: &'v Map<String, Value>, key: &str, what: &str) -> Result<&'v Value, Error> {
    obj.get(key)
        .ok_or_else(|| cfg_err(format!("missing key {key:?} in {what}")))
}

fn parse_param_list(v: &Value, keys: &[&str], what: &str) -> Result<Vec<Vec<ExactScalar>>, Error> {
    let arr = expect_array(v, what)?;
    let mut out = Vec::new();
    for (i, entry) in arr.iter().enumerate() {
        let ctx = format!("{what}[{i}]");
        let obj = expect_object(entry, &ctx)?;
        reject_unknown_keys(obj, keys, &ctx)?;
        let mut sample = Vec::new();
        for key in keys {
            let raw = expect_str(require(obj, key, &ctx)?, &format!("{ctx}.{key}"))?;
            sample.push(parse_rat(raw).map_err(|e| cfg_err(format!("{ctx}.{key}: {e}")))?);
        }
        out.push(sample);
    }
    Ok(out)
}

fn parse_sweep_config(text: &str) -> Result<SweepConfig, Error> {
    let root: Value = serde_json::from_str(text)
        .map_err(|e| cfg_err(format!("sweep config is not valid JSON: {e}")))?;
    let obj = expect_object(&root, "sweep config")?;
    reject_unknown_keys(
        obj,
        &[
            "families",
            "types",
            "j_min",
            "j_max",
            "n_min",
            "n_max",
            "checks",
            "output_dir",
            "quadrature",
        ],
        "sweep config",
    )?;

    let fam_obj = expect_object(require(obj, "families", "sweep config")?, "\"families\"")?;
    reject_unknown_keys(fam_obj, &["hermite", "laguerre", "jacobi"], "\"families\"")?;
    if fam_obj.is_empty() {
        return Err(cfg_err("\"families\" must name at least one family".into()));
    }
    let hermite = match fam_obj.get("hermite") {
        None => false,
        Some(v) => {
            let arr = expect_array(v, "families.hermite")?;
            if !arr.is_empty() {
                return Err(cfg_err(
                    "families.hermite takes no parameter samples (use [])".into(),
                ));
            }
            true
        }
    };
    let laguerre_samples = match fam_obj.get("laguerre") {
        None => Vec::new(),
        Some(v) => parse_param_list(v, &["a"], "families.laguerre")?
            .into_iter()
            .map(|mut s| s.remove(0))
            .collect(),
    };
    let jacobi_samples: Vec<(ExactScalar, ExactScalar)> = match fam_obj.get("jacobi") {
        None => Vec::new(),
        Some(v) => parse_param_list(v, &["a", "b"], "families.jacobi")?
            .into_iter()
            .map(|mut s| {
                let b = s.remove(1);
                (s.remove(0), b)
            })
            .collect(),
    };

    let types_arr = expect_array(require(obj, "types", "sweep config")?, "\"types\"")?;
    if types_arr.is_empty() {
        return Err(cfg_err("\"types\" must not be empty".into()));
    }
    let mut types = Vec::new();
    for t in types_arr {
        let t: XType = expect_str(t, "types entry")?
            .parse()
            .map_err(|e| cfg_err(format!("types entry: {e}")))?;
        if !types.contains(&t) {
            types.push(t);
        }
    }

    let j_min = expect_u64(require(obj, "j_min", "sweep config")?, "j_min")? as usize;
    let j_max = expect_u64(require(obj, "j_max", "sweep config")?, "j_max")? as usize;
    if j_min < 1 || j_max < j_min || j_max > 12 {
        return Err(cfg_err(format!(
            "invalid j range {j_min}..{j_max} (need 1 ≤ j_min ≤ j_max ≤ 12)"
        )));
    }
    let n_min = expect_u64(require(obj, "n_min", "sweep config")?, "n_min")? as usize;
    let n_max = expect_u64(require(obj, "n_max", "sweep config")?, "n_max")? as usize;
    if n_max < n_min || n_max > 64 {
        return Err(cfg_err(format!(
            "invalid n range {n_min}..{n_max} (need n_min ≤ n_max ≤ 64)"
        )));
    }

    let checks_arr = expect_array(require(obj, "checks", "sweep config")?, "\"checks\"")?;
    if checks_arr.is_empty() {
        return Err(cfg_err("\"checks\" must not be empty".into()));
    }
    let mut checks = Vec::new();
    for c in checks_arr {
        let name: CheckName = expect_str(c, "checks entry")?.parse()?;
        if !checks.contains(&name) {
            checks.push(name);
        }
    }

    let output_dir = PathBuf::from(expect_str(
        require(obj, "output_dir", "sweep config")?,
        "output_dir",
    )?);
    if output_dir.as_os_str().is_empty() {
        return Err(cfg_err("output_dir must not be empty".into()));
    }

    let mut gram = GramOptions::default();
    if let Some(q) = obj.get("quadrature") {
        let q = expect_object(q, "\"quadrature\"")?;
        reject_unknown_keys(
            q,
            &["precision", "order_start", "order_cap", "nmax", "tol_log2"],
            "\"quadrature\"",
        )?;
        if let Some(v) = q.get("precision") {
            gram.precision = expect_u64(v, "quadrature.precision")? as u32;
        }
        if let Some(v) = q.get("order_start") {
            gram.order_start = expect_u64(v, "quadrature.order_start")? as u32;
        }
        if let Some(v) = q.get("order_cap") {
            gram.order_cap = expect_u64(v, "quadrature.order_cap")? as u32;
        }
        if let Some(v) = q.get("nmax") {
            gram.nmax = expect_u64(v, "quadrature.nmax")? as u32;
        }
        if let Some(v) = q.get("tol_log2") {
            gram.tol_log2 = v
                .as_i64()
                .ok_or_else(|| cfg_err("quadrature.tol_log2 must be an integer".into()))?;
        }
        if gram.precision < 32 || gram.precision > 4096 {
            return Err(cfg_err("quadrature.precision must be in 32..=4096".into()));
        }
        if gram.order_start < 1 || gram.order_cap < gram.order_start {
            return Err(cfg_err(
                "quadrature orders must satisfy 1 ≤ order_start ≤ order_cap".into(),
            ));
        }
    }

    Ok(SweepConfig {
        grid: SweepGrid {
            hermite,
            laguerre_samples,
            jacobi_samples,
            types,
            j_min,
            j_max,
            n_max,
            gram,
        },
        n_min,
        checks,
        output_dir,
    })
}

/// Every (family sample, type, j) cell of the grid, in deterministic order.
fn grid_cells(grid: &SweepGrid) -> Vec<(FamilySpec, XType, usize)> {
    let mut cells = Vec::new();
    for &t in &grid.types {
        for j in grid.j_min..=grid.j_max {
            if grid.hermite {
                cells.push((FamilySpec::Hermite, t, j));
            }
            for a in &grid.laguerre_samples {
                cells.push((FamilySpec::Laguerre { a: a.clone() }, t, j));
            }
            for (a, b) in &grid.jacobi_samples {
                cells.push((
                    FamilySpec::Jacobi {
                        a: a.clone(),
                        b: b.clone(),
                    },
                    t,
                    j,
                ));
            }
        }
    }
    cells
}

fn cell_slug(fam: &FamilySpec, t: XType, j: usize) -> String {
    let mut slug = format!("{}_{}_j{}", fam.kind(), t, j);
    for (k, v) in fam.param_pairs() {
        slug.push('_');
        slug.push_str(k);
        slug.push_str(&v.replace('/', "-"));
    }
    slug
}

fn atomic_write(path: &Path, contents: &str) -> Result<(), Error> {
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, contents).map_err(|e| io_err(&tmp.display().to_string(), e))?;
    fs::rename(&tmp, path).map_err(|e| io_err(&path.display().to_string(), e))?;
    Ok(())
}

/// Builds the artifact tables for one sweep cell and writes them atomically.
/// Never fails the whole sweep: problems are recorded in the returned cell
/// record.
fn run_cell(
    fam: &FamilySpec,
    t: XType,
    j: usize,
    n_min: usize,
    n_max: usize,
    outdir: &Path,
) -> Value {
    let mut m = Map::new();
    m.insert("family".into(), Value::String(fam.kind().to_string()));
    m.insert("type".into(), Value::String(t.to_string()));
    m.insert("j".into(), Value::Number((j as u64).into()));
    let mut params = Map::new();
    for (k, v) in fam.param_pairs() {
        params.insert(k.to_string(), Value::String(v));
    }
    m.insert("params".into(), Value::Object(params));
    let spec = match XopSpec::new(fam.clone(), t, j, Strictness::Algebraic) {
        Ok(s) => s,
        Err(e) => {
            m.insert("skipped".into(), Value::Bool(true));
            m.insert("reason".into(), Value::String(e.to_string()));
            return Value::Object(m);
        }
    };
    m.insert("skipped".into(), Value::Bool(false));
    let rows = match table_rows(&spec, Convention::Closed, n_min, n_max) {
        Ok(rows) => rows,
        Err(e) => {
            m.insert("failed".into(), Value::Bool(true));
            m.insert("error".into(), Value::String(e.to_string()));
            return Value::Object(m);
        }
    };
    let mut excluded = 0u64;
    let values: Vec<Value> = rows
        .iter()
        .map(|r| match r {
            RowOutput::Table(tb) => tb.to_json(),
            RowOutput::Excluded(n) => {
                excluded += 1;
                excluded_record(&spec, *n)
            }
        })
        .collect();
    let file = format!("{}.json", cell_slug(fam, t, j));
    let path = outdir.join(&file);
    if let Err(e) = atomic_write(&path, &Value::Array(values).to_string()) {
        m.insert("failed".into(), Value::Bool(true));
        m.insert("error".into(), Value::String(e.to_string()));
        return Value::Object(m);
    }
    m.insert("file".into(), Value::String(file));
    m.insert(
        "rows".into(),
        Value::Number(((n_max - n_min + 1) as u64).into()),
    );
    m.insert("excluded_rows".into(), Value::Number(excluded.into()));
    Value::Object(m)
}

fn worker_pool() -> Result<rayon::ThreadPool, Error> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(raw) = env::var("XOPREC_WORKERS") {
        let n: usize = raw
            .parse()
            .map_err(|_| cfg_err(format!("XOPREC_WORKERS={raw:?} is not a positive integer")))?;
        if n == 0 {
            return Err(cfg_err("XOPREC_WORKERS must be at least 1".into()));
        }
        builder = builder.num_threads(n);
    }
    builder
        .build()
        .map_err(|e| cfg_err(format!("could not build worker pool: {e}")))
}

fn cmd_sweep(args: &SweepArgs) -> Result<i32, Error> {
    let text = fs::read_to_string(&args.config)
        .map_err(|e| io_err(&args.config.display().to_string(), e))?;
    let cfg = parse_sweep_config(&text)?;
    let outdir = match env::var("XOPREC_OUTPUT_DIR") {
        Ok(d) if !d.is_empty() => PathBuf::from(d),
        _ => cfg.output_dir.clone(),
    };
    fs::create_dir_all(&outdir).map_err(|e| io_err(&outdir.display().to_string(), e))?;

    let started = Instant::now();
    let cells = grid_cells(&cfg.grid);
    let pool = worker_pool()?;
    let n_min = cfg.n_min;
    let n_max = cfg.grid.n_max;
    let cell_records: Vec<Value> = pool.install(|| {
        cells
            .par_iter()
            .map(|(fam, t, j)| run_cell(fam, *t, *j, n_min, n_max, &outdir))
            .collect()
    });
    let cells_failed = cell_records
        .iter()
        .filter(|c| c.get("failed").and_then(Value::as_bool).unwrap_or(false))
        .count();
    let cells_skipped = cell_records
        .iter()
        .filter(|c| c.get("skipped").and_then(Value::as_bool).unwrap_or(false))
        .count();
    eprintln!(
        "sweep: {} cells ({} written, {} skipped, {} failed)",
        cell_records.len(),
        cell_records.len() - cells_skipped - cells_failed,
        cells_skipped,
        cells_failed
    );

    let outcomes = run_and_print(&cfg.checks, &cfg.grid, &[]);
    let checks_failed = outcomes.iter().any(|o| o.status == CheckStatus::Fail);

    let extra = vec![
        (
            "n_min".to_string(),
            Value::Number((cfg.n_min as u64).into()),
        ),
        (
            "checks".to_string(),
            Value::Array(
                cfg.checks
                    .iter()
                    .map(|c| Value::String(c.to_string()))
                    .collect(),
            ),
        ),
        (
            "output_dir".to_string(),
            Value::String(outdir.display().to_string()),
        ),
    ];
    let report = report_json(
        "sweep",
        None,
        &cfg.grid,
        &[],
        extra,
        Some(cell_records),
        &outcomes,
        started.elapsed().as_millis(),
    );
    let report_path = outdir.join("report.json");
    atomic_write(&report_path, &report.to_string())?;
    println!("{report}");
    Ok(if checks_failed || cells_failed > 0 {
        1
    } else {
        0
    })
}

// ---------------------------------------------------------------------------
// eval
// ---------------------------------------------------------------------------

enum PointSpec {
    Exact(ExactScalar, String),
    Real(ExactScalar, String, u32),
}

/// Parses "p/q", an integer, or a plain decimal into an exact rational.
fn parse_point_value(s: &str) -> Result<ExactScalar, Error> {
    let s = s.trim();
    if let Some((int_part, frac_part)) = s.split_once('.') {
        let (neg, int_digits) = match int_part.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, int_part),
        };
        let ok = |t: &str| t.chars().all(|c| c.is_ascii_digit());
        if !ok(int_digits) || frac_part.is_empty() || !ok(frac_part) {
            return Err(Error::Config {
                reason: format!("point {s:?} is not a rational or plain decimal"),
            });
        }
        let digits = format!(
            "{}{}",
            if int_digits.is_empty() {
                "0"
            } else {
                int_digits
            },
            frac_part
        );
        let numer = parse_rat(&digits)?;
        let denom = ExactScalar::from(num_bigint::BigInt::from(10u32).pow(frac_part.len() as u32));
        let v = numer / denom;
        Ok(if neg { -v } else { v })
    } else {
        parse_rat(s)
    }
}

fn parse_points(s: &str) -> Result<Vec<PointSpec>, Error> {
    let mut out = Vec::new();
    for tok in s.split(',') {
        let tok = tok.trim();
        if tok.is_empty() {
            return Err(Error::Config {
                reason: "empty point in --points".into(),
            });
        }
        if let Some((val, bits)) = tok.split_once('@') {
            let bits: u32 = bits.trim().parse().map_err(|_| Error::Config {
                reason: format!("precision {bits:?} in point {tok:?} is not an integer"),
            })?;
            if !(16..=65536).contains(&bits) {
                return Err(Error::Config {
                    reason: format!("precision {bits} out of range 16..=65536"),
                });
            }
            out.push(PointSpec::Real(
                parse_point_value(val)?,
                val.trim().to_string(),
                bits,
            ));
        } else {
            out.push(PointSpec::Exact(parse_point_value(tok)?, tok.to_string()));
        }
    }
    Ok(out)
}

/// Decimal digits that the given binary precision supports.
fn decimal_digits(bits: u32) -> u32 {
    ((bits as u64) * 30103 / 100000) as u32
}

fn cmd_eval(args: &EvalArgs) -> Result<i32, Error> {
    let spec = args.spec.build(Strictness::Algebraic)?;
    let points = parse_points(&args.points)?;
    let n = args.n as usize;

    let mut m = Map::new();
    m.insert(
        "family".into(),
        Value::String(spec.family().kind().to_string()),
    );
    if let Some(t) = spec.xtype() {
        m.insert("type".into(), Value::String(t.to_string()));
    }
    m.insert("j".into(), Value::Number((spec.j() as u64).into()));
    let mut params = Map::new();
    for (k, v) in spec.family().param_pairs() {
        params.insert(k.to_string(), Value::String(v));
    }
    m.insert("params".into(), Value::Object(params));
    m.insert("n".into(), Value::Number((n as u64).into()));

    let Some(degree) = spec.degree_set().index_to_degree(n) else {
        m.insert("excluded".into(), Value::Bool(true));
        m.insert(
            "reason".into(),
            Value::String(format!(
                "row {n} is an excluded (gap) degree of {}",
                spec.label()
            )),
        );
        println!("{}", Value::Object(m));
        return Ok(0);
    };
    m.insert("degree".into(), Value::Number((degree as u64).into()));
    let poly = xop_poly(&spec, degree)?;
    m.insert(
        "polynomial".into(),
        Value::Array(
            poly.to_string_vec()
                .into_iter()
                .map(Value::String)
                .collect(),
        ),
    );

    let mut values = Vec::new();
    for p in &points {
        let mut rec = Map::new();
        match p {
            PointSpec::Exact(x, raw) => {
                rec.insert("point".into(), Value::String(raw.clone()));
                rec.insert(
                    "value".into(),
                    Value::String(crate::ratpoly::fmt_rat(&poly.eval(x))),
                );
            }
            PointSpec::Real(x, raw, bits) => {
                let xr = BigReal::from_rational(x, *bits);
                let v = poly.eval_real(&xr);
                rec.insert("point".into(), Value::String(raw.clone()));
                rec.insert("precision".into(), Value::Number((*bits).into()));
                rec.insert(
                    "value".into(),
                    Value::String(v.to_decimal_string(decimal_digits(*bits))),
                );
            }
        }
        values.push(Value::Object(rec));
    }
    m.insert("values".into(), Value::Array(values));
    println!("{}", Value::Object(m));
    Ok(0)
}

// ---------------------------------------------------------------------------
// gram
// ---------------------------------------------------------------------------

fn cmd_gram(args: &GramArgs) -> Result<i32, Error> {
    let spec = args.spec.build(Strictness::Orthogonal)?;
    let mut opts = GramOptions::default();
    apply_quad_overrides(
        &mut opts,
        args.precision,
        args.order,
        args.order_cap,
        args.nmax,
    );
    if args.arbitrate {
        let is_jacobi_iii =
            matches!(spec.family(), FamilySpec::Jacobi { .. }) && spec.xtype() == Some(XType::III);
        if !is_jacobi_iii {
            return Err(Error::Config {
                reason: "--arbitrate applies only to type-III Jacobi specs".into(),
            });
        }
        let arb = arbitrate_pi(&spec, &opts)?;
        let mut m = Map::new();
        m.insert(
            "winner".into(),
            match arb.winner {
                Some(v) => Value::String(crate::quadcheck::variant_name(v).to_string()),
                None => Value::Null,
            },
        );
        m.insert(
            "adopted".into(),
            report_from_data(&spec, &arb.adopted).to_json(),
        );
        m.insert(
            "printed".into(),
            match &arb.printed {
                Ok(d) => report_from_data(&spec, d).to_json(),
                Err(e) => {
                    let mut err = Map::new();
                    err.insert("error".into(), Value::String(e.to_string()));
                    Value::Object(err)
                }
            },
        );
        println!("{}", Value::Object(m));
        return Ok(0);
    }
    let variant = match args.variant.as_str() {
        "adopted" => PiVariant::Adopted,
        "printed" => PiVariant::Printed,
        other => {
            return Err(Error::Config {
                reason: format!("unknown variant {other:?} (adopted|printed)"),
            })
        }
    };
    let report = gram(&spec, variant, &opts)?;
    println!("{}", report.to_json());
    Ok(0)
}
