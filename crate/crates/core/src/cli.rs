//! Batch driver behind the `lienil` binary.
//!
//! Every command fans out over `(group, prime)` tasks, renders each task into
//! a table row and a JSON line, and emits them sorted by `(name, p)`.

use std::io::Write;
use std::path::PathBuf;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::AlgebraContext;
use crate::catalog::{parse_catalog, GroupSpec};
use crate::classify::{
    classify_theorem1, cross_check, lie_nilpotency_status, unit_group_class, Check, CheckReport,
    Condition, NilpotencyStatus, Predicted, DEFAULT_MAX_UNITS,
};
use crate::error::{Error, Result};
use crate::group::{is_prime, Group, GroupSummary, DEFAULT_MAX_ORDER};
use crate::proof::{all_witness_pairs, verify_chain, CaseTag, WitnessProfile};
use crate::series::{default_bound, series_report, SeriesReport};

/// Exit code when every executed check passed.
pub const EXIT_OK: i32 = 0;
/// Exit code when some check failed.
pub const EXIT_CHECK_FAILED: i32 = 1;
/// Exit code for unreadable input.
pub const EXIT_INPUT_ERROR: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Analyze,
    Indices,
    Classify,
    Scan,
    VerifyProof,
    UnitsClass,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    /// `None` selects the bundled catalog.
    pub catalog_path: Option<PathBuf>,
    pub group: Option<String>,
    /// Replaces each entry's declared primes.
    pub prime: Option<u64>,
    pub max_order: usize,
    pub json: bool,
    /// Worker threads; `None` lets the pool decide.
    pub jobs: Option<usize>,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            catalog_path: None,
            group: None,
            prime: None,
            max_order: DEFAULT_MAX_ORDER,
            json: false,
            jobs: None,
        }
    }

    fn validate(&self) -> Result<()> {
        if let Some(p) = self.prime {
            if !is_prime(p) {
                return Err(Error::NotPrime(p));
            }
        }
        if self.max_order == 0 {
            return Err(Error::OrderExceeded { max_order: 0 });
        }
        if self.jobs == Some(0) {
            return Err(Error::Parse {
                line: 0,
                column: 0,
                message: "--jobs must be at least 1".into(),
            });
        }
        Ok(())
    }
}

/// One line of `scan` output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub name: String,
    pub p: u64,
    pub order: usize,
    pub class: Option<usize>,
    pub gamma_orders: Vec<usize>,
    pub derived_type: Option<Vec<u64>>,
    pub status: NilpotencyStatus,
    pub t_lower: Option<usize>,
    pub t_upper: Option<usize>,
    pub lower_dims: Vec<usize>,
    pub upper_dims: Vec<usize>,
    pub condition: Option<Condition>,
    pub predicted: Option<Predicted>,
    pub checks: Vec<Check>,
}

impl From<CheckReport> for Report {
    fn from(r: CheckReport) -> Self {
        let series = r.computed;
        Report {
            name: r.group_name,
            p: r.p,
            order: r.summary.order,
            class: r.summary.class,
            gamma_orders: r.summary.gamma_orders,
            derived_type: r.summary.derived_type,
            status: r.status,
            t_lower: series.as_ref().map(|s| s.t_lower),
            t_upper: series.as_ref().map(|s| s.t_upper),
            lower_dims: series.as_ref().map(|s| s.lower_dims.clone()).unwrap_or_default(),
            upper_dims: series.map(|s| s.upper_dims).unwrap_or_default(),
            condition: r.classification.map(|c| c.condition),
            predicted: r.classification.map(|c| c.predicted),
            checks: r.checks,
        }
    }
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

#[derive(Serialize)]
struct AnalyzeLine<'a> {
    name: &'a str,
    #[serde(flatten)]
    summary: &'a GroupSummary,
}

#[derive(Serialize)]
struct IndicesLine<'a> {
    name: &'a str,
    p: u64,
    status: NilpotencyStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    series: Option<&'a SeriesReport>,
}

#[derive(Serialize)]
struct ClassifyLine {
    name: String,
    p: u64,
    status: NilpotencyStatus,
    condition: Option<Condition>,
    predicted: Option<Predicted>,
}

#[derive(Serialize)]
struct StepLine<'a> {
    label: &'a str,
    matched: Option<bool>,
}

#[derive(Serialize)]
struct ProofLine<'a> {
    name: &'a str,
    p: u64,
    condition: Condition,
    case: CaseTag,
    witnesses: usize,
    g: &'a str,
    h: &'a str,
    chain: Option<&'a str>,
    steps: Vec<StepLine<'a>>,
    final_nonzero: bool,
    final_form: Option<String>,
    implied_lower_bound: Option<usize>,
    error: Option<String>,
    checks: &'a [Check],
}

#[derive(Serialize)]
struct UnitsLine<'a> {
    name: &'a str,
    p: u64,
    unit_class: Option<usize>,
    t_lower: Option<usize>,
    skipped: Option<String>,
    checks: &'a [Check],
}

/// A rendered task result.
struct Output {
    row: String,
    json: String,
    pass: bool,
}

impl Output {
    fn new(row: String, json: &impl Serialize, pass: bool) -> Self {
        Output {
            row,
            json: serde_json::to_string(json).expect("report serializes"),
            pass,
        }
    }
}

/// Runs `config` against the catalog document `catalog`, writing reports to
/// `out` and diagnostics to `err`. Returns the process exit code.
pub fn run(config: &RunConfig, catalog: &str, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match execute(config, catalog) {
        Ok(outputs) => {
            if !config.json {
                let _ = writeln!(out, "{}", header(config.command));
            }
            for o in &outputs {
                let line = if config.json { &o.json } else { &o.row };
                let _ = writeln!(out, "{line}");
            }
            if outputs.iter().all(|o| o.pass) {
                EXIT_OK
            } else {
                let failed = outputs.iter().filter(|o| !o.pass).count();
                let _ = writeln!(err, "{failed} of {} reports have failing checks", outputs.len());
                EXIT_CHECK_FAILED
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT_ERROR
        }
    }
}

fn execute(config: &RunConfig, catalog: &str) -> Result<Vec<Output>> {
    config.validate()?;
    let specs = select(parse_catalog(catalog)?, config.group.as_deref())?;
    let groups = specs
        .into_iter()
        .map(|spec| {
            let group = spec.build(config.max_order)?;
            Ok((spec, group))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut tasks = Vec::new();
    for (i, (spec, _)) in groups.iter().enumerate() {
        match (config.command, config.prime) {
            (Command::Analyze, _) => tasks.push((i, 0)),
            (_, Some(p)) => tasks.push((i, p)),
            (_, None) => tasks.extend(spec.primes.iter().map(|&p| (i, p))),
        }
    }
    tasks.sort_by(|a, b| (&groups[a.0].0.name, a.1).cmp(&(&groups[b.0].0.name, b.1)));
    tasks.dedup();

    let work = || {
        tasks
            .par_iter()
            .map(|&(i, p)| {
                let (spec, group) = &groups[i];
                run_task(config.command, &spec.name, group, p)
            })
            .collect::<Vec<_>>()
    };
    let outputs = match config.jobs {
        Some(jobs) => rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .expect("thread pool")
            .install(work),
        None => work(),
    };
    Ok(outputs.into_iter().flatten().collect())
}

fn select(specs: Vec<GroupSpec>, name: Option<&str>) -> Result<Vec<GroupSpec>> {
    let Some(name) = name else {
        return Ok(specs);
    };
    let chosen: Vec<_> = specs.into_iter().filter(|s| s.name == name).collect();
    if chosen.is_empty() {
        return Err(Error::Parse {
            line: 0,
            column: 0,
            message: format!("no catalog entry named {name:?}"),
        });
    }
    Ok(chosen)
}

fn header(command: Command) -> String {
    match command {
        Command::Analyze => format!(
            "{:<10} {:>5} {:>5}  {:<22} {:<12} {}",
            "group", "order", "class", "gamma orders", "G' type", "gamma3 type"
        ),
        Command::Indices => format!(
            "{:<10} {:>2} {:>4} {:>4}  {:<34} {}",
            "group", "p", "t_L", "t^L", "lower dims", "upper dims"
        ),
        Command::Classify => format!("{:<10} {:>2}  {:<9} {}", "group", "p", "condition", "predicted"),
        Command::Scan => format!(
            "{:<10} {:>2} {:>5} {:>5} {:>4} {:>4}  {:<9} {:<18} {}",
            "group", "p", "order", "|G'|", "t_L", "t^L", "condition", "predicted", "checks"
        ),
        Command::VerifyProof => format!(
            "{:<10} {:>2} {:<4} {:<8} {:>9}  {:<26} {:<7} {}",
            "group", "p", "cond", "case", "witnesses", "chain", "bound", "result"
        ),
        Command::UnitsClass => format!("{:<10} {:>2} {:>6} {:>4}  {}", "group", "p", "cl(U)", "t_L", "result"),
    }
}

fn run_task(command: Command, name: &str, group: &Group, p: u64) -> Vec<Output> {
    match command {
        Command::Analyze => vec![analyze(name, group)],
        Command::Indices => vec![indices(name, group, p)],
        Command::Classify => vec![classify(name, group, p)],
        Command::Scan => vec![scan(name, group, p)],
        Command::VerifyProof => verify_proof(name, group, p),
        Command::UnitsClass => vec![units_class(name, group, p)],
    }
}

fn list<T: ToString>(xs: &[T]) -> String {
    let parts: Vec<_> = xs.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(","))
}

fn opt_list(xs: &Option<Vec<u64>>) -> String {
    xs.as_deref().map(list).unwrap_or_else(|| "-".into())
}

fn opt<T: ToString>(x: Option<T>) -> String {
    x.map(|v| v.to_string()).unwrap_or_else(|| "-".into())
}

fn predicted_text(p: Option<Predicted>) -> String {
    match p {
        Some(Predicted::Maximal(v)) => format!("maximal {v}"),
        Some(Predicted::AlmostMaximal(v)) => format!("almost maximal {v}"),
        Some(Predicted::Below(v)) => format!("below, <= {v}"),
        Some(Predicted::Commutative(v)) => format!("commutative {v}"),
        None => "-".into(),
    }
}

fn verdict(status: NilpotencyStatus) -> String {
    format!("not Lie nilpotent ({:?})", status.reason)
}

fn analyze(name: &str, group: &Group) -> Output {
    let s = group.summary();
    let row = format!(
        "{:<10} {:>5} {:>5}  {:<22} {:<12} {}",
        name,
        s.order,
        opt(s.class),
        list(&s.gamma_orders),
        opt_list(&s.derived_type),
        opt_list(&s.gamma3_type)
    );
    Output::new(row, &AnalyzeLine { name, summary: &s }, true)
}

fn indices(name: &str, group: &Group, p: u64) -> Output {
    let status = lie_nilpotency_status(group, p);
    if !status.lie_nilpotent {
        let row = format!("{name:<10} {p:>2}  {}", verdict(status));
        let line = IndicesLine { name, p, status, series: None };
        return Output::new(row, &line, true);
    }
    let series = AlgebraContext::new(group, p).and_then(|ctx| series_report(&ctx, name, default_bound(&ctx)));
    match series {
        Ok(s) => {
            let row = format!(
                "{:<10} {:>2} {:>4} {:>4}  {:<34} {}",
                name,
                p,
                s.t_lower,
                s.t_upper,
                list(&s.lower_dims),
                list(&s.upper_dims)
            );
            let line = IndicesLine { name, p, status, series: Some(&s) };
            Output::new(row, &line, true)
        }
        Err(e) => {
            let row = format!("{name:<10} {p:>2}  error: {e}");
            let line = IndicesLine { name, p, status, series: None };
            Output::new(row, &line, false)
        }
    }
}

fn classify(name: &str, group: &Group, p: u64) -> Output {
    let status = lie_nilpotency_status(group, p);
    let c = classify_theorem1(group, p).ok();
    let row = match c {
        Some(c) => format!(
            "{:<10} {:>2}  {:<9} {}",
            name,
            p,
            c.condition.to_string(),
            predicted_text(Some(c.predicted))
        ),
        None => format!("{name:<10} {p:>2}  {}", verdict(status)),
    };
    let line = ClassifyLine {
        name: name.to_string(),
        p,
        status,
        condition: c.map(|c| c.condition),
        predicted: c.map(|c| c.predicted),
    };
    Output::new(row, &line, true)
}

/// The per-line report of `scan`.
pub fn scan_report(name: &str, group: &Group, p: u64) -> Report {
    cross_check(group, name, p).into()
}

fn scan(name: &str, group: &Group, p: u64) -> Output {
    let r = scan_report(name, group, p);
    let failed: Vec<_> = r.checks.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect();
    let checks = if !r.status.lie_nilpotent {
        verdict(r.status)
    } else if failed.is_empty() {
        format!("{} pass", r.checks.len())
    } else {
        format!("FAIL {}", failed.join(","))
    };
    let derived = r.gamma_orders.get(1).copied().unwrap_or(1);
    let row = format!(
        "{:<10} {:>2} {:>5} {:>5} {:>4} {:>4}  {:<9} {:<18} {}",
        name,
        p,
        r.order,
        derived,
        opt(r.t_lower),
        opt(r.t_upper),
        opt(r.condition),
        predicted_text(r.predicted),
        checks
    );
    let pass = r.all_pass();
    Output::new(row, &r, pass)
}

fn verify_proof(name: &str, group: &Group, p: u64) -> Vec<Output> {
    let condition = match classify_theorem1(group, p) {
        Ok(c) if matches!(c.condition, Condition::II | Condition::III | Condition::IV) => c.condition,
        _ => return Vec::new(),
    };
    let witnesses = match all_witness_pairs(group, condition) {
        Ok(w) if !w.is_empty() => w,
        Ok(_) => return vec![proof_failure(name, p, condition, "no witness pair".into())],
        Err(e) => return vec![proof_failure(name, p, condition, e.to_string())],
    };
    let ctx = match AlgebraContext::new(group, p) {
        Ok(ctx) => ctx,
        Err(e) => return vec![proof_failure(name, p, condition, e.to_string())],
    };
    // the first witness of each case, in element order
    let mut seen = Vec::new();
    let mut outputs = Vec::new();
    for w in &witnesses {
        if seen.contains(&w.case_tag) {
            continue;
        }
        seen.push(w.case_tag);
        let count = witnesses.iter().filter(|x| x.case_tag == w.case_tag).count();
        outputs.push(proof_case(name, group, &ctx, w, count));
    }
    outputs
}

fn proof_failure(name: &str, p: u64, condition: Condition, error: String) -> Output {
    let row = format!("{name:<10} {p:>2} {:<4} error: {error}", condition.to_string());
    let checks = [Check {
        name: "witness".into(),
        pass: false,
        detail: error.clone(),
    }];
    let line = ProofLine {
        name,
        p,
        condition,
        case: CaseTag::P2Case1,
        witnesses: 0,
        g: "",
        h: "",
        chain: None,
        steps: Vec::new(),
        final_nonzero: false,
        final_form: None,
        implied_lower_bound: None,
        error: Some(error),
        checks: &checks,
    };
    Output::new(row, &line, false)
}

fn proof_case(name: &str, group: &Group, ctx: &AlgebraContext<'_>, w: &WitnessProfile, count: usize) -> Output {
    let p = ctx.p() as u64;
    let result = verify_chain(ctx, w);
    let mut checks = vec![Check {
        name: "relations".into(),
        pass: w.relations_hold(),
        detail: w
            .relations
            .iter()
            .filter(|c| !c.pass)
            .map(|c| c.name.clone())
            .collect::<Vec<_>>()
            .join("; "),
    }];
    let case = format!("{:?}", w.case_tag);
    let (row_tail, line) = match &result {
        Ok(r) => {
            let form = r
                .final_form
                .as_ref()
                .map(|(s, m, f)| format!("{}{} {f}", if *s < 0 { "-" } else { "" }, group.name(*m)));
            checks.push(Check {
                name: "final".into(),
                pass: r.final_nonzero && form.is_some(),
                detail: form.clone().unwrap_or_else(|| "not of the form m * hats".into()),
            });
            let mismatched: Vec<_> = r.mismatches().map(|s| s.label.as_str()).collect();
            let matched = r.steps.iter().filter(|s| s.matched == Some(true)).count();
            let tail = format!(
                "{:<26} {:<7} nonzero, {}; displays matched {matched}/{}{}",
                r.chain,
                format!(">= {}", r.implied_lower_bound),
                form.as_deref().unwrap_or("unfactored"),
                r.steps.iter().filter(|s| s.matched.is_some()).count(),
                if mismatched.is_empty() {
                    String::new()
                } else {
                    format!(" (differs: {})", mismatched.join(" "))
                }
            );
            let line = ProofLine {
                name,
                p,
                condition: w.condition,
                case: w.case_tag,
                witnesses: count,
                g: group.name(w.g),
                h: group.name(w.h),
                chain: Some(&r.chain),
                steps: r
                    .steps
                    .iter()
                    .map(|s| StepLine {
                        label: &s.label,
                        matched: s.matched,
                    })
                    .collect(),
                final_nonzero: r.final_nonzero,
                final_form: form,
                implied_lower_bound: Some(r.implied_lower_bound),
                error: None,
                checks: &[],
            };
            (tail, serde_json::to_value(&line).expect("serializes"))
        }
        Err(e) => {
            checks.push(Check {
                name: "chain".into(),
                pass: false,
                detail: e.to_string(),
            });
            let line = ProofLine {
                name,
                p,
                condition: w.condition,
                case: w.case_tag,
                witnesses: count,
                g: group.name(w.g),
                h: group.name(w.h),
                chain: None,
                steps: Vec::new(),
                final_nonzero: false,
                final_form: None,
                implied_lower_bound: None,
                error: Some(e.to_string()),
                checks: &[],
            };
            (format!("FAIL {e}"), serde_json::to_value(&line).expect("serializes"))
        }
    };
    let mut json = line;
    json["checks"] = serde_json::to_value(&checks).expect("serializes");
    let pass = checks.iter().all(|c| c.pass);
    let row = format!(
        "{:<10} {:>2} {:<4} {:<8} {:>9}  {}",
        name,
        p,
        w.condition.to_string(),
        case,
        count,
        row_tail
    );
    Output::new(row, &json, pass)
}

fn units_class(name: &str, group: &Group, p: u64) -> Output {
    let skip = |reason: String| {
        let row = format!("{name:<10} {p:>2} {:>6} {:>4}  skipped: {reason}", "-", "-");
        let line = UnitsLine {
            name,
            p,
            unit_class: None,
            t_lower: None,
            skipped: Some(reason),
            checks: &[],
        };
        Output::new(row, &line, true)
    };
    let ctx = match AlgebraContext::new(group, p) {
        Ok(ctx) => ctx,
        Err(e) => return skip(e.to_string()),
    };
    let class = match unit_group_class(&ctx, DEFAULT_MAX_UNITS) {
        Ok(c) => c,
        Err(e @ (Error::NotPGroup { .. } | Error::ScaleExceeded { .. })) => return skip(e.to_string()),
        Err(e) => return skip(e.to_string()),
    };
    let t_lower = series_report(&ctx, name, default_bound(&ctx)).map(|s| s.t_lower);
    let checks = match &t_lower {
        Ok(t) => vec![Check {
            name: "cl(U) = t_L - 1".into(),
            pass: class + 1 == *t,
            detail: format!("cl(U)={class} t_L={t}"),
        }],
        Err(e) => vec![Check {
            name: "chains".into(),
            pass: false,
            detail: e.to_string(),
        }],
    };
    let pass = checks.iter().all(|c| c.pass);
    let t_lower = t_lower.ok();
    let row = format!(
        "{:<10} {:>2} {:>6} {:>4}  {}",
        name,
        p,
        class,
        opt(t_lower),
        if pass { "cl(U) = t_L - 1".to_string() } else { format!("FAIL {}", checks[0].detail) }
    );
    let line = UnitsLine {
        name,
        p,
        unit_class: Some(class),
        t_lower,
        skipped: None,
        checks: &checks,
    };
    Output::new(row, &line, pass)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::bundled_text;

    fn run_text(config: &RunConfig, catalog: &str) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(config, catalog, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    fn config(command: Command, group: &str, p: Option<u64>) -> RunConfig {
        RunConfig {
            group: Some(group.into()),
            prime: p,
            json: true,
            ..RunConfig::new(command)
        }
    }

    #[test]
    fn indices_of_an_abelian_group() {
        let (code, out, _) = run_text(&config(Command::Indices, "C3", Some(3)), bundled_text());
        assert_eq!(code, EXIT_OK);
        let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
        assert_eq!(v["series"]["t_lower"], 2);
        assert_eq!(v["series"]["t_upper"], 2);
    }

    #[test]
    fn classify_verdict_is_not_a_failure() {
        let (code, out, _) = run_text(&config(Command::Classify, "S3", Some(2)), bundled_text());
        assert_eq!(code, EXIT_OK);
        let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
        assert_eq!(v["status"]["lie_nilpotent"], false);
        assert_eq!(v["status"]["reason"], "GNotNilpotent");
    }

    #[test]
    fn input_errors_exit_two() {
        let (code, _, err) = run_text(&RunConfig::new(Command::Scan), "[{\"name\": 1}]");
        assert_eq!(code, EXIT_INPUT_ERROR);
        assert!(err.starts_with("error:"));
        let (code, _, _) = run_text(&config(Command::Scan, "nope", None), bundled_text());
        assert_eq!(code, EXIT_INPUT_ERROR);
        let (code, _, _) = run_text(&config(Command::Scan, "D4", Some(4)), bundled_text());
        assert_eq!(code, EXIT_INPUT_ERROR);
        let tiny = RunConfig {
            max_order: 4,
            ..config(Command::Analyze, "D4", None)
        };
        assert_eq!(run_text(&tiny, bundled_text()).0, EXIT_INPUT_ERROR);
    }

    #[test]
    fn scan_report_round_trips() {
        let (code, out, _) = run_text(&config(Command::Scan, "D4", None), bundled_text());
        assert_eq!(code, EXIT_OK);
        let lines: Vec<_> = out.lines().collect();
        assert_eq!(lines.len(), 2);
        for line in lines {
            let r: Report = serde_json::from_str(line).unwrap();
            assert_eq!(serde_json::to_string(&r).unwrap(), line);
        }
    }

    #[test]
    fn table_output_has_a_header() {
        let cfg = RunConfig {
            json: false,
            ..config(Command::Analyze, "Q8", None)
        };
        let (code, out, _) = run_text(&cfg, bundled_text());
        assert_eq!(code, EXIT_OK);
        let lines: Vec<_> = out.lines().collect();
        assert!(lines[0].starts_with("group"));
        assert!(lines[1].starts_with("Q8"));
        assert!(lines[1].contains("[8,2,1]"));
    }
}
