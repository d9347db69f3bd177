//! Job-driven front end: parsing, report documents, random sweeps and plots.
//!
//! Reports are JSON documents with schema `realslice-report/1`. Everything
//! except the `timings` field is a pure function of the job.

pub mod job;
pub mod random;
pub mod selftest;
pub mod svg;

use std::collections::BTreeMap;
use std::time::Instant;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::interval::Interval;
use crate::linking::{chart_epsilons, lk_boundary, verify_theorem5, LinkError, LinkingReport};
use crate::poly::{PolyError, Rational};
use crate::slice::{certify_slice, CoorientedBase, SliceError};
use crate::solve::{real_base_points, CertifiedBasePoint, ChartId, SolveError};

pub use job::{Command, JobOverrides, JobSpec, PencilSource, Window};
pub use random::gen_random;
pub use svg::emit_svg;

pub const SCHEMA: &str = "realslice-report/1";

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_INVARIANT: i32 = 4;

/// A structured error as it appears in a report.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ErrorEntry {
    pub module: &'static str,
    pub kind: String,
    pub message: String,
    pub input: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chart: Option<ChartId>,
    #[serde(rename = "box", skip_serializing_if = "Option::is_none")]
    pub bbox: Option<[Interval; 2]>,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CliError {
    #[error("input error: {0}")]
    Input(String),
    #[error("{}: {}", .0.module, .0.message)]
    Domain(Box<ErrorEntry>),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("no generic instance found for seed {seed}")]
    ExhaustedRetries { seed: u64 },
    #[error("plot window is empty")]
    EmptyWindow,
}

impl CliError {
    pub fn input(msg: impl Into<String>) -> Self {
        CliError::Input(msg.into())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) | CliError::EmptyWindow => EXIT_INPUT,
            CliError::Domain(_) | CliError::ExhaustedRetries { .. } => EXIT_DOMAIN,
            CliError::Invariant(_) => EXIT_INVARIANT,
        }
    }

    pub fn entry(&self) -> ErrorEntry {
        match self {
            CliError::Domain(e) => (**e).clone(),
            other => ErrorEntry {
                module: "cli",
                kind: variant_name(other),
                message: other.to_string(),
                input: String::new(),
                chart: None,
                bbox: None,
            },
        }
    }

    fn from_poly(e: &PolyError, input: &str) -> Self {
        CliError::Input(format!("{e} (in `{input}`)"))
    }

    pub fn from_solve(e: &SolveError, input: &str) -> Self {
        if let SolveError::Poly(p) = e {
            return Self::from_poly(p, input);
        }
        let (chart, bbox) = match e {
            SolveError::SingularOrTangent { chart, bbox, .. } => (Some(*chart), Some((**bbox).clone())),
            _ => (None, None),
        };
        CliError::Domain(Box::new(ErrorEntry {
            module: "solve",
            kind: variant_name(e),
            message: e.to_string(),
            input: input.to_string(),
            chart,
            bbox,
        }))
    }

    pub fn from_slice(e: &SliceError, input: &str) -> Self {
        match e {
            SliceError::Solve(s) => Self::from_solve(s, input),
            SliceError::Poly(p) => Self::from_poly(p, input),
            SliceError::RealP => domain("slice", e, input),
        }
    }

    pub fn from_link(e: &LinkError, input: &str) -> Self {
        match e {
            LinkError::Poly(p) => Self::from_poly(p, input),
            LinkError::InvariantBreach(m) => CliError::Invariant(m.clone()),
            _ => domain("linking", e, input),
        }
    }
}

fn domain<E: std::fmt::Display + std::fmt::Debug>(module: &'static str, e: &E, input: &str) -> CliError {
    CliError::Domain(Box::new(ErrorEntry {
        module,
        kind: variant_name(e),
        message: e.to_string(),
        input: input.to_string(),
        chart: None,
        bbox: None,
    }))
}

/// The innermost enum variant name of an error's `Debug` form.
fn variant_name(e: &impl std::fmt::Debug) -> String {
    let mut s = format!("{e:?}");
    loop {
        let name: String = s.chars().take_while(|c| c.is_alphanumeric() || *c == '_').collect();
        let rest = &s[name.len()..];
        if rest.starts_with('(') && matches!(name.as_str(), "Solve" | "Poly" | "Domain") {
            s = rest[1..].to_string();
            continue;
        }
        return name;
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct InputEcho {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pencil: Option<String>,
    pub line: String,
    pub orient: &'static str,
    pub seed: u64,
    pub count: usize,
    pub degrees: [u32; 2],
    pub window: Window,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Timings {
    pub total_ms: f64,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub steps: BTreeMap<String, f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportDocument {
    pub schema: &'static str,
    pub command: Command,
    pub status: &'static str,
    pub input: InputEcho,
    pub result: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorEntry>,
    pub timings: Timings,
    #[serde(skip)]
    pub svg: Option<String>,
    #[serde(skip)]
    pub exit_code: i32,
}

impl ReportDocument {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    /// The document without timings; identical across reruns of a job.
    pub fn payload(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("report serializes");
        v.as_object_mut().expect("object").remove("timings");
        v
    }
}

fn rat_str(r: &Rational) -> String {
    r.to_string()
}

#[derive(Serialize)]
struct PointEntry {
    chart: ChartId,
    #[serde(rename = "box")]
    bbox: [Interval; 2],
    approx: [f64; 3],
    multiplicity: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    det_sign: Option<i8>,
    #[serde(skip_serializing_if = "Option::is_none")]
    epsilon: Option<i8>,
}

fn point_entry(p: &CertifiedBasePoint, det_sign: Option<i8>, epsilon: Option<i8>) -> PointEntry {
    PointEntry {
        chart: p.chart(),
        bbox: p.bbox().clone(),
        approx: p.approx(),
        multiplicity: p.multiplicity(),
        det_sign,
        epsilon,
    }
}

fn pencil_of(job: &JobSpec) -> Result<(&crate::poly::HomPoly, &crate::poly::HomPoly, &str), CliError> {
    let (r, s) = job.pencil.as_ref().ok_or_else(|| CliError::input("no pencil given"))?;
    Ok((r, s, job.pencil_text.as_deref().unwrap_or("")))
}

fn certify(job: &JobSpec) -> Result<(CoorientedBase, String), CliError> {
    let (r, s, text) = pencil_of(job)?;
    let base = certify_slice(r, s).map_err(|e| CliError::from_slice(&e, text))?;
    Ok((base, text.to_string()))
}

fn report_json(rep: &LinkingReport) -> Value {
    serde_json::to_value(rep).expect("report serializes")
}

fn run_solve(job: &JobSpec) -> Result<Value, CliError> {
    let (r, s, text) = pencil_of(job)?;
    let pts = real_base_points(r, s).map_err(|e| CliError::from_solve(&e, text))?;
    let entries: Vec<PointEntry> = pts.iter().map(|p| point_entry(p, None, None)).collect();
    Ok(json!({ "degree": r.degree().max(s.degree()), "points": entries }))
}

fn run_certify(job: &JobSpec) -> Result<Value, CliError> {
    let (base, _) = certify(job)?;
    let entries: Vec<PointEntry> = base.points.iter().map(|f| point_entry(&f.point, Some(f.det_sign), None)).collect();
    Ok(json!({ "degree": base.degree(), "points": entries }))
}

fn run_link(job: &JobSpec) -> Result<Value, CliError> {
    let (base, text) = certify(job)?;
    let input = format!("{text} / line {}", job.line);
    let eps = chart_epsilons(&job.line, &base).map_err(|e| CliError::from_link(&e, &input))?;
    let lk_c = Rational::new(eps.iter().map(|&e| e as i64).sum::<i64>().into(), 2.into());
    let lk_b = lk_boundary(&job.line, &base).map_err(|e| CliError::from_link(&e, &input))?;
    let entries: Vec<PointEntry> = base
        .points
        .iter()
        .zip(&eps)
        .map(|(f, &e)| point_entry(&f.point, Some(f.det_sign), Some(e)))
        .collect();
    if lk_c != lk_b {
        return Err(CliError::Invariant(format!("lk_chart {lk_c} != lk_boundary {lk_b}")));
    }
    Ok(json!({
        "degree": base.degree(),
        "points": entries,
        "lk_chart": rat_str(&lk_c),
        "lk_boundary": rat_str(&lk_b),
    }))
}

fn run_verify(job: &JobSpec) -> Result<Value, CliError> {
    let (base, text) = certify(job)?;
    let input = format!("{text} / line {}", job.line);
    let rep = verify_theorem5(&job.line, &base).map_err(|e| CliError::from_link(&e, &input))?;
    let entries: Vec<PointEntry> = base
        .points
        .iter()
        .zip(&rep.epsilons)
        .map(|(f, &e)| point_entry(&f.point, Some(f.det_sign), Some(e)))
        .collect();
    let mut v = report_json(&rep);
    v["points_detail"] = serde_json::to_value(entries).expect("points serialize");
    if !rep.residual.is_zero() {
        return Err(CliError::Invariant(format!("residual {} on {input}", rep.residual)));
    }
    Ok(v)
}

fn run_plot(job: &JobSpec) -> Result<(Value, String), CliError> {
    let (base, _) = certify(job)?;
    let svg = emit_svg(&base, &job.line, &job.window)?;
    Ok((json!({ "points": base.points.len(), "svg_bytes": svg.len() }), svg))
}

#[derive(Serialize)]
struct BatchRow {
    index: usize,
    seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    degree: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pencil: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    line: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    points: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    lk: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    h_dot_v: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    residual: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
    #[serde(skip)]
    exit: i32,
}

fn batch_one(index: usize, seed: u64, degrees: (u32, u32)) -> BatchRow {
    let mut row = BatchRow {
        index,
        seed,
        degree: None,
        pencil: None,
        line: None,
        points: None,
        lk: None,
        h_dot_v: None,
        residual: None,
        error: None,
        exit: EXIT_OK,
    };
    let (base, line) = match gen_random(seed, degrees) {
        Ok(x) => x,
        Err(e) => {
            row.exit = e.exit_code();
            row.error = Some(e.to_string());
            return row;
        }
    };
    row.degree = Some(base.degree());
    row.pencil = Some(format!("{};{}", base.pencil.r(), base.pencil.s()));
    row.line = Some(line.to_string());
    row.points = Some(base.points.len());
    match verify_theorem5(&line, &base) {
        Ok(rep) => {
            if !rep.residual.is_zero() {
                row.exit = EXIT_INVARIANT;
            }
            row.lk = Some(rat_str(&rep.lk_chart));
            row.h_dot_v = Some(rep.h_dot_v);
            row.residual = Some(rat_str(&rep.residual));
        }
        Err(e) => {
            let e = CliError::from_link(&e, row.pencil.as_deref().unwrap_or(""));
            row.exit = e.exit_code();
            row.error = Some(e.to_string());
        }
    }
    row
}

/// Seeds of the instances of a batch.
pub fn batch_seeds(seed: u64, count: usize) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| rng.gen()).collect()
}

fn run_batch(job: &JobSpec) -> (Value, Option<CliError>) {
    let seeds = batch_seeds(job.seed, job.count);
    let rows: Vec<BatchRow> = seeds.par_iter().enumerate().map(|(i, &s)| batch_one(i, s, job.degrees)).collect();
    let zero = rows.iter().filter(|r| r.residual.as_deref() == Some("0")).count();
    let worst = rows.iter().map(|r| r.exit).max().unwrap_or(EXIT_OK);
    let v = json!({ "instances": rows, "residual_zero": zero, "total": rows.len() });
    let err = match worst {
        EXIT_OK => None,
        EXIT_INVARIANT => Some(CliError::Invariant(format!("{} of {} instances failed", rows.len() - zero, rows.len()))),
        _ => Some(CliError::Domain(Box::new(ErrorEntry {
            module: "cli",
            kind: "BatchInstanceFailed".into(),
            message: format!("{} of {} instances did not complete", rows.len() - zero, rows.len()),
            input: format!("seed {}", job.seed),
            chart: None,
            bbox: None,
        }))),
    };
    (v, err)
}

fn run_selftest(timings: &mut Timings) -> (Value, Option<CliError>) {
    let outcomes = selftest::run_all();
    let mut rows = Vec::new();
    for o in &outcomes {
        timings.steps.insert(format!("criterion_{}", o.id), o.seconds * 1000.0);
        rows.push(json!({ "id": o.id, "name": o.name, "pass": o.passed, "detail": o.detail }));
    }
    let failed: Vec<u32> = outcomes.iter().filter(|o| !o.passed).map(|o| o.id).collect();
    let err = (!failed.is_empty()).then(|| CliError::Invariant(format!("criteria {failed:?} failed")));
    (json!({ "criteria": rows }), err)
}

/// Runs a job; never panics on bad input and never writes files.
pub fn run_job(job: &JobSpec) -> ReportDocument {
    let start = Instant::now();
    let mut timings = Timings::default();
    let mut svg = None;
    let (result, err) = match job.command {
        Command::Solve => split(run_solve(job)),
        Command::Certify => split(run_certify(job)),
        Command::Link => split(run_link(job)),
        Command::Verify => split(run_verify(job)),
        Command::Plot => match run_plot(job) {
            Ok((v, s)) => {
                svg = Some(s);
                (v, None)
            }
            Err(e) => (Value::Null, Some(e)),
        },
        Command::Batch => run_batch(job),
        Command::Selftest => run_selftest(&mut timings),
    };
    timings.total_ms = start.elapsed().as_secs_f64() * 1000.0;
    ReportDocument {
        schema: SCHEMA,
        command: job.command,
        status: if err.is_none() { "ok" } else { "error" },
        input: InputEcho {
            pencil: job.pencil_text.clone(),
            line: job.line.to_string(),
            orient: if job.reversed { "-" } else { "+" },
            seed: job.seed,
            count: job.count,
            degrees: [job.degrees.0, job.degrees.1],
            window: job.window,
        },
        result,
        error: err.as_ref().map(CliError::entry),
        timings,
        svg,
        exit_code: err.as_ref().map_or(EXIT_OK, CliError::exit_code),
    }
}

fn split(r: Result<Value, CliError>) -> (Value, Option<CliError>) {
    match r {
        Ok(v) => (v, None),
        Err(e) => (Value::Null, Some(e)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn job(cmd: Command, pencil: &str) -> JobSpec {
        JobSpec::from_overrides(JobOverrides {
            command: Some(cmd),
            pencil: Some(PencilSource::Inline(pencil.into())),
            ..Default::default()
        })
        .unwrap()
    }

    #[test]
    fn verify_circle_and_axes() {
        let rep = run_job(&job(Command::Verify, "x^2+y^2-z^2;xy"));
        assert_eq!(rep.exit_code, EXIT_OK, "{}", rep.to_json());
        assert_eq!(rep.result["residual"], "0");
        assert_eq!(rep.result["h_dot_v"], 1);
        assert_eq!(rep.result["lk_chart"], "0");
    }

    #[test]
    fn tangency_is_a_domain_error_with_box() {
        let rep = run_job(&job(Command::Certify, "x^2+y^2-z^2;(y-z)x"));
        assert_eq!(rep.exit_code, EXIT_DOMAIN);
        let e = rep.error.unwrap();
        assert_eq!(e.module, "solve");
        assert_eq!(e.kind, "SingularOrTangent");
        assert!(e.bbox.is_some());
    }

    #[test]
    fn error_classes() {
        let rep = run_job(&job(Command::Solve, "x^2;y"));
        assert_eq!(rep.exit_code, EXIT_INPUT);
        let rep = run_job(&job(Command::Solve, "x^2;xy"));
        assert_eq!(rep.exit_code, EXIT_DOMAIN);
        assert_eq!(rep.error.unwrap().kind, "CommonFactor");
        let mut j = job(Command::Link, "x;y");
        j.line = job::parse_line("0,0,1;1,0,0").unwrap();
        let rep = run_job(&j);
        assert_eq!(rep.exit_code, EXIT_DOMAIN);
        assert_eq!(rep.error.unwrap().module, "linking");
    }

    #[test]
    fn batch_is_deterministic() {
        let mut j = job(Command::Batch, "x;y");
        j.pencil = None;
        j.seed = 7;
        j.count = 12;
        j.degrees = (1, 3);
        let a = run_job(&j);
        let b = run_job(&j);
        assert_eq!(a.exit_code, EXIT_OK);
        assert_eq!(a.result["residual_zero"], 12);
        assert_eq!(a.payload(), b.payload());
    }
}
