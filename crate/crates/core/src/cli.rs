//! Command-line front end: JSON in, JSON out, stable exit codes.
//!
//! Exit codes: 0 success, 1 failed checks (self-test failures or a
//! verify disagreement), 2 invalid input, 3 cross-formula mismatch,
//! 4 numeric non-convergence.  Errors are structured JSON on stderr.

use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::curve::{CurvePoint, HyperellipticCurve};
use crate::qalg::{QPoly, Rat};
use crate::rrspace::{h0, Divisor};
use crate::selftest;
use crate::thetanum::{
    load_riemann_data, order_numeric, period_matrix, save_riemann_data, NumError, RiemannData,
    ThetaParams,
};
use crate::vanishing::{gap_sequence, order_report, VanishError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;
pub const EXIT_NUMERIC: i32 = 4;

// ---- errors ----

/// A failure with its JSON shape and process exit code.
#[derive(Debug)]
pub struct CliError {
    pub kind: &'static str,
    pub message: String,
    pub code: i32,
}

impl CliError {
    fn input(message: impl Into<String>) -> Self {
        CliError {
            kind: "invalid-input",
            message: message.into(),
            code: EXIT_INPUT,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({ "error": { "kind": self.kind, "message": self.message } })
    }
}

impl From<VanishError> for CliError {
    fn from(e: VanishError) -> Self {
        match &e {
            VanishError::FormulaMismatch { .. } => CliError {
                kind: "formula-mismatch",
                message: e.to_string(),
                code: EXIT_MISMATCH,
            },
            _ => CliError::input(e.to_string()),
        }
    }
}

impl From<NumError> for CliError {
    fn from(e: NumError) -> Self {
        let kind = match &e {
            NumError::Curve(inner) => return CliError::input(inner.to_string()),
            NumError::BranchPointsTooClose { .. } => "branch-points-too-close",
            NumError::NotConverged(_) => "not-converged",
            NumError::PathNearBranchCut => "path-near-branch-cut",
            NumError::RadiusOverflow => "radius-overflow",
            NumError::CalibrationFailed { .. } => "calibration-failed",
            NumError::ZeroOnContour => "zero-on-contour",
            NumError::WindingAmbiguous { .. } => "winding-ambiguous",
            NumError::DegenerateLine => "degenerate-line",
        };
        CliError {
            kind,
            message: e.to_string(),
            code: EXIT_NUMERIC,
        }
    }
}

// ---- argument surface ----

#[derive(Parser, Debug)]
#[command(
    name = "thetakp",
    version,
    about = "Vanishing order of the theta function of y^2 = f(x) along the marked-point direction"
)]
pub struct Cli {
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Args, Debug)]
pub struct CommonArgs {
    /// Curve as JSON: {"f": ["c0", "c1", ...]} with exact rationals
    /// "p/q"; `@path` reads the JSON from a file
    #[arg(long)]
    pub curve: Option<String>,
    /// Divisor as JSON: [{"point": <point>, "mult": 1}, ...]; `@path`
    /// reads from a file
    #[arg(long)]
    pub divisor: Option<String>,
    /// Point: `infinity` or {"x": "p/q", "y": "p/q"}; `@path` reads
    /// from a file
    #[arg(long)]
    pub point: Option<String>,
    /// Twist for the weight formula (defaults to the genus)
    #[arg(long)]
    pub n: Option<i64>,
    /// Theta accuracy target
    #[arg(long, default_value_t = 1e-12)]
    pub eps: f64,
    /// Contour radius for the winding count
    #[arg(long, default_value_t = 1e-2)]
    pub radius: f64,
    /// Starting quadrature node count for period integrals
    #[arg(long, default_value_t = 256)]
    pub quad_points: usize,
    /// Write the JSON report to this file instead of stdout
    #[arg(long)]
    pub json_out: Option<PathBuf>,
    /// Worker threads for the self-test
    #[arg(long)]
    pub threads: Option<usize>,
    /// Reuse period data from this file when it matches, else store it
    #[arg(long)]
    pub periods_cache: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Dimension of the space of functions bounded by the divisor
    H0(CommonArgs),
    /// Gap sequence of the divisor at the point
    Gaps(CommonArgs),
    /// Inflectionary weight of the divisor at the point
    Weight(CommonArgs),
    /// Vanishing order by the three exact formulas
    Order(CommonArgs),
    /// Vanishing order by the numeric winding count
    ThetaOrder(CommonArgs),
    /// Exact and numeric orders with an agreement verdict
    Verify(CommonArgs),
    /// Built-in acceptance suite over reference curves
    Selftest(CommonArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JobCommand {
    H0,
    Gaps,
    Weight,
    Order,
    ThetaOrder,
    Verify,
    Selftest,
}

/// A fully parsed and validated invocation.
pub struct JobConfig {
    pub command: JobCommand,
    pub curve: Option<HyperellipticCurve>,
    pub divisor: Option<Divisor>,
    pub point: Option<CurvePoint>,
    pub n: Option<i64>,
    pub eps: f64,
    pub radius: f64,
    pub quad_points: usize,
    pub json_out: Option<PathBuf>,
    pub threads: usize,
    pub periods_cache: Option<PathBuf>,
}

// ---- input parsing ----

/// Inline argument body, or file contents when the argument is
/// `@path`.
fn arg_body(s: &str) -> Result<String, CliError> {
    match s.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| CliError::input(format!("cannot read {path}: {e}"))),
        None => Ok(s.to_string()),
    }
}

/// Curve from its JSON form `{"f": ["c0", "c1", ...]}`.
pub fn parse_curve(s: &str) -> Result<HyperellipticCurve, CliError> {
    let s = &arg_body(s)?;
    #[derive(Deserialize)]
    struct CurveRepr {
        f: Vec<Rat>,
    }
    let repr: CurveRepr = serde_json::from_str(s)
        .map_err(|e| CliError::input(format!("curve JSON does not parse: {e}")))?;
    HyperellipticCurve::new(QPoly::new(repr.f)).map_err(|e| CliError::input(e.to_string()))
}

fn point_from_value(c: &HyperellipticCurve, v: &Value) -> Result<CurvePoint, CliError> {
    match v {
        Value::String(s) if s == "infinity" => Ok(CurvePoint::Infinity),
        Value::Object(m) => {
            let coord = |key: &str| -> Result<Rat, CliError> {
                let field = m
                    .get(key)
                    .ok_or_else(|| CliError::input(format!("point is missing \"{key}\"")))?;
                match field {
                    Value::String(s) => Rat::from_str(s).map_err(CliError::input),
                    Value::Number(n) if n.is_i64() => Ok(Rat::from_int(n.as_i64().unwrap())),
                    other => Err(CliError::input(format!(
                        "point coordinate {key} must be an exact rational string, got {other}"
                    ))),
                }
            };
            c.affine_point(coord("x")?, coord("y")?)
                .map_err(|e| CliError::input(e.to_string()))
        }
        other => Err(CliError::input(format!(
            "point must be \"infinity\" or an {{\"x\", \"y\"}} object, got {other}"
        ))),
    }
}

/// Point from `infinity` or `{"x": "p/q", "y": "p/q"}`; membership on
/// the curve is validated.
pub fn parse_point(c: &HyperellipticCurve, s: &str) -> Result<CurvePoint, CliError> {
    let s = &arg_body(s)?;
    if s.trim() == "infinity" {
        return Ok(CurvePoint::Infinity);
    }
    let v: Value = serde_json::from_str(s)
        .map_err(|e| CliError::input(format!("point does not parse: {e}")))?;
    point_from_value(c, &v)
}

/// Divisor from its JSON form `[{"point": <point>, "mult": k}, ...]`.
pub fn parse_divisor(c: &HyperellipticCurve, s: &str) -> Result<Divisor, CliError> {
    let s = &arg_body(s)?;
    let v: Value = serde_json::from_str(s)
        .map_err(|e| CliError::input(format!("divisor JSON does not parse: {e}")))?;
    let Value::Array(items) = v else {
        return Err(CliError::input("divisor must be a JSON array"));
    };
    let mut entries = Vec::with_capacity(items.len());
    for item in &items {
        let Value::Object(m) = item else {
            return Err(CliError::input("divisor entries must be objects"));
        };
        let pv = m
            .get("point")
            .ok_or_else(|| CliError::input("divisor entry is missing \"point\""))?;
        let mult = m
            .get("mult")
            .and_then(Value::as_i64)
            .ok_or_else(|| CliError::input("divisor entry is missing integer \"mult\""))?;
        entries.push((point_from_value(c, pv)?, mult));
    }
    Ok(Divisor::from_entries(entries))
}

impl JobConfig {
    pub fn from_cli(cli: Cli) -> Result<JobConfig, CliError> {
        let (command, a) = match cli.cmd {
            Cmd::H0(a) => (JobCommand::H0, a),
            Cmd::Gaps(a) => (JobCommand::Gaps, a),
            Cmd::Weight(a) => (JobCommand::Weight, a),
            Cmd::Order(a) => (JobCommand::Order, a),
            Cmd::ThetaOrder(a) => (JobCommand::ThetaOrder, a),
            Cmd::Verify(a) => (JobCommand::Verify, a),
            Cmd::Selftest(a) => (JobCommand::Selftest, a),
        };

        if !(a.eps > 0.0) || !(a.radius > 0.0) {
            return Err(CliError::input("eps and radius must be positive"));
        }
        if a.quad_points < 16 {
            return Err(CliError::input("quad-points must be at least 16"));
        }

        let needs_curve = command != JobCommand::Selftest;
        let needs_divisor = needs_curve;
        let needs_point = !matches!(command, JobCommand::Selftest | JobCommand::H0);

        let curve = match (&a.curve, needs_curve) {
            (Some(s), _) => Some(parse_curve(s)?),
            (None, true) => return Err(CliError::input("--curve is required")),
            (None, false) => None,
        };
        let divisor = match (&a.divisor, needs_divisor) {
            (Some(s), _) => Some(parse_divisor(curve.as_ref().unwrap(), s)?),
            (None, true) => return Err(CliError::input("--divisor is required")),
            (None, false) => None,
        };
        let point = match (&a.point, needs_point) {
            (Some(s), _) => Some(parse_point(curve.as_ref().unwrap(), s)?),
            (None, true) => return Err(CliError::input("--point is required")),
            (None, false) => None,
        };

        let threads = a.threads.unwrap_or_else(|| {
            std::thread::available_parallelism()
                .map(|n| n.get().min(8))
                .unwrap_or(1)
        });
        if threads == 0 {
            return Err(CliError::input("threads must be positive"));
        }

        Ok(JobConfig {
            command,
            curve,
            divisor,
            point,
            n: a.n,
            eps: a.eps,
            radius: a.radius,
            quad_points: a.quad_points,
            json_out: a.json_out,
            threads,
            periods_cache: a.periods_cache,
        })
    }
}

// ---- execution ----

fn riemann_data(cfg: &JobConfig, c: &HyperellipticCurve) -> Result<RiemannData, CliError> {
    if let Some(path) = &cfg.periods_cache {
        if let Some(rd) = load_riemann_data(path, c, cfg.quad_points) {
            return Ok(rd);
        }
        let rd = period_matrix(c, cfg.quad_points)?;
        save_riemann_data(path, c, &rd)
            .map_err(|e| CliError::input(format!("cannot write period cache: {e}")))?;
        return Ok(rd);
    }
    Ok(period_matrix(c, cfg.quad_points)?)
}

fn numeric_order(cfg: &JobConfig) -> Result<i64, CliError> {
    let c = cfg.curve.as_ref().unwrap();
    let lam = cfg.divisor.as_ref().unwrap();
    let p = cfg.point.as_ref().unwrap();
    if lam.degree() != c.genus() as i64 - 1 {
        return Err(CliError::input(format!(
            "the class must have degree g - 1 = {}, got {}",
            c.genus() as i64 - 1,
            lam.degree()
        )));
    }
    let rd = riemann_data(cfg, c)?;
    let tp = ThetaParams::for_data(&rd, cfg.eps)?;
    Ok(order_numeric(&rd, c, lam, p, cfg.radius, &tp)?)
}

fn execute(cfg: &JobConfig) -> Result<(Value, i32), CliError> {
    match cfg.command {
        JobCommand::H0 => {
            let n = h0(cfg.curve.as_ref().unwrap(), cfg.divisor.as_ref().unwrap())
                .map_err(|e| CliError::input(e.to_string()))?;
            Ok((json!({ "h0": n }), EXIT_OK))
        }
        JobCommand::Gaps => {
            let seq = gap_sequence(
                cfg.curve.as_ref().unwrap(),
                cfg.divisor.as_ref().unwrap(),
                cfg.point.as_ref().unwrap(),
            )?;
            Ok((
                json!({ "gaps": seq.gaps(), "weight": seq.weight() }),
                EXIT_OK,
            ))
        }
        JobCommand::Weight => {
            let seq = gap_sequence(
                cfg.curve.as_ref().unwrap(),
                cfg.divisor.as_ref().unwrap(),
                cfg.point.as_ref().unwrap(),
            )?;
            Ok((json!({ "weight": seq.weight() }), EXIT_OK))
        }
        JobCommand::Order => {
            let report = order_report(
                cfg.curve.as_ref().unwrap(),
                cfg.divisor.as_ref().unwrap(),
                cfg.point.as_ref().unwrap(),
                cfg.n,
            )?;
            let v = serde_json::to_value(&report).expect("report serializes");
            Ok((v, EXIT_OK))
        }
        JobCommand::ThetaOrder => {
            let k = numeric_order(cfg)?;
            Ok((json!({ "numeric": k }), EXIT_OK))
        }
        JobCommand::Verify => {
            let report = order_report(
                cfg.curve.as_ref().unwrap(),
                cfg.divisor.as_ref().unwrap(),
                cfg.point.as_ref().unwrap(),
                cfg.n,
            )?;
            let k = numeric_order(cfg)?;
            let agree = report.order() == k;
            let mut v = serde_json::to_value(&report).expect("report serializes");
            v["numeric"] = json!(k);
            v["agree"] = json!(agree);
            Ok((v, if agree { EXIT_OK } else { EXIT_CHECK_FAILED }))
        }
        JobCommand::Selftest => {
            let results = selftest::run_all(cfg.threads);
            let all_pass = results.iter().all(|r| r.passed);
            let v = json!({
                "passed": results.iter().filter(|r| r.passed).count(),
                "failed": results.iter().filter(|r| !r.passed).count(),
                "criteria": results.iter().map(|r| json!({
                    "name": r.name,
                    "passed": r.passed,
                    "detail": r.detail,
                })).collect::<Vec<_>>(),
            });
            Ok((v, if all_pass { EXIT_OK } else { EXIT_CHECK_FAILED }))
        }
    }
}

fn emit(cfg: &JobConfig, v: &Value) -> Result<(), CliError> {
    let body = serde_json::to_string(v).expect("report serializes");
    match &cfg.json_out {
        Some(path) => std::fs::write(path, body + "\n")
            .map_err(|e| CliError::input(format!("cannot write {}: {e}", path.display()))),
        None => {
            println!("{body}");
            Ok(())
        }
    }
}

/// Run one job and return the process exit code; the report goes to
/// stdout or `--json-out`, errors go to stderr as structured JSON.
pub fn run(cfg: &JobConfig) -> i32 {
    match execute(cfg).and_then(|(v, code)| emit(cfg, &v).map(|()| code)) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("{}", e.to_json());
            e.code
        }
    }
}
