//! Command-line front end: parsing, solving, checking and verification.

use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::cramer::{self, CramerError};
use crate::instance::{rat_to_json, signed_to_json, trop_to_json, Basis, Instance};
use crate::linalg::{check_generic, GenericityMode, GenericityReport, Mat, SignedMat};
use crate::oracle::{self, OracleError, PuiseuxNum};
use crate::pivot::{BreakSide, Cause, PivotError, PivotTrace};
use crate::semiring::{Rat, SignedTrop, Trop};
use crate::simplex::{self, Certificate, PivotRule, RunTrace, SolveError};
use crate::tangent;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_DEGENERATE: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;
pub const EXIT_USAGE: i32 = 64;

#[derive(Parser)]
#[command(
    name = "troplp",
    about = "Exact tropical linear programming over the max-plus semiring",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the tropical simplex from a basic point
    Solve {
        instance: PathBuf,
        /// Starting basis as comma-separated row indices (defaults to the
        /// instance's initial_basis, then to an enumerated one)
        #[arg(long, value_delimiter = ',')]
        basis: Option<Vec<usize>>,
        #[arg(long, default_value = "bland", value_parser = clap::value_parser!(PivotRule))]
        rule: PivotRule,
        /// Write the run trace as JSON to this file
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Write tangent digraphs along the run as Graphviz files into this directory
        #[arg(long, value_name = "DIR")]
        emit_digraphs: Option<PathBuf>,
        #[arg(long)]
        json: bool,
        /// Display row and coordinate indices 1-based
        #[arg(long)]
        one_based: bool,
        /// Attest that every feasible point has finite coordinates even
        /// without explicit non-negativity rows
        #[arg(long)]
        assume_positive: bool,
    },
    /// Check optimality of a basic point
    Certify {
        instance: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        basis: Vec<usize>,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        assume_positive: bool,
    },
    /// Perform a single pivot and print its segment trace
    Pivot {
        instance: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        basis: Vec<usize>,
        /// Row leaving the active set
        #[arg(long)]
        leaving: usize,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        one_based: bool,
        #[arg(long)]
        assume_positive: bool,
    },
    /// Print the tropical reduced costs of a basis
    ReducedCosts {
        instance: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        basis: Vec<usize>,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        assume_positive: bool,
    },
    /// Solve a signed balance system M ⊙ y ∇ d
    Cramer {
        /// JSON file {"M": [[entry, ...], ...], "d": [entry, ...]}
        system: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Genericity checks on the constraint matrix
    Check {
        instance: PathBuf,
        #[arg(long, default_value = "exhaustive", value_parser = parse_genericity)]
        genericity: GenericityMode,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        one_based: bool,
    },
    /// Enumerate all feasible basic points
    Enumerate {
        instance: PathBuf,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        assume_positive: bool,
    },
    /// Run solver, Puiseux oracle and enumeration, and compare
    Verify {
        instance: PathBuf,
        #[arg(long, value_delimiter = ',')]
        basis: Option<Vec<usize>>,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        assume_positive: bool,
    },
}

fn parse_genericity(s: &str) -> Result<GenericityMode, String> {
    match s {
        "exhaustive" => Ok(GenericityMode::Exhaustive),
        "asserted" => Ok(GenericityMode::Asserted),
        other => Err(format!("unknown mode {other:?} (expected exhaustive|asserted)")),
    }
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Failure { code, message: message.into() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::new(EXIT_FAILURE, format!("io error: {e}"))
    }
}

impl From<crate::instance::InstanceError> for Failure {
    fn from(e: crate::instance::InstanceError) -> Self {
        Failure::new(EXIT_FAILURE, e.to_string())
    }
}

impl From<SolveError> for Failure {
    fn from(e: SolveError) -> Self {
        let code = match &e {
            SolveError::Pivot(PivotError::Degenerate { .. })
            | SolveError::Pivot(PivotError::NotStandard(_))
            | SolveError::Pivot(PivotError::Tangent(tangent::TangentError::CyclicGraph))
            | SolveError::DegenerateStart(_)
            | SolveError::DualDegenerate(_)
            | SolveError::BasisRepeats(_) => EXIT_DEGENERATE,
            _ => EXIT_FAILURE,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<PivotError> for Failure {
    fn from(e: PivotError) -> Self {
        let code = match &e {
            PivotError::Degenerate { .. } | PivotError::NotStandard(_) => EXIT_DEGENERATE,
            _ => EXIT_FAILURE,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<CramerError> for Failure {
    fn from(e: CramerError) -> Self {
        let code = match &e {
            CramerError::SingularSystem
            | CramerError::UnreachableColumn(_)
            | CramerError::DualDegenerate(_) => EXIT_DEGENERATE,
            _ => EXIT_FAILURE,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        let code = match &e {
            OracleError::DegenerateLift(_) | OracleError::UnboundedLift => EXIT_DEGENERATE,
            _ => EXIT_FAILURE,
        };
        Failure::new(code, e.to_string())
    }
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(command: Command) -> Result<(), Failure> {
    match command {
        Command::Solve { instance, basis, rule, trace, emit_digraphs, json, one_based, assume_positive } => {
            cmd_solve(&instance, basis, rule, trace, emit_digraphs, json, one_based, assume_positive)
        }
        Command::Certify { instance, basis, json, assume_positive } => {
            cmd_certify(&instance, basis, json, assume_positive)
        }
        Command::Pivot { instance, basis, leaving, json, one_based, assume_positive } => {
            cmd_pivot(&instance, basis, leaving, json, one_based, assume_positive)
        }
        Command::ReducedCosts { instance, basis, json, assume_positive } => {
            cmd_reduced_costs(&instance, basis, json, assume_positive)
        }
        Command::Cramer { system, json } => cmd_cramer(&system, json),
        Command::Check { instance, genericity, json, one_based } => {
            cmd_check(&instance, genericity, json, one_based)
        }
        Command::Enumerate { instance, json, assume_positive } => {
            cmd_enumerate(&instance, json, assume_positive)
        }
        Command::Verify { instance, basis, json, assume_positive } => {
            cmd_verify(&instance, basis, json, assume_positive)
        }
    }
}

fn load_instance(path: &Path, assume_positive: bool) -> Result<Instance, Failure> {
    let bytes = std::fs::read(path)?;
    let mut inst = Instance::parse(&bytes)?;
    inst.assume_positive = assume_positive;
    let missing = inst.vars_missing_unit_row();
    if !missing.is_empty() && !assume_positive {
        eprintln!(
            "warning: variables {missing:?} have no explicit non-negativity row; \
             pass --assume-positive if every feasible point has finite coordinates"
        );
    }
    Ok(inst)
}

fn enum_bound() -> u128 {
    std::env::var("TROPLP_MAX_ENUM")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(oracle::DEFAULT_ENUM_BOUND)
}

/// Starting basis: the explicit request, then the instance's
/// `initial_basis`, then (as a convenience outside the core method) the
/// first feasible basic point found by enumeration.
fn resolve_start(
    inst: &Instance,
    requested: Option<Vec<usize>>,
) -> Result<(Basis, Vec<Rat>), Failure> {
    let basis = match requested {
        Some(rows) => Some(Basis::new(rows)?),
        None => inst.initial_basis.clone(),
    };
    if let Some(basis) = basis {
        let x = simplex::basic_point(inst, &basis)?;
        return Ok((basis, x));
    }
    eprintln!("note: no starting basis given; searching by enumeration");
    let e = oracle::enumerate_basic_points(inst, enum_bound())?;
    match e.points.into_iter().next() {
        Some(p) => Ok((p.basis, p.point)),
        None => Err(Failure::new(EXIT_FAILURE, "instance has no feasible basic point")),
    }
}

fn idx(one_based: bool, i: usize) -> usize {
    i + usize::from(one_based)
}

fn fmt_rows(one_based: bool, rows: &[usize]) -> String {
    let shown: Vec<String> = rows.iter().map(|&r| idx(one_based, r).to_string()).collect();
    format!("{{{}}}", shown.join(","))
}

fn fmt_point(x: &[Rat]) -> String {
    let parts: Vec<String> = x.iter().map(crate::semiring::format_rat).collect();
    format!("({})", parts.join(", "))
}

fn point_json(x: &[Rat]) -> Value {
    Value::Array(x.iter().map(rat_to_json).collect())
}

fn signed_vec_json(v: &[SignedTrop]) -> Value {
    Value::Array(v.iter().map(signed_to_json).collect())
}

fn fmt_signed_vec(v: &[SignedTrop]) -> String {
    let parts: Vec<String> = v.iter().map(|s| s.to_string()).collect();
    format!("({})", parts.join(", "))
}

fn cause_json(c: &Cause) -> Value {
    match c {
        Cause::BreakAt { row, side } => json!({
            "type": "break",
            "row": row,
            "side": if *side == BreakSide::Plus { "+" } else { "-" },
        }),
        Cause::EnterAt { row } => json!({"type": "enter", "row": row}),
    }
}

fn pivot_trace_json(t: &PivotTrace) -> Value {
    json!({
        "leaving": t.leaving,
        "entering": t.entering,
        "segments": t.segments.iter().map(|s| json!({
            "point": point_json(&s.start),
            "J": s.direction.members(),
            "mu": rat_to_json(&s.length),
            "cause": cause_json(&s.cause),
        })).collect::<Vec<_>>(),
        "breakpoints": t.breakpoints.iter().map(|p| point_json(p)).collect::<Vec<_>>(),
        "endpoint": point_json(&t.endpoint),
        "primitive_ops": t.stats.primitive_ops,
    })
}

fn run_trace_json(inst: &Instance, run: &RunTrace) -> Value {
    let terminal = run.terminal();
    json!({
        "iterations": run.iterations.iter().map(|it| json!({
            "basis": it.basis.rows(),
            "point": point_json(&it.point),
            "reduced_costs": signed_vec_json(&it.reduced_costs),
            "leaving": it.leaving,
            "pivot": it.pivot.as_ref().map(pivot_trace_json),
        })).collect::<Vec<_>>(),
        "terminal": {
            "basis": terminal.basis.rows(),
            "point": point_json(&terminal.point),
        },
        "objective": trop_to_json(&run.objective),
        "pivots": run.pivots(),
        "num_vars": inst.n(),
        "num_constraints": inst.m(),
    })
}

fn emit_digraphs(dir: &Path, inst: &Instance, run: &RunTrace, one_based: bool) -> Result<(), Failure> {
    std::fs::create_dir_all(dir)?;
    let h = inst.homogenize();
    let write = |name: String, x: &[Rat]| -> Result<(), Failure> {
        let mut proj = x.to_vec();
        if proj.len() == inst.n() {
            proj.push(Rat::from_integer(0.into()));
        }
        let g = tangent::build_at_rat(&h, &proj)
            .map_err(|e| Failure::new(EXIT_FAILURE, e.to_string()))?;
        std::fs::write(dir.join(name), g.to_dot(one_based))?;
        Ok(())
    };
    for (i, it) in run.iterations.iter().enumerate() {
        write(format!("iter{i}_basic.dot"), &it.point)?;
        if let Some(trace) = &it.pivot {
            for (b, bp) in trace.breakpoints.iter().enumerate() {
                write(format!("iter{i}_break{b}.dot"), bp)?;
            }
        }
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_solve(
    path: &Path,
    basis: Option<Vec<usize>>,
    rule: PivotRule,
    trace: Option<PathBuf>,
    digraph_dir: Option<PathBuf>,
    json: bool,
    one_based: bool,
    assume_positive: bool,
) -> Result<(), Failure> {
    let inst = load_instance(path, assume_positive)?;
    let (basis0, x0) = resolve_start(&inst, basis)?;
    let run = simplex::solve(&inst, &basis0, &x0, rule)?;
    let report = run_trace_json(&inst, &run);
    if let Some(trace_path) = trace {
        std::fs::write(&trace_path, serde_json::to_string_pretty(&report).unwrap())?;
    }
    if let Some(dir) = digraph_dir {
        emit_digraphs(&dir, &inst, &run, one_based)?;
    }
    if json {
        println!("{}", serde_json::to_string_pretty(&report).unwrap());
    } else {
        for (k, it) in run.iterations.iter().enumerate() {
            let action = match it.leaving {
                Some(l) => format!("leave {}", idx(one_based, l)),
                None => "optimal".into(),
            };
            println!(
                "iter {k}: basis {} point {} reduced costs {} -> {action}",
                fmt_rows(one_based, it.basis.rows()),
                fmt_point(&it.point),
                fmt_signed_vec(&it.reduced_costs),
            );
        }
        println!(
            "optimal point {} with objective {} after {} pivot(s)",
            fmt_point(&run.terminal().point),
            run.objective,
            run.pivots()
        );
    }
    Ok(())
}

fn cmd_certify(
    path: &Path,
    basis: Vec<usize>,
    json: bool,
    assume_positive: bool,
) -> Result<(), Failure> {
    let inst = load_instance(path, assume_positive)?;
    let basis = Basis::new(basis)?;
    let x = simplex::basic_point(&inst, &basis)?;
    let cert = simplex::certify(&inst, &basis, &x)?;
    if json {
        let value = match &cert {
            Certificate::Optimal => json!({"status": "optimal", "point": point_json(&x)}),
            Certificate::ImprovableVia(rows) => {
                json!({"status": "improvable", "point": point_json(&x), "improving": rows})
            }
        };
        println!("{}", serde_json::to_string_pretty(&value).unwrap());
    } else {
        match cert {
            Certificate::Optimal => println!("optimal at {}", fmt_point(&x)),
            Certificate::ImprovableVia(rows) => {
                println!("improvable at {} via rows {:?}", fmt_point(&x), rows)
            }
        }
    }
    Ok(())
}

fn cmd_pivot(
    path: &Path,
    basis: Vec<usize>,
    leaving: usize,
    json: bool,
    one_based: bool,
    assume_positive: bool,
) -> Result<(), Failure> {
    let inst = load_instance(path, assume_positive)?;
    let basis = Basis::new(basis)?;
    let x = simplex::basic_point(&inst, &basis)?;
    let w = inst.homogenize();
    let (new_basis, new_x, trace) = crate::pivot::pivot(&w, &basis, &x, leaving)?;
    if json {
        let value = json!({
            "basis": new_basis.rows(),
            "point": point_json(&new_x),
            "trace": pivot_trace_json(&trace),
        });
        println!("{}", serde_json::to_string_pretty(&value).unwrap());
    } else {
        for s in &trace.segments {
            println!(
                "segment from {} along J={} length {}",
                fmt_point(&s.start),
                s.direction,
                s.length
            );
        }
        println!(
            "pivot: leaving {} entering {} -> basis {} at {}",
            idx(one_based, leaving),
            idx(one_based, trace.entering),
            fmt_rows(one_based, new_basis.rows()),
            fmt_point(&new_x)
        );
    }
    Ok(())
}

fn cmd_reduced_costs(
    path: &Path,
    basis: Vec<usize>,
    json: bool,
    assume_positive: bool,
) -> Result<(), Failure> {
    let inst = load_instance(path, assume_positive)?;
    let basis = Basis::new(basis)?;
    let x = simplex::basic_point(&inst, &basis)?;
    let y = cramer::reduced_costs(&inst, &basis, &x)?;
    if json {
        let value = json!({
            "basis": basis.rows(),
            "point": point_json(&x),
            "reduced_costs": signed_vec_json(&y),
        });
        println!("{}", serde_json::to_string_pretty(&value).unwrap());
    } else {
        for (row, cost) in basis.rows().iter().zip(&y) {
            println!("y[{row}] = {cost}");
        }
    }
    Ok(())
}

fn cmd_cramer(path: &Path, json: bool) -> Result<(), Failure> {
    #[derive(serde::Deserialize)]
    struct RawSystem {
        #[serde(rename = "M")]
        m: Vec<Vec<Option<RawSigned>>>,
        d: Vec<Option<RawSigned>>,
    }
    #[derive(serde::Deserialize)]
    struct RawSigned {
        s: String,
        v: Value,
    }
    fn decode(e: Option<RawSigned>) -> Result<SignedTrop, Failure> {
        match e {
            None => Ok(SignedTrop::Zero),
            Some(RawSigned { s, v }) => {
                let r = match v {
                    Value::Number(n) => crate::semiring::parse_rat(&n.to_string()),
                    Value::String(t) => crate::semiring::parse_rat(&t),
                    other => Err(format!("bad numeric value {other}")),
                }
                .map_err(|e| Failure::new(EXIT_FAILURE, e))?;
                match s.as_str() {
                    "+" => Ok(SignedTrop::Pos(r)),
                    "-" => Ok(SignedTrop::Neg(r)),
                    other => Err(Failure::new(EXIT_FAILURE, format!("bad sign {other:?}"))),
                }
            }
        }
    }
    let bytes = std::fs::read(path)?;
    let raw: RawSystem = serde_json::from_slice(&bytes)
        .map_err(|e| Failure::new(EXIT_FAILURE, format!("parse error: {e}")))?;
    let n = raw.m.len();
    if n == 0 || raw.m.iter().any(|r| r.len() != n) || raw.d.len() != n {
        return Err(Failure::new(EXIT_FAILURE, "M must be square and d of matching length"));
    }
    let mut rows = Vec::with_capacity(n);
    for raw_row in raw.m {
        let mut row = Vec::with_capacity(n);
        for e in raw_row {
            row.push(decode(e)?);
        }
        rows.push(row);
    }
    let d: Vec<SignedTrop> = raw.d.into_iter().map(decode).collect::<Result<_, _>>()?;
    let m: SignedMat = Mat::from_rows(rows);
    let y = cramer::cramer_solve(&m, &d)?;
    if json {
        println!("{}", serde_json::to_string_pretty(&json!({"y": signed_vec_json(&y)})).unwrap());
    } else {
        println!("y = {}", fmt_signed_vec(&y));
    }
    Ok(())
}

fn genericity_json(report: &GenericityReport, one_based: bool) -> Value {
    let witness = |w: &Option<crate::linalg::Witness>| match w {
        None => Value::Null,
        Some(w) => json!({
            "rows": w.rows.iter().map(|&r| idx(one_based, r)).collect::<Vec<_>>(),
            "cols": w.cols.iter().map(|&c| idx(one_based, c)).collect::<Vec<_>>(),
        }),
    };
    json!({
        "generic": report.is_generic(),
        "sign_generic": report.is_sign_generic(),
        "not_generic_witness": witness(&report.not_generic),
        "not_sign_generic_witness": witness(&report.not_sign_generic),
    })
}

fn cmd_check(
    path: &Path,
    mode: GenericityMode,
    json: bool,
    one_based: bool,
) -> Result<(), Failure> {
    let inst = load_instance(path, true)?;
    let h = inst.homogenize();
    let primal = check_generic(&h.w, mode).map_err(|e| Failure::new(EXIT_FAILURE, e.to_string()))?;
    let dual = check_generic(&inst.dual_matrix(), mode)
        .map_err(|e| Failure::new(EXIT_FAILURE, e.to_string()))?;
    if json {
        let value = json!({
            "mode": if mode == GenericityMode::Exhaustive { "exhaustive" } else { "asserted" },
            "W": genericity_json(&primal, one_based),
            "dual": genericity_json(&dual, one_based),
        });
        println!("{}", serde_json::to_string_pretty(&value).unwrap());
    } else {
        let describe = |name: &str, r: &GenericityReport| {
            let mut line = format!("{name}: ");
            if r.is_generic() && r.is_sign_generic() {
                line.push_str("OK (generic and sign generic)");
            } else {
                if let Some(w) = &r.not_generic {
                    line.push_str(&format!(
                        "not generic (rows {} x cols {}) ",
                        fmt_rows(one_based, &w.rows),
                        fmt_rows(one_based, &w.cols)
                    ));
                }
                if let Some(w) = &r.not_sign_generic {
                    line.push_str(&format!(
                        "not sign generic (rows {} x cols {})",
                        fmt_rows(one_based, &w.rows),
                        fmt_rows(one_based, &w.cols)
                    ));
                }
            }
            println!("{}", line.trim_end());
        };
        describe("W = (A b)", &primal);
        describe("(At ct)", &dual);
    }
    Ok(())
}

fn cmd_enumerate(path: &Path, json: bool, assume_positive: bool) -> Result<(), Failure> {
    let inst = load_instance(path, assume_positive)?;
    let e = oracle::enumerate_basic_points(&inst, enum_bound())?;
    if json {
        let value = json!({
            "count": e.points.len(),
            "min_objective": e.min_objective.as_ref().map(trop_to_json),
            "points": e.points.iter().map(|p| json!({
                "basis": p.basis.rows(),
                "point": point_json(&p.point),
                "objective": trop_to_json(&p.objective),
            })).collect::<Vec<_>>(),
        });
        println!("{}", serde_json::to_string_pretty(&value).unwrap());
    } else {
        for p in &e.points {
            println!("basis {} point {} objective {}", p.basis, fmt_point(&p.point), p.objective);
        }
        match &e.min_objective {
            Some(v) => println!("{} basic point(s); minimum objective {v}", e.points.len()),
            None => println!("no feasible basic point"),
        }
    }
    Ok(())
}

fn cmd_verify(
    path: &Path,
    basis: Option<Vec<usize>>,
    json: bool,
    assume_positive: bool,
) -> Result<(), Failure> {
    let inst = load_instance(path, assume_positive)?;
    let (basis0, x0) = resolve_start(&inst, basis)?;
    let lp = oracle::lift(&inst)?;

    // solver and oracle in worker threads, enumeration on this one
    let (run, oracle_run) = std::thread::scope(|scope| {
        let solver = {
            let inst = &inst;
            let basis0 = &basis0;
            let x0 = &x0;
            scope.spawn(move || simplex::solve_audited(inst, basis0, x0, PivotRule::Bland))
        };
        let oracle_thread = {
            let lp = &lp;
            let basis0 = &basis0;
            scope.spawn(move || oracle::classical_simplex(lp, basis0))
        };
        (solver.join().expect("solver thread"), oracle_thread.join().expect("oracle thread"))
    });
    let run = run?;
    let oracle_run = oracle_run?;
    let enumeration = oracle::enumerate_basic_points(&inst, enum_bound())?;

    let mut mismatches: Vec<String> = Vec::new();
    let enum_min = enumeration.min_objective.clone();
    if enum_min.as_ref() != Some(&run.objective) {
        mismatches.push(format!(
            "terminal objective {} differs from enumeration minimum {:?}",
            run.objective, enum_min
        ));
    }
    let oracle_val = oracle_run.objective.val();
    if oracle_val != run.objective {
        mismatches.push(format!(
            "val of the oracle optimum {oracle_val} differs from the tropical objective {}",
            run.objective
        ));
    }
    if run.iterations.len() != oracle_run.steps.len() {
        mismatches.push(format!(
            "tropical path has {} points, oracle path has {}",
            run.iterations.len(),
            oracle_run.steps.len()
        ));
    }
    for (k, (it, step)) in run.iterations.iter().zip(&oracle_run.steps).enumerate() {
        if it.basis != step.basis {
            mismatches.push(format!(
                "step {k}: tropical basis {} vs oracle basis {}",
                it.basis, step.basis
            ));
            continue;
        }
        let vals: Vec<Trop> = step.point.iter().map(PuiseuxNum::val).collect();
        let tropical: Vec<Trop> =
            it.point.iter().map(|r| Trop::Fin(r.clone())).collect();
        if vals != tropical {
            mismatches.push(format!("step {k}: val of the oracle point differs"));
        }
        let svals: Vec<SignedTrop> = step.reduced_costs.iter().map(PuiseuxNum::sval).collect();
        if svals != it.reduced_costs {
            mismatches.push(format!("step {k}: sval of the oracle reduced costs differs"));
        }
        if it.leaving != step.leaving {
            mismatches.push(format!(
                "step {k}: tropical rule left {:?}, oracle left {:?}",
                it.leaving, step.leaving
            ));
        }
    }

    let verdict = if mismatches.is_empty() { "MATCH" } else { "MISMATCH" };
    let value = json!({
        "verdict": verdict,
        "start_basis": basis0.rows(),
        "tropical": {
            "objective": trop_to_json(&run.objective),
            "path": run.path_points().iter().map(|p| point_json(p)).collect::<Vec<_>>(),
            "bases": run.iterations.iter().map(|it| it.basis.rows().to_vec()).collect::<Vec<_>>(),
        },
        "oracle": {
            "objective": oracle_run.objective.to_string(),
            "objective_val": trop_to_json(&oracle_val),
            "path_vals": oracle_run.steps.iter().map(|s| {
                Value::Array(s.point.iter().map(|p| trop_to_json(&p.val())).collect())
            }).collect::<Vec<_>>(),
        },
        "enumeration": {
            "count": enumeration.points.len(),
            "min_objective": enum_min.as_ref().map(trop_to_json),
        },
        "mismatches": mismatches,
    });
    if json {
        println!("{}", serde_json::to_string_pretty(&value).unwrap());
    } else {
        println!("{verdict}");
        for m in value["mismatches"].as_array().unwrap() {
            println!("  {}", m.as_str().unwrap());
        }
        println!(
            "tropical objective {}, oracle val {}, enumeration min {}",
            run.objective,
            oracle_val,
            enum_min.map(|t| t.to_string()).unwrap_or_else(|| "none".into())
        );
    }
    if verdict == "MISMATCH" {
        return Err(Failure::new(EXIT_MISMATCH, "verification mismatch"));
    }
    Ok(())
}
