//! Command implementations behind the `seplinf` binary.
//!
//! Every command writes its human-readable output to `out`, diagnostics to
//! `err`, and returns the process exit code.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use seplinf::candidate::{build_candidate_set, CandidateSet, OptimizerConfig};
use seplinf::catalog::{catalog, evaluate_catalog, load_catalog, verify_catalog_against_matrix};
use seplinf::cycle::{read_cycle_file, structure_check, CycleVector};
use seplinf::function::{check_source, parse_spec, DeltaReport, FunctionSource};
use seplinf::lp::{grid_error, GridSpec, LpSolution};
use seplinf::{Error, Scalar};

pub mod exit {
    pub const OK: i32 = 0;
    pub const CONDITION: i32 = 2;
    pub const CATALOG_MISMATCH: i32 = 3;
    pub const INVALID_CYCLE: i32 = 4;
    pub const SOFTWARE: i32 = 70;
    pub const USAGE: i32 = 64;
    pub const RESOURCE_GUARD: i32 = 65;
}

/// Environment variable capping the worker count.
pub const THREADS_ENV: &str = "SEPLINF_THREADS";

#[derive(Debug, Parser)]
#[command(name = "seplinf", version, about = "Best uniform approximation on the unit cube by φ(x) + ψ(y) + ω(z)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the mixed-difference sign conditions on a uniform grid.
    Check(CheckArgs),
    /// Compute the error by the candidate-set formula.
    Error(ErrorArgs),
    /// Compute the error on a finite grid by linear programming.
    ErrorLp(ErrorLpArgs),
    /// Regenerate the catalog from the incidence matrix and compare.
    CatalogVerify(CatalogVerifyArgs),
    /// Validate a cycle file.
    CycleVerify(CycleVerifyArgs),
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    /// `builtin:NAME[:k=v,...]` or `grid:PATH`.
    #[arg(long = "fn", value_name = "SPEC")]
    pub function: String,
    #[arg(long, default_value_t = 16)]
    pub grid: usize,
    /// Defaults to 1e-12 for builtins and 1e-9 for grid data.
    #[arg(long)]
    pub tol: Option<f64>,
}

#[derive(Debug, Args, Clone)]
pub struct OptimizerArgs {
    /// Scan points per active axis.
    #[arg(long, default_value_t = 33)]
    pub scan: usize,
    #[arg(long, default_value_t = 1e-7)]
    pub refine_tol: f64,
    #[arg(long, default_value_t = 1e-10)]
    pub tie_tol: f64,
}

impl OptimizerArgs {
    fn config(&self) -> Result<OptimizerConfig, Error> {
        if self.scan < 2 || !(self.refine_tol > 0.0) || !(self.tie_tol >= 0.0) {
            return Err(Error::BadParameter {
                name: "optimizer".into(),
                reason: "need --scan >= 2, --refine-tol > 0, --tie-tol >= 0".into(),
            });
        }
        Ok(OptimizerConfig {
            scan: self.scan,
            refine_tol: self.refine_tol,
            tie_tol: self.tie_tol,
            ..OptimizerConfig::default()
        })
    }
}

#[derive(Debug, Args)]
pub struct ErrorArgs {
    #[arg(long = "fn", value_name = "SPEC")]
    pub function: String,
    #[command(flatten)]
    pub optimizer: OptimizerArgs,
    /// Resolution of the condition check.
    #[arg(long, default_value_t = 16)]
    pub check_grid: usize,
    /// Proceed even if the condition check fails.
    #[arg(long)]
    pub force: bool,
    /// Also solve the LP on the candidate grid and compare.
    #[arg(long)]
    pub lp_check: bool,
    #[arg(long, default_value_t = 1e-6)]
    pub agreement_tol: f64,
    /// Write the full run report as JSON.
    #[arg(long, value_name = "PATH")]
    pub report: Option<PathBuf>,
    /// Leave timings out of the report.
    #[arg(long)]
    pub no_timings: bool,
}

#[derive(Debug, Args)]
pub struct ErrorLpArgs {
    #[arg(long = "fn", value_name = "SPEC")]
    pub function: String,
    /// Uniform grid sizes per axis, `NX,NY,NZ`.
    #[arg(long, value_name = "NX,NY,NZ", conflicts_with = "grid_from_u", required_unless_present = "grid_from_u")]
    pub grid: Option<String>,
    /// Use the projections of the candidate set as the grid.
    #[arg(long)]
    pub grid_from_u: bool,
    #[command(flatten)]
    pub optimizer: OptimizerArgs,
    /// Write the LP solution as JSON.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CatalogVerifyArgs {
    /// Catalog fixture to verify instead of the built-in table.
    #[arg(long, value_name = "PATH")]
    pub catalog: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CycleVerifyArgs {
    #[arg(long, value_name = "PATH")]
    pub file: PathBuf,
}

/// Exit code for a library error.
pub fn code_for(e: &Error) -> i32 {
    match e {
        Error::SizeGuard { .. } => exit::RESOURCE_GUARD,
        Error::NotACycle(_) | Error::InvalidCycle(_) => exit::INVALID_CYCLE,
        Error::Domain { .. }
        | Error::OffFace(_)
        | Error::UnknownBuiltin(_)
        | Error::BadParameter { .. }
        | Error::InvalidGrid(_)
        | Error::BadSpec(_)
        | Error::Precondition(_)
        | Error::Io { .. }
        | Error::Json(_) => exit::USAGE,
        Error::Consistency(_) | Error::Solver(_) => exit::SOFTWARE,
    }
}

/// Sets the global worker count from [`THREADS_ENV`], if present.
pub fn configure_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("{THREADS_ENV} must be a positive integer, got `{raw}`"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return exit::USAGE;
            }
            let _ = write!(out, "{e}");
            return exit::OK;
        }
    };
    let result = match &cli.command {
        Command::Check(a) => cmd_check(a, out),
        Command::Error(a) => cmd_error(a, out, err),
        Command::ErrorLp(a) => cmd_error_lp(a, out),
        Command::CatalogVerify(a) => cmd_catalog_verify(a, out),
        Command::CycleVerify(a) => cmd_cycle_verify(a, out, err),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            code_for(&e)
        }
    }
}

fn write_json(path: &Path, value: &serde_json::Value) -> Result<(), Error> {
    let text = serde_json::to_string_pretty(value)?;
    std::fs::write(path, text + "\n").map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

fn io(e: std::io::Error) -> Error {
    Error::Io {
        path: "<stdout>".into(),
        source: e,
    }
}

pub fn cmd_check(a: &CheckArgs, out: &mut dyn Write) -> Result<i32, Error> {
    let f = parse_spec(&a.function)?;
    let report = check_source(&f, a.grid, a.tol)?;
    writeln!(out, "{}", serde_json::to_string_pretty(&report)?).map_err(io)?;
    Ok(if report.satisfied_weak { exit::OK } else { exit::CONDITION })
}

#[derive(Debug, Clone, Serialize)]
pub struct LpCheck {
    pub grid: GridSpec,
    pub t: f64,
    pub dual_cycle: serde_json::Value,
}

#[derive(Debug, Clone, Serialize, Default)]
pub struct Timings {
    pub check_ms: f64,
    pub candidates_ms: f64,
    pub catalog_ms: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lp_ms: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub function: String,
    pub delta: DeltaReport,
    pub forced: bool,
    pub candidates: CandidateSet,
    pub catalog: serde_json::Value,
    pub best_entry: String,
    pub e_formula: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lp: Option<LpCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub agreement: Option<bool>,
    pub agreement_tol: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
}

fn ms(since: Instant) -> f64 {
    since.elapsed().as_secs_f64() * 1e3
}

/// Runs the formula pipeline and returns the report, or `None` with a
/// message when the condition check fails without `force`.
pub fn error_report(a: &ErrorArgs) -> Result<Result<RunReport, DeltaReport>, Error> {
    let f = parse_spec(&a.function)?;
    let cfg = a.optimizer.config()?;
    let mut timings = Timings::default();
    let t0 = Instant::now();
    let delta = check_source(&f, a.check_grid, None)?;
    timings.check_ms = ms(t0);
    if !delta.satisfied_weak && !a.force {
        return Ok(Err(delta));
    }
    let t0 = Instant::now();
    let u = build_candidate_set(&f, &cfg);
    timings.candidates_ms = ms(t0);
    let t0 = Instant::now();
    let ev = evaluate_catalog(&f, &u, &catalog())?;
    timings.catalog_ms = ms(t0);
    let (lp, agreement) = if a.lp_check {
        let t0 = Instant::now();
        let sol = lp_on_candidates(&f, &u)?;
        timings.lp_ms = Some(ms(t0));
        let agree = (ev.best_ratio - sol.t).abs() <= a.agreement_tol;
        let check = LpCheck {
            grid: sol.grid.clone(),
            t: sol.t,
            dual_cycle: seplinf::cycle::float_set_to_json(&sol.dual),
        };
        (Some(check), Some(agree))
    } else {
        (None, None)
    };
    Ok(Ok(RunReport {
        function: f.descriptor(),
        delta,
        forced: a.force,
        catalog: ev.to_json()?,
        best_entry: ev.best_id.clone(),
        e_formula: ev.best_ratio,
        candidates: u,
        lp,
        agreement,
        agreement_tol: a.agreement_tol,
        timings: (!a.no_timings).then_some(timings),
    }))
}

fn lp_on_candidates(f: &FunctionSource, u: &CandidateSet) -> Result<LpSolution, Error> {
    grid_error(f, &GridSpec::from_candidates(u)?)
}

pub fn cmd_error(a: &ErrorArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Error> {
    let report = match error_report(a)? {
        Ok(r) => r,
        Err(delta) => {
            writeln!(
                err,
                "condition check failed: worst mixed difference {:e} ({}{}) at {}; use --force to proceed",
                delta.worst_violation,
                delta.worst_location.axes[0].name(),
                delta.worst_location.axes[1].name(),
                delta.worst_location.point
            )
            .map_err(io)?;
            return Ok(exit::CONDITION);
        }
    };
    writeln!(out, "E = {}", report.e_formula).map_err(io)?;
    writeln!(out, "best entry: {}", report.best_entry).map_err(io)?;
    if let (Some(lp), Some(agree)) = (&report.lp, report.agreement) {
        writeln!(out, "LP on U-grid: t* = {} ({})", lp.t, if agree { "agrees" } else { "DISAGREES" }).map_err(io)?;
    }
    if let Some(path) = &a.report {
        write_json(path, &serde_json::to_value(&report)?)?;
    }
    Ok(exit::OK)
}

fn parse_grid_sizes(s: &str) -> Result<[usize; 3], Error> {
    let bad = || Error::BadParameter {
        name: "--grid".into(),
        reason: format!("expected NX,NY,NZ with each >= 2, got `{s}`"),
    };
    let parts: Vec<usize> = s
        .split(',')
        .map(|p| p.trim().parse().map_err(|_| bad()))
        .collect::<Result<_, _>>()?;
    match parts.as_slice() {
        &[x, y, z] if x >= 2 && y >= 2 && z >= 2 => Ok([x, y, z]),
        _ => Err(bad()),
    }
}

pub fn cmd_error_lp(a: &ErrorLpArgs, out: &mut dyn Write) -> Result<i32, Error> {
    let f = parse_spec(&a.function)?;
    let grid = match &a.grid {
        Some(s) => {
            let [nx, ny, nz] = parse_grid_sizes(s)?;
            GridSpec::uniform3(nx, ny, nz)?
        }
        None => GridSpec::from_candidates(&build_candidate_set(&f, &a.optimizer.config()?))?,
    };
    let sol = grid_error(&f, &grid)?;
    writeln!(out, "t* = {}", sol.t).map_err(io)?;
    writeln!(
        out,
        "grid {}x{}x{}, {} active points, {} rounds",
        grid.xs.len(),
        grid.ys.len(),
        grid.zs.len(),
        sol.stats.active_points,
        sol.stats.rounds
    )
    .map_err(io)?;
    if let Some(path) = &a.out {
        write_json(path, &sol.to_json())?;
    }
    Ok(exit::OK)
}

pub fn cmd_catalog_verify(a: &CatalogVerifyArgs, out: &mut dyn Write) -> Result<i32, Error> {
    let entries = match &a.catalog {
        Some(p) => load_catalog(p)?,
        None => catalog(),
    };
    let report = verify_catalog_against_matrix(&entries)?;
    writeln!(out, "{}", serde_json::to_string_pretty(&report)?).map_err(io)?;
    Ok(if report.ok() { exit::OK } else { exit::CATALOG_MISMATCH })
}

#[derive(Debug, Serialize)]
struct CycleVerdict {
    valid: bool,
    /// Some points carry zero weight.
    weak: bool,
    minimal: bool,
    structure_violations: Vec<seplinf::cycle::StructureViolation>,
}

pub fn cmd_cycle_verify(a: &CycleVerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Error> {
    let set = read_cycle_file(&a.file)?;
    let weak = set.weights().iter().any(|w| w.near_zero(0.0));
    let cycle = match CycleVector::from_set(set.strip_zeros(0.0)) {
        Ok(c) => c,
        Err(e) => {
            writeln!(err, "{e}").map_err(io)?;
            return Ok(exit::INVALID_CYCLE);
        }
    };
    let verdict = CycleVerdict {
        valid: true,
        weak,
        minimal: cycle.is_minimal(),
        structure_violations: structure_check(cycle.as_set()),
    };
    writeln!(out, "{}", serde_json::to_string_pretty(&verdict)?).map_err(io)?;
    Ok(exit::OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(std::iter::once("seplinf").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn grid_sizes() {
        assert_eq!(parse_grid_sizes("3,4, 5").unwrap(), [3, 4, 5]);
        for bad in ["3,4", "1,2,2", "a,b,c", "2,2,2,2", ""] {
            assert!(parse_grid_sizes(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn error_codes() {
        assert_eq!(code_for(&Error::SizeGuard { what: "grid", actual: 2, limit: 1 }), exit::RESOURCE_GUARD);
        assert_eq!(code_for(&Error::NotACycle("x".into())), exit::INVALID_CYCLE);
        assert_eq!(code_for(&Error::UnknownBuiltin("x".into())), exit::USAGE);
        assert_eq!(code_for(&Error::Solver("x".into())), exit::SOFTWARE);
    }

    #[test]
    fn optimizer_arguments_are_validated() {
        let (code, _, err) = run_str(&["error", "--fn", "builtin:product_xy", "--scan", "1"]);
        assert_eq!(code, exit::USAGE);
        assert!(err.contains("--scan"), "{err}");
    }

    #[test]
    fn condition_failure_prints_location() {
        let (code, _, err) = run_str(&["error", "--fn", "builtin:neg_xy"]);
        assert_eq!(code, exit::CONDITION);
        assert!(err.contains("--force"), "{err}");
    }

    #[test]
    fn error_output() {
        let (code, out, _) = run_str(&["error", "--fn", "builtin:product_xz"]);
        assert_eq!(code, exit::OK);
        assert_eq!(out, "E = 0.25\nbest entry: 1.1\n");
    }
}
