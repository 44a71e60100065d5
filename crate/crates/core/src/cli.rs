//! Command-line frontend.
//!
//! Exit codes: 0 success, 1 a causality check failed, 2 usage error,
//! 3 bad input data, 4 domain error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::analysis::{causality_report, signaling_implication_check, CausalityReport, SignalingFinding, DEFAULT_TOLERANCE};
use crate::boxes::NonlocalBox;
use crate::boxfile::{read_box, write_box};
use crate::engine::assemble_box;
use crate::error::Error;
use crate::experiments::{chsh_sweep, emit_sweep_csv, emit_sweep_svg, nco_observable_search};
use crate::observable::{chsh_observables, ObservablePair, QubitObservable};
use crate::rule::ProbabilityRule;
use crate::state::{Amplitude, TwoQubitState};
use crate::uniqueness::{residual_grid, solve_rule};
use crate::zoo;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;
pub const EXIT_DOMAIN: i32 = 4;

/// Inputs whose norm differs from 1 by more than this are reported.
const NORM_WARNING: f64 = 1e-6;

#[derive(Debug, Parser)]
#[command(name = "nonlocal", version, about = "Simulate and analyze order-sensitive nonlocal boxes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a box from a state, a probability rule and observables.
    Simulate(SimulateArgs),
    /// Check causality conditions and CHSH values of a box.
    Check(CheckArgs),
    /// CHSH value of the Bell state against the power-rule exponent.
    Sweep(SweepArgs),
    /// Order-agreement residual grids for a list of rules.
    BornVerify(BornVerifyArgs),
    /// Search observables that make both orders agree on a state.
    Search(SearchArgs),
    /// Reconstruct H on a grid from the order-agreement equation.
    Solve(SolveArgs),
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// `bell`, `product`, or four `re:im` amplitudes for |00>,|01>,|10>,|11>
    #[arg(long, default_value = "bell")]
    pub state: StateSpec,
    /// `born`, `power:m=<real>` or `step`
    #[arg(long, default_value = "born")]
    pub rule: ProbabilityRule,
    /// `chsh` or eight angles θx0,φx0,θx1,φx1,θy0,φy0,θy1,φy1
    #[arg(long, default_value = "chsh")]
    pub observables: ObservablesSpec,
    /// Output box file; printed to stdout when omitted
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    /// `pr`, `anti-pr`, `mixed-order`, or a box file
    #[arg(long = "box")]
    pub box_spec: String,
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, default_value_t = 0.1)]
    pub m_start: f64,
    #[arg(long, default_value_t = 20.0)]
    pub m_end: f64,
    #[arg(long, default_value_t = 200)]
    pub steps: usize,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BornVerifyArgs {
    #[arg(long, default_value_t = 100)]
    pub grid: usize,
    /// Comma-separated rules
    #[arg(long, value_delimiter = ',', default_value = "born,power:m=1,power:m=4,step")]
    pub rules: Vec<ProbabilityRule>,
    /// CSV with columns rule,q1,q2,residual
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long, default_value = "bell")]
    pub state: StateSpec,
    #[arg(long, default_value = "power:m=4")]
    pub rule: ProbabilityRule,
    #[arg(long, default_value_t = 16)]
    pub restarts: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Result JSON; printed to stdout when omitted
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long, default_value_t = 64)]
    pub grid: usize,
    /// CSV with columns p,H
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// State as given on the command line, before normalization.
#[derive(Debug, Clone, PartialEq)]
pub enum StateSpec {
    Bell,
    /// `|00⟩`
    Product,
    Amplitudes([Amplitude; 4]),
}

impl StateSpec {
    pub fn build(&self) -> Result<TwoQubitState, Error> {
        match self {
            StateSpec::Bell => Ok(TwoQubitState::bell()),
            StateSpec::Product => TwoQubitState::from_real([1.0, 0.0, 0.0, 0.0]),
            StateSpec::Amplitudes(a) => {
                let norm: f64 = a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
                let s = TwoQubitState::new(*a)?;
                if (norm - 1.0).abs() > NORM_WARNING {
                    eprintln!("warning: input state norm {norm} renormalized to 1");
                }
                Ok(s)
            }
        }
    }

    fn label(&self) -> String {
        match self {
            StateSpec::Bell => "bell".into(),
            StateSpec::Product => "product".into(),
            StateSpec::Amplitudes(a) => a.iter().map(|z| format!("{}:{}", z.re, z.im)).collect::<Vec<_>>().join(","),
        }
    }
}

impl FromStr for StateSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.trim() {
            "bell" => return Ok(Self::Bell),
            "product" => return Ok(Self::Product),
            _ => {}
        }
        let err = |reason: String| Error::Parse {
            what: "state",
            input: s.to_string(),
            reason,
        };
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 4 {
            return Err(err(format!("expected 4 amplitudes, got {}", parts.len())));
        }
        let mut amps = [Amplitude::new(0.0, 0.0); 4];
        for (slot, part) in amps.iter_mut().zip(parts) {
            let (re, im) = part.split_once(':').unwrap_or((part, "0"));
            let num = |t: &str| {
                t.trim()
                    .parse::<f64>()
                    .ok()
                    .filter(|v| v.is_finite())
                    .ok_or_else(|| err(format!("bad number {t:?}")))
            };
            *slot = Amplitude::new(num(re)?, num(im)?);
        }
        Ok(Self::Amplitudes(amps))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ObservablesSpec {
    Chsh,
    Angles(ObservablePair, ObservablePair),
}

impl ObservablesSpec {
    pub fn pairs(&self) -> (ObservablePair, ObservablePair) {
        match self {
            Self::Chsh => chsh_observables(),
            Self::Angles(x, y) => (*x, *y),
        }
    }

    fn label(&self) -> String {
        match self {
            Self::Chsh => "chsh".into(),
            Self::Angles(x, y) => format!("x={},{} y={},{}", x[0], x[1], y[0], y[1]),
        }
    }
}

impl FromStr for ObservablesSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        if s.trim() == "chsh" {
            return Ok(Self::Chsh);
        }
        let err = |reason: String| Error::Parse {
            what: "observables",
            input: s.to_string(),
            reason,
        };
        let v = s
            .split(',')
            .map(|t| t.trim().parse::<f64>().map_err(|_| err(format!("bad angle {t:?}"))))
            .collect::<Result<Vec<_>, _>>()?;
        if v.len() != 8 {
            return Err(err(format!("expected chsh or 8 angles, got {}", v.len())));
        }
        let o = |k: usize| QubitObservable::new(v[2 * k], v[2 * k + 1]).map_err(|e| err(e.to_string()));
        Ok(Self::Angles([o(0)?, o(1)?], [o(2)?, o(3)?]))
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } | Error::InvalidSweep { .. } | Error::GridTooSmall { .. } | Error::InvalidExponent(_) => EXIT_USAGE,
        Error::AllZero { .. }
        | Error::NonFinite { .. }
        | Error::InvalidAngle { .. }
        | Error::InvalidTable { .. }
        | Error::BoxFile { .. }
        | Error::Io { .. } => EXIT_INPUT,
        Error::Domain { .. } | Error::NotEntangled(_) | Error::NonConvergence { .. } | Error::EmptySweep => EXIT_DOMAIN,
    }
}

/// Parses `args` (including the program name) and runs the command,
/// writing primary output to `out`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<i32, Error> {
    match cmd {
        Command::Simulate(a) => simulate(a, out),
        Command::Check(a) => check(a, out),
        Command::Sweep(a) => sweep(a, out),
        Command::BornVerify(a) => born_verify(a, out),
        Command::Search(a) => search(a, out),
        Command::Solve(a) => solve(a, out),
    }
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), Error> {
    out.write_all(text.as_bytes()).map_err(|source| Error::Io {
        path: PathBuf::from("<stdout>"),
        source,
    })
}

fn write_file(path: &Path, text: &str) -> Result<(), Error> {
    std::fs::write(path, text).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn simulate(a: SimulateArgs, out: &mut dyn Write) -> Result<i32, Error> {
    let state = a.state.build()?;
    let (xs, ys) = a.observables.pairs();
    let mut bx = assemble_box(&state, &xs, &ys, a.rule);
    bx.provenance = format!(
        "state={} rule={} observables={}",
        a.state.label(),
        a.rule,
        a.observables.label()
    );
    match a.out {
        Some(path) => {
            write_box(&bx, &path)?;
            let r = causality_report(&bx, DEFAULT_TOLERANCE);
            emit(
                out,
                &format!(
                    "wrote {}: chsh alice_first={} bob_first={}\n",
                    path.display(),
                    r.chsh.alice_first,
                    r.chsh.bob_first
                ),
            )?;
        }
        None => emit(out, &crate::boxfile::box_to_json(&bx))?,
    }
    Ok(EXIT_OK)
}

/// `check` output: the causality report plus the box's provenance and the
/// signaling/agreement cross-check.
#[derive(Debug, Serialize)]
pub struct CheckOutput {
    pub provenance: String,
    #[serde(flatten)]
    pub report: CausalityReport,
    pub signaling_implication: SignalingFinding,
}

pub fn load_box_spec(spec: &str) -> Result<NonlocalBox, Error> {
    match spec {
        "pr" => Ok(zoo::pr_box()),
        "anti-pr" => Ok(zoo::anti_pr_box()),
        "mixed-order" => Ok(zoo::mixed_order_device()),
        path => read_box(Path::new(path)),
    }
}

fn check(a: CheckArgs, out: &mut dyn Write) -> Result<i32, Error> {
    if !(a.tol.is_finite() && a.tol >= 0.0) {
        return Err(Error::Parse {
            what: "tolerance",
            input: a.tol.to_string(),
            reason: "must be a finite non-negative number".into(),
        });
    }
    let bx = load_box_spec(&a.box_spec)?;
    let report = causality_report(&bx, a.tol);
    let output = CheckOutput {
        provenance: bx.provenance.clone(),
        report,
        signaling_implication: signaling_implication_check(&bx, a.tol),
    };
    let mut text = serde_json::to_string_pretty(&output).expect("report serializes");
    text.push('\n');
    emit(out, &text)?;
    Ok(if report.all_pass() { EXIT_OK } else { EXIT_CHECK_FAILED })
}

fn sweep(a: SweepArgs, out: &mut dyn Write) -> Result<i32, Error> {
    let rows = chsh_sweep(a.m_start, a.m_end, a.steps)?;
    emit_sweep_csv(&rows, &a.out)?;
    if let Some(svg) = &a.svg {
        emit_sweep_svg(&rows, svg)?;
    }
    let worst_gap = rows.iter().map(|r| (r.chsh_engine - r.chsh_closed_form).abs()).fold(0.0, f64::max);
    let worst_nco = rows.iter().map(|r| r.nco_residual).fold(0.0, f64::max);
    emit(
        out,
        &format!(
            "{} rows written to {}; max |engine - closed form| = {worst_gap:e}; max nco residual = {worst_nco:e}\n",
            rows.len(),
            a.out.display()
        ),
    )?;
    Ok(EXIT_OK)
}

fn born_verify(a: BornVerifyArgs, out: &mut dyn Write) -> Result<i32, Error> {
    let mut csv = String::from("rule,q1,q2,residual\n");
    let mut summary = String::new();
    for rule in &a.rules {
        let g = residual_grid(*rule, a.grid)?;
        let _ = writeln!(
            summary,
            "{rule}\tmax_residual={:e}\targmax=({}, {})",
            g.max_residual, g.argmax.q1, g.argmax.q2
        );
        if a.out.is_some() {
            for r in &g.records {
                let _ = writeln!(csv, "{rule},{},{},{:e}", r.q1, r.q2, r.residual);
            }
        }
    }
    if let Some(path) = &a.out {
        write_file(path, &csv)?;
    }
    emit(out, &summary)?;
    Ok(EXIT_OK)
}

#[derive(Debug, Serialize)]
struct SearchOutput<'a> {
    state: String,
    rule: String,
    #[serde(flatten)]
    result: &'a crate::experiments::ObservableSearch,
}

fn search(a: SearchArgs, out: &mut dyn Write) -> Result<i32, Error> {
    let state = a.state.build()?;
    let result = nco_observable_search(&state, a.rule, a.restarts, a.seed)?;
    let mut text = serde_json::to_string_pretty(&SearchOutput {
        state: a.state.label(),
        rule: a.rule.to_string(),
        result: &result,
    })
    .expect("search result serializes");
    text.push('\n');
    match a.out {
        Some(path) => write_file(&path, &text)?,
        None => emit(out, &text)?,
    }
    Ok(EXIT_OK)
}

fn solve(a: SolveArgs, out: &mut dyn Write) -> Result<i32, Error> {
    let sol = solve_rule(a.grid)?;
    if let Some(path) = &a.out {
        let mut csv = String::from("p,H\n");
        for (p, h) in sol.grid() {
            let _ = writeln!(csv, "{p},{h:.17e}");
        }
        write_file(path, &csv)?;
    }
    emit(
        out,
        &format!(
            "n={} sup_distance={:e} residual_norm={:e} iterations={}\n",
            sol.n, sol.sup_distance, sol.residual_norm, sol.iterations
        ),
    )?;
    Ok(EXIT_OK)
}
