//! `ricker` — command-line front end for the stage-structured Ricker system
//! library: orbit simulation, eigensequence solving, reduced-equation
//! analysis, bifurcation scans, and extinction verdicts.
//!
//! Output conventions: analytic verdicts are JSON (with an embedded `meta`
//! object recording defaults and tolerances), time series and scans are CSV
//! (`meta` then goes to the other stream so the data stays clean). Files are
//! written atomically: content goes to a temp file in the target directory
//! and is renamed into place, so a failed run never leaves a partial file.
//!
//! Exit codes: 0 success, 2 usage, 3 domain/precondition, 4 numeric
//! overflow, 5 I/O. All nonzero exits from a valid parse print one
//! machine-readable JSON error object on stderr.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Deserialize;
use serde_json::{json, Value};

use ricker_core::bifurcate::{
    emit_csv, scan_row, ScanSpec, CLASSIFY_MAX_PERIOD, CLASSIFY_TOL, DEFAULT_GRID_N, DEFAULT_KEEP,
    DEFAULT_TRANSIENT,
};
use ricker_core::lineig::{
    eigensequence_with_tol, product_closed_form, LinearCoeffs, PERIODICITY_TOL,
};
use ricker_core::semiconj::{
    compute_t0, detect_cycle, embed_first_order, lift_cycle, period3_witness, two_cycle_rmsa,
    verify_factorization, MapConfig, CYCLE_TOL, CYCLE_TRANSIENT,
};
use ricker_core::seq::PeriodicSeq;
use ricker_core::simulate::{check_c0, iterate_planar};
use ricker_core::system::RickerSystem;
use ricker_core::{Error as CoreError, EXP_CAP};

#[derive(Parser)]
#[command(
    name = "ricker",
    version,
    about = "Simulation and analysis of planar Ricker systems with periodic coefficients",
    arg_required_else_help = true
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Iterate the planar system from a JSON parameter file and emit the orbit
    Simulate(SimulateArgs),
    /// Solve the periodic eigensequence of u_{n+1} = a_n u_n + b_n u_{n-1}
    Eigenseq(EigenseqArgs),
    /// Analyze the reduced equation r_{n+1} = r_{n-1} e^{d - r_{n-1} - r_n}
    Analyze(AnalyzeArgs),
    /// Sweep the time-0 seed and emit a bifurcation dataset as CSV
    Bifurcate(BifurcateArgs),
    /// Combined extinction verdict for a system (decay criterion + sup test)
    Extinct(ExtinctArgs),
}

impl Cmd {
    fn name(&self) -> &'static str {
        match self {
            Cmd::Simulate(_) => "simulate",
            Cmd::Eigenseq(_) => "eigenseq",
            Cmd::Analyze(_) => "analyze",
            Cmd::Bifurcate(_) => "bifurcate",
            Cmd::Extinct(_) => "extinct",
        }
    }
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct SimulateArgs {
    /// JSON file with keys alpha, beta, sigma1, sigma2, c1, c2; each value is
    /// a number or an array (one period of the coefficient, all unitless)
    #[arg(long)]
    system: PathBuf,
    /// Juvenile-class seed at time 0 (>= 0)
    #[arg(long)]
    x0: f64,
    /// Adult-class seed at time 0 (>= 0)
    #[arg(long)]
    y0: f64,
    /// Number of iterations; the output has steps+1 rows (times 0..=steps)
    #[arg(long, default_value_t = 100)]
    steps: usize,
    /// csv: columns n,x,y; json: object with a states array
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Output file (atomic write); stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct EigenseqArgs {
    /// Comma-separated a-coefficients, one period (e.g. 2,0.1)
    #[arg(long, value_delimiter = ',', required = true)]
    a: Vec<f64>,
    /// Comma-separated b-coefficients, one period
    #[arg(long, value_delimiter = ',', required = true)]
    b: Vec<f64>,
    /// Relative tolerance for the periodic-closure and product checks
    #[arg(long, default_value_t = PERIODICITY_TOL)]
    tol: f64,
    /// Include the basis solutions (delta, theta) in the output
    #[arg(long)]
    report: bool,
    /// Output file (atomic write); stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum AnalyzeMode {
    /// Split the orbit through the alternating curve maps and report residuals
    Factorize,
    /// Detect a cycle of the induced interval map and lift it
    Cycle,
    /// Limits of the odd/even subsequences (their sum is d)
    Twocycle,
    /// Search for a period-3 sign change of the invariant-curve map
    Period3,
    /// Embed a first-order equation with alternating exponents (needs --c0, --c1, --u0)
    Embed,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct AnalyzeArgs {
    #[arg(long, value_enum)]
    mode: AnalyzeMode,
    /// Constant exponent of the reduced equation (unitless)
    #[arg(long)]
    d: f64,
    /// Seed value at time -1 (> 0)
    #[arg(long, default_value_t = 0.5)]
    rm1: f64,
    /// Seed value at time 0 (> 0)
    #[arg(long, default_value_t = 1.0)]
    r0: f64,
    /// Iteration count for factorize/embed
    #[arg(long, default_value_t = 200)]
    steps: usize,
    /// Transient before cycle detection
    #[arg(long, default_value_t = CYCLE_TRANSIENT)]
    transient: usize,
    /// Largest minimal period the cycle detector reports
    #[arg(long, default_value_t = 64)]
    max_period: usize,
    /// Grid resolution for the period-3 sign-change search
    #[arg(long, default_value_t = 10_000)]
    grid: usize,
    /// First alternating exponent (embed mode)
    #[arg(long, required_if_eq("mode", "embed"))]
    c0: Option<f64>,
    /// Second alternating exponent (embed mode)
    #[arg(long, required_if_eq("mode", "embed"))]
    c1: Option<f64>,
    /// First-order seed (embed mode, > 0)
    #[arg(long, required_if_eq("mode", "embed"))]
    u0: Option<f64>,
    /// Output file (atomic write); stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct BifurcateArgs {
    /// Constant exponent of the reduced equation (unitless)
    #[arg(long)]
    d: f64,
    /// Shared seed value at time -1 (> 0)
    #[arg(long)]
    rm1: f64,
    /// Low end of the time-0 seed sweep (> 0)
    #[arg(long)]
    r0_lo: f64,
    /// High end of the time-0 seed sweep
    #[arg(long)]
    r0_hi: f64,
    /// Number of grid points (inclusive ends)
    #[arg(long, default_value_t = DEFAULT_GRID_N)]
    grid: usize,
    /// Iterations discarded before keeping the tail
    #[arg(long, default_value_t = DEFAULT_TRANSIENT)]
    transient: usize,
    /// Tail points kept (and emitted) per row
    #[arg(long, default_value_t = DEFAULT_KEEP)]
    keep: usize,
    /// Output file (atomic write); stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct ExtinctArgs {
    /// JSON file with keys alpha, beta, sigma1, sigma2, c1, c2
    #[arg(long)]
    system: PathBuf,
    /// Output file (atomic write); stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
}

enum CliError {
    Core(CoreError),
    Io(String),
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn io(msg: impl std::fmt::Display) -> Self {
        CliError::Io(msg.to_string())
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Core(CoreError::Domain(_)) => "domain",
            CliError::Core(CoreError::Numerics(_)) => "numerics",
            CliError::Core(CoreError::Overflow { .. }) => "overflow",
            CliError::Io(_) => "io",
        }
    }

    fn code(&self) -> u8 {
        match self {
            CliError::Core(CoreError::Domain(_)) | CliError::Core(CoreError::Numerics(_)) => 3,
            CliError::Core(CoreError::Overflow { .. }) => 4,
            CliError::Io(_) => 5,
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Core(e) => e.to_string(),
            CliError::Io(m) => m.clone(),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let sub = cli.cmd.name();
    match run(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            let doc = json!({
                "error": {
                    "subcommand": sub,
                    "kind": err.kind(),
                    "message": err.message(),
                    "exit_code": err.code(),
                }
            });
            eprintln!("{doc}");
            ExitCode::from(err.code())
        }
    }
}

fn run(cmd: Cmd) -> Result<(), CliError> {
    match cmd {
        Cmd::Simulate(args) => run_simulate(args),
        Cmd::Eigenseq(args) => run_eigenseq(args),
        Cmd::Analyze(args) => run_analyze(args),
        Cmd::Bifurcate(args) => run_bifurcate(args),
        Cmd::Extinct(args) => run_extinct(args),
    }
}

// ---------------------------------------------------------------- plumbing

#[derive(Deserialize)]
#[serde(untagged)]
enum NumOrList {
    Num(f64),
    List(Vec<f64>),
}

impl NumOrList {
    fn into_vec(self) -> Vec<f64> {
        match self {
            NumOrList::Num(v) => vec![v],
            NumOrList::List(v) => v,
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SystemFile {
    alpha: NumOrList,
    beta: NumOrList,
    sigma1: NumOrList,
    sigma2: NumOrList,
    c1: NumOrList,
    c2: NumOrList,
}

fn load_system(path: &Path) -> Result<RickerSystem, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::io(format!("cannot read {}: {e}", path.display())))?;
    let file: SystemFile = serde_json::from_str(&text)
        .map_err(|e| CliError::io(format!("invalid system file {}: {e}", path.display())))?;
    let seq = |v: NumOrList| PeriodicSeq::new(v.into_vec());
    Ok(RickerSystem::new(
        seq(file.alpha)?,
        seq(file.beta)?,
        seq(file.sigma1)?,
        seq(file.sigma2)?,
        seq(file.c1)?,
        seq(file.c2)?,
    )?)
}

fn write_atomic(path: &Path, content: &str) -> Result<(), CliError> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)
        .map_err(|e| CliError::io(format!("cannot create temp file in {}: {e}", dir.display())))?;
    tmp.write_all(content.as_bytes())
        .map_err(|e| CliError::io(format!("write failed: {e}")))?;
    tmp.persist(path)
        .map_err(|e| CliError::io(format!("cannot move output into place: {}", e.error)))?;
    Ok(())
}

/// JSON verdict (meta already embedded): file or stdout.
fn deliver_json(out: &Option<PathBuf>, doc: &Value) -> Result<(), CliError> {
    let text = format!("{:#}\n", doc);
    match out {
        Some(path) => write_atomic(path, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// CSV data plus a side-channel meta line: meta goes to stdout when the data
/// goes to a file, and to stderr when the data occupies stdout.
fn deliver_csv(out: &Option<PathBuf>, csv: &str, meta: &Value) -> Result<(), CliError> {
    match out {
        Some(path) => {
            write_atomic(path, csv)?;
            println!(
                "{}",
                json!({ "meta": meta, "written": path.display().to_string() })
            );
        }
        None => {
            print!("{csv}");
            eprintln!("{}", json!({ "meta": meta }));
        }
    }
    Ok(())
}

fn finite_or_null(v: f64) -> Value {
    serde_json::Number::from_f64(v).map_or(Value::Null, Value::Number)
}

// ------------------------------------------------------------- subcommands

fn run_simulate(args: SimulateArgs) -> Result<(), CliError> {
    let sys = load_system(&args.system)?;
    let orbit = iterate_planar(args.x0, args.y0, &sys, args.steps)?;
    let meta = json!({
        "steps": args.steps,
        "exp_cap": EXP_CAP,
        "combined_period": sys.combined_period(),
    });
    match args.format {
        Format::Csv => {
            let mut csv = String::from("n,x,y\n");
            for (n, s) in orbit.states.iter().enumerate() {
                let _ = writeln!(csv, "{n},{:.16e},{:.16e}", s.x, s.y);
            }
            deliver_csv(&args.out, &csv, &meta)
        }
        Format::Json => {
            let states: Vec<Value> = orbit
                .states
                .iter()
                .enumerate()
                .map(|(n, s)| json!({ "n": n, "x": s.x, "y": s.y }))
                .collect();
            deliver_json(&args.out, &json!({ "states": states, "meta": meta }))
        }
    }
}

fn run_eigenseq(args: EigenseqArgs) -> Result<(), CliError> {
    let coeffs = LinearCoeffs::new(
        PeriodicSeq::new(args.a.clone())?,
        PeriodicSeq::new(args.b.clone())?,
    )?;
    let ed = eigensequence_with_tol(&coeffs, args.tol)?;
    let mut doc = json!({
        "p": coeffs.p,
        "a": args.a,
        "b": args.b,
        "r1": ed.r1,
        "r": ed.r,
        "product": ed.product,
        "closed_form": product_closed_form(&ed.delta, &ed.theta),
        "quad": { "a": ed.quad.0, "b": ed.quad.1, "c": ed.quad.2 },
        "meta": { "tol": args.tol, "default_tol": PERIODICITY_TOL },
    });
    if args.report {
        doc["delta"] = json!(ed.delta);
        doc["theta"] = json!(ed.theta);
    }
    deliver_json(&args.out, &doc)
}

fn run_analyze(args: AnalyzeArgs) -> Result<(), CliError> {
    let base_meta = json!({
        "rm1_default": 0.5,
        "r0_default": 1.0,
        "exp_cap": EXP_CAP,
    });
    let doc = match args.mode {
        AnalyzeMode::Factorize => {
            let rep = verify_factorization(args.rm1, args.r0, args.d, args.steps)?;
            json!({
                "mode": "factorize",
                "d": args.d,
                "rm1": args.rm1,
                "r0": args.r0,
                "steps": args.steps,
                "t0": rep.t0,
                "t1": rep.t1,
                "t_product_residual": rep.t_product_residual,
                "odd_chain_residual": rep.odd_chain_residual,
                "even_chain_residual": rep.even_chain_residual,
                "orbit_residual": rep.orbit_residual,
                "meta": base_meta,
            })
        }
        AnalyzeMode::Cycle => {
            let t0 = compute_t0(args.rm1, args.r0)?;
            let cfg = MapConfig::new(args.d, t0)?;
            let cr = detect_cycle(&cfg, args.rm1, args.transient, args.max_period, CYCLE_TOL)?;
            let lift = if cr.converged {
                json!(lift_cycle(&cr, args.d, t0)?)
            } else {
                Value::Null
            };
            json!({
                "mode": "cycle",
                "d": args.d,
                "rm1": args.rm1,
                "r0": args.r0,
                "t0": t0,
                "cycle": {
                    "converged": cr.converged,
                    "period": cr.period,
                    "points": cr.points,
                    "multiplier": finite_or_null(cr.multiplier),
                    "residual": finite_or_null(cr.residual),
                },
                "lift": lift,
                "meta": {
                    "transient": args.transient,
                    "max_period": args.max_period,
                    "tol": CYCLE_TOL,
                    "rm1_default": 0.5,
                    "r0_default": 1.0,
                },
            })
        }
        AnalyzeMode::Twocycle => {
            let tc = two_cycle_rmsa(args.d, args.rm1, args.r0)?;
            json!({
                "mode": "twocycle",
                "d": args.d,
                "rm1": args.rm1,
                "r0": args.r0,
                "rho1": tc.rho1,
                "rho2": tc.rho2,
                "sum": tc.rho1 + tc.rho2,
                "degenerate": tc.degenerate,
                "meta": { "sum_tol": 1e-9, "rm1_default": 0.5, "r0_default": 1.0 },
            })
        }
        AnalyzeMode::Period3 => {
            let w = period3_witness(args.d, args.grid);
            json!({
                "mode": "period3",
                "d": args.d,
                "grid": args.grid,
                "found": w.found,
                "bracket": w.bracket.map(|(lo, hi)| json!([lo, hi])).unwrap_or(Value::Null),
                "meta": { "grid_default": 10_000, "fixed_point_tol": 1e-9 },
            })
        }
        AnalyzeMode::Embed => {
            // clap enforces presence of these three in embed mode
            let (c0, c1, u0) = (args.c0.unwrap(), args.c1.unwrap(), args.u0.unwrap());
            let rep = embed_first_order(c0, c1, u0, args.steps)?;
            json!({
                "mode": "embed",
                "c0": c0,
                "c1": c1,
                "u0": u0,
                "steps": args.steps,
                "d": rep.d,
                "max_residual": rep.max_residual,
                "meta": base_meta,
            })
        }
    };
    deliver_json(&args.out, &doc)
}

fn init_scan_threads() -> Result<usize, CliError> {
    match std::env::var("RICKER_THREADS") {
        Err(_) => Ok(rayon::current_num_threads()),
        Ok(raw) => {
            let n: usize = raw.parse().map_err(|_| {
                CliError::Core(CoreError::Domain(
                    "RICKER_THREADS must be a positive integer".into(),
                ))
            })?;
            if n == 0 {
                return Err(CliError::Core(CoreError::Domain(
                    "RICKER_THREADS must be a positive integer".into(),
                )));
            }
            // build_global fails only if a pool already exists; then the
            // existing pool's width applies
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global();
            Ok(rayon::current_num_threads())
        }
    }
}

fn run_bifurcate(args: BifurcateArgs) -> Result<(), CliError> {
    let spec = ScanSpec {
        d: args.d,
        r_m1: args.rm1,
        r0_lo: args.r0_lo,
        r0_hi: args.r0_hi,
        grid_n: args.grid,
        transient: args.transient,
        keep: args.keep,
    };
    spec.validate()?;
    let threads = init_scan_threads()?;
    // rows are pure functions of (spec, i): fan out, then reassemble in order
    let rows = (0..spec.grid_n)
        .into_par_iter()
        .map(|i| scan_row(&spec, i))
        .collect::<Result<Vec<_>, _>>()?;
    let csv = emit_csv(&rows);
    let meta = json!({
        "d": spec.d,
        "rm1": spec.r_m1,
        "r0_lo": spec.r0_lo,
        "r0_hi": spec.r0_hi,
        "grid": spec.grid_n,
        "transient": spec.transient,
        "keep": spec.keep,
        "defaults": { "grid": DEFAULT_GRID_N, "transient": DEFAULT_TRANSIENT, "keep": DEFAULT_KEEP },
        "classify_tol": CLASSIFY_TOL,
        "classify_max_period": CLASSIFY_MAX_PERIOD,
        "cycle_tol": CYCLE_TOL,
        "threads": threads,
        "period_sentinels": { "aperiodic": 0, "overflow": -1 },
    });
    deliver_csv(&args.out, &csv, &meta)
}

fn run_extinct(args: ExtinctArgs) -> Result<(), CliError> {
    let sys = load_system(&args.system)?;
    let bext = ricker_core::lineig::check_bext(&sys);
    let c0 = check_c0(&sys);
    let extinct = bext.extinct || c0;
    let criterion = match (bext.extinct, c0) {
        (true, true) => "both",
        (true, false) => "alb",
        (false, true) => "c0",
        (false, false) => "none",
    };
    let doc = json!({
        "extinct": extinct,
        "mean_sigma2": bext.mean_sigma2,
        "criterion": criterion,
        "alb": {
            "holds": bext.criterion_alb,
            "all_b_below_one": bext.all_b_below_one,
            "eigen_product": bext.eigen.as_ref().map(|e| e.product),
            "comparison_a": bext.coeffs.a.values(),
            "comparison_b": bext.coeffs.b.values(),
        },
        "c0": { "holds": c0 },
        "meta": {
            "combined_period": sys.combined_period(),
            "exp_cap": EXP_CAP,
        },
    });
    deliver_json(&args.out, &doc)
}
