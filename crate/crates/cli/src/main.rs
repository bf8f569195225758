use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gconc::bench::{run_bench_routes, to_csv};
use gconc::exterior::lagrange_fuzz;
use gconc::measure::report_for_cuts;
use gconc::qsfile::{parse_qs, write_qs};
use gconc::{
    global_report_with, maximize, parse_ket, render, standard_state, Bipartition, Execution,
    PureState, QuditDims, Route, SearchConfig, StandardState, DEFAULT_SEP_EPSILON,
};
use serde_json::json;

/// Largest relative gap `selftest --lagrange` tolerates.
const LAGRANGE_TOL: f64 = 1e-10;

#[derive(Parser)]
#[command(
    name = "gconc",
    version,
    about = "Generalized concurrence of multiparticle pure states"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Per-cut and global concurrence of a state
    Measure(MeasureArgs),
    /// Print a standard state in ket notation
    Gen(GenArgs),
    /// Hill-climb towards a state with large global concurrence
    Search(SearchArgs),
    /// Time the wedge and trace routes against each other (CSV)
    Bench(BenchArgs),
    /// Numerical self-checks
    Selftest(SelftestArgs),
    /// Parse a ket expression and print it as a state file
    Parse(ParseArgs),
}

#[derive(Args)]
#[command(group(clap::ArgGroup::new("source").required(true).args(["state", "ket", "gen"])))]
struct MeasureArgs {
    /// State file (.qs)
    #[arg(long)]
    state: Option<PathBuf>,
    /// Ket expression, e.g. "1/sqrt(2)*(|00> + |11>)"
    #[arg(long)]
    ket: Option<String>,
    /// Local dimensions for --ket, e.g. 2,3
    #[arg(long, requires = "ket")]
    dims: Option<QuditDims>,
    /// Standard state: bell, ghz, w, hs
    #[arg(long)]
    gen: Option<StandardState>,
    #[arg(long, default_value_t = 2, requires = "gen")]
    n: usize,
    #[arg(long, default_value_t = 2, requires = "gen")]
    d: usize,
    /// Cut as 0-based particle indices joined by '+'; repeatable
    #[arg(long, conflicts_with = "all")]
    cut: Vec<String>,
    /// Every canonical cut (the default)
    #[arg(long)]
    all: bool,
    #[arg(long, default_value_t = Route::Trace)]
    route: Route,
    /// Threshold on E^2 below which a cut counts as separable
    #[arg(long, default_value_t = DEFAULT_SEP_EPSILON)]
    eps: f64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args)]
struct GenArgs {
    name: StandardState,
    #[arg(long, default_value_t = 2)]
    n: usize,
    #[arg(long, default_value_t = 2)]
    d: usize,
    /// Also write the state to this file in .qs format
    #[arg(long)]
    emit_state: Option<PathBuf>,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    dims: QuditDims,
    #[arg(long, default_value_t = 16)]
    restarts: usize,
    #[arg(long, default_value_t = 5000)]
    iters: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = Route::Trace)]
    route: Route,
    /// Write the best state here (.qs) and its report next to it (.json)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    /// Comma-separated list of dims, each joined by 'x', e.g. 2x2,2x2x2
    #[arg(long, value_delimiter = ',', required = true)]
    dims_list: Vec<QuditDims>,
    /// Comma-separated cuts, members joined by '+', e.g. 0,0+1
    #[arg(long, value_delimiter = ',', required = true)]
    cuts: Vec<String>,
    #[arg(long, default_value_t = 5)]
    reps: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_delimiter = ',', default_values_t = [Route::Wedge, Route::Trace])]
    routes: Vec<Route>,
}

#[derive(Args)]
struct SelftestArgs {
    /// Fuzz Lagrange's identity on random complex vector pairs
    #[arg(long, required = true)]
    lagrange: bool,
    #[arg(long, default_value_t = 10_000)]
    samples: usize,
    #[arg(long, default_value_t = 64)]
    max_m: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct ParseArgs {
    #[arg(long)]
    ket: String,
    #[arg(long)]
    dims: Option<QuditDims>,
}

enum CliError {
    Core(gconc::Error),
    Io(PathBuf, io::Error),
    Output(io::Error),
    Selftest(String),
}

impl From<gconc::Error> for CliError {
    fn from(e: gconc::Error) -> Self {
        CliError::Core(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Output(e)
    }
}

impl CliError {
    fn code(&self) -> &'static str {
        match self {
            CliError::Core(e) => e.code(),
            CliError::Io(..) | CliError::Output(_) => "io",
            CliError::Selftest(_) => "selftest",
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Core(e) => e.to_string(),
            CliError::Io(path, e) => format!("{}: {e}", path.display()),
            CliError::Output(e) => e.to_string(),
            CliError::Selftest(m) => m.clone(),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::Io(path.to_path_buf(), e))
}

fn write(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|e| CliError::Io(path.to_path_buf(), e))
}

fn emit(text: &str) -> CliResult<()> {
    let mut out = io::stdout().lock();
    out.write_all(text.as_bytes())?;
    if !text.ends_with('\n') {
        out.write_all(b"\n")?;
    }
    out.flush()?;
    Ok(())
}

fn warn_if_normalized(state: &PureState) {
    if state.was_normalized() {
        eprintln!("warning: input was not unit-norm; amplitudes were rescaled");
    }
}

fn measure(args: MeasureArgs) -> CliResult<()> {
    let state = match (&args.state, &args.ket, args.gen) {
        (Some(path), _, _) => parse_qs(&read(path)?)?,
        (_, Some(expr), _) => parse_ket(expr, args.dims.as_ref())?,
        (_, _, Some(kind)) => standard_state(kind, args.n, args.d)?,
        _ => unreachable!("clap enforces one source"),
    };
    warn_if_normalized(&state);
    let n = state.num_particles();
    let report = if args.cut.is_empty() {
        global_report_with(&state, args.route, args.eps, Execution::default())?
    } else {
        let cuts = args
            .cut
            .iter()
            .map(|c| Bipartition::parse(c, n))
            .collect::<gconc::Result<Vec<_>>>()?;
        report_for_cuts(&state, &cuts, args.route, args.eps, Execution::default())?
    };
    emit(&match args.format {
        Format::Text => report.to_text(),
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
    })
}

fn gen(args: GenArgs) -> CliResult<()> {
    let state = standard_state(args.name, args.n, args.d)?;
    if let Some(path) = &args.emit_state {
        write(path, &write_qs(&state))?;
    }
    emit(&render(&state))
}

fn search(args: SearchArgs) -> CliResult<()> {
    let mut config = SearchConfig::new(args.dims, args.seed);
    config.restarts = args.restarts;
    config.iters_per_restart = args.iters;
    config.route = args.route;
    let result = maximize(&config)?;
    for r in &result.restarts {
        eprintln!(
            "restart={} best={:.12} evals={}",
            r.restart, r.best, r.evals
        );
    }
    let doc = json!({
        "seed": args.seed,
        "restarts": args.restarts,
        "iters_per_restart": args.iters,
        "evaluations": result.evaluations,
        "max_evaluated": result.max_evaluated,
        "trajectory": result.trajectory,
        "report": result.best_report,
    });
    let text = serde_json::to_string_pretty(&doc).expect("search summary serializes");
    if let Some(path) = &args.out {
        write(path, &write_qs(&result.best_state))?;
        write(&path.with_extension("json"), &format!("{text}\n"))?;
    }
    emit(&text)
}

fn bench(args: BenchArgs) -> CliResult<()> {
    let cuts = args
        .cuts
        .iter()
        .map(|c| {
            c.split('+')
                .map(|k| {
                    k.trim()
                        .parse::<usize>()
                        .map_err(|_| gconc::Error::BadSubset(format!("bad cut '{c}'")))
                })
                .collect::<gconc::Result<Vec<_>>>()
        })
        .collect::<gconc::Result<Vec<_>>>()?;
    let rows = run_bench_routes(&args.dims_list, &cuts, &args.routes, args.reps, args.seed)?;
    emit(&to_csv(&rows))
}

fn selftest(args: SelftestArgs) -> CliResult<()> {
    debug_assert!(args.lagrange);
    let s = lagrange_fuzz(args.samples, args.max_m, args.seed)?;
    emit(&format!(
        "lagrange samples={} max_m={} max_relative_gap={:e}",
        s.samples, s.max_m, s.max_relative_gap
    ))?;
    if s.max_relative_gap > LAGRANGE_TOL {
        return Err(CliError::Selftest(format!(
            "max relative gap {:e} exceeds {LAGRANGE_TOL:e}",
            s.max_relative_gap
        )));
    }
    Ok(())
}

fn parse(args: ParseArgs) -> CliResult<()> {
    let state = parse_ket(&args.ket, args.dims.as_ref())?;
    warn_if_normalized(&state);
    emit(&write_qs(&state))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Measure(a) => measure(a),
        Command::Gen(a) => gen(a),
        Command::Search(a) => search(a),
        Command::Bench(a) => bench(a),
        Command::Selftest(a) => selftest(a),
        Command::Parse(a) => parse(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let msg = e.message().replace('\n', " ");
            eprintln!("error: {}: {msg}", e.code());
            ExitCode::from(1)
        }
    }
}
