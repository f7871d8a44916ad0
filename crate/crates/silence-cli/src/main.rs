//! `silence` — silence-interval design and figure-reproduction data.
//!
//! Four subcommands tie the library together: `center` iterates the
//! centering algorithm and writes its trace, `families` compares the
//! heuristic interval families against the brute-force optimum, `bound`
//! emits the Gauss-inequality rate–distortion curves, and `simulate`
//! validates a design by seeded Monte-Carlo. Every output is a CSV or
//! JSON file with locale-independent formatting, so runs are bit-exact
//! reproducible.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use silence_core::bounds::{fig6_sweep, fig6_to_csv, k_grid, matched_rate_ratio};
use silence_core::centering::{
    best_estimate, iterate_centering, trace_to_csv, CenteringTrace, DEFAULT_MAX_ITER, DEFAULT_TOL,
};
use silence_core::heuristics::{curves_to_csv, family_sweep, rows_to_csv};
use silence_core::simulate::simulate;
use silence_core::{Density, DistortionKind, Error, Interval};

#[derive(Parser)]
#[command(
    name = "silence",
    version,
    about = "Silence-interval design for probabilistic sampling of scalar log-concave variables"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Iterate the centering algorithm and write the trace and summary.
    Center(CenterArgs),
    /// Compare the four heuristic interval families with the optimum.
    Families(FamiliesArgs),
    /// Emit the Gauss-bound and exact rate-distortion curves.
    Bound(BoundArgs),
    /// Monte-Carlo validation of a silence interval.
    Simulate(SimulateArgs),
}

#[derive(Args)]
struct DensityArg {
    /// Density configuration: inline JSON or @path to a JSON file.
    #[arg(long)]
    density: String,
}

impl DensityArg {
    fn load(&self) -> Result<Density, CliError> {
        let text = match self.density.strip_prefix('@') {
            Some(path) => fs::read_to_string(path)
                .map_err(|e| CliError::Invalid(format!("cannot read density file {path}: {e}")))?,
            None => self.density.clone(),
        };
        Ok(Density::from_config_json(&text)?)
    }
}

#[derive(Args)]
struct CenterArgs {
    #[command(flatten)]
    density: DensityArg,
    /// Required silence probability mass, in (0, 1).
    #[arg(long)]
    eta: f64,
    /// Distortion measure.
    #[arg(long, default_value = "mse")]
    distortion: String,
    /// Endpoint-movement convergence tolerance.
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// Iteration cap.
    #[arg(long, default_value_t = DEFAULT_MAX_ITER)]
    max_iter: usize,
    /// Left end of the start interval (defaults to the central
    /// quantile interval of mass eta).
    #[arg(long, requires = "start_hi", allow_negative_numbers = true)]
    start_lo: Option<f64>,
    /// Right end of the start interval.
    #[arg(long, requires = "start_lo", allow_negative_numbers = true)]
    start_hi: Option<f64>,
    /// Output directory.
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

#[derive(Args)]
struct FamiliesArgs {
    #[command(flatten)]
    density: DensityArg,
    /// Comma-separated list of silence masses.
    #[arg(long, value_delimiter = ',', required = true)]
    eta: Vec<f64>,
    /// Sliding-family scan resolution.
    #[arg(long, default_value_t = 201)]
    grid: usize,
    /// Output directory.
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

#[derive(Args)]
struct BoundArgs {
    /// Smallest silence half-width.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    k_min: f64,
    /// Largest silence half-width.
    #[arg(long, default_value_t = 4.0)]
    k_max: f64,
    /// Number of grid points.
    #[arg(long, default_value_t = 400)]
    k_steps: usize,
    /// Print the worst exact-Gaussian to periodic distortion ratio over
    /// matched rates in [0.3, 0.9].
    #[arg(long)]
    ratio_check: bool,
    /// Output directory.
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

#[derive(Args)]
struct SimulateArgs {
    #[command(flatten)]
    density: DensityArg,
    /// Silence interval left end (with --silence-hi); alternative to --eta.
    #[arg(long, requires = "silence_hi", conflicts_with = "eta", allow_negative_numbers = true)]
    silence_lo: Option<f64>,
    /// Silence interval right end.
    #[arg(long, requires = "silence_lo", conflicts_with = "eta", allow_negative_numbers = true)]
    silence_hi: Option<f64>,
    /// Derive the silence interval by iterated centering at this mass.
    #[arg(long)]
    eta: Option<f64>,
    /// Estimate under silence (defaults to the interval's best estimate).
    #[arg(long, allow_negative_numbers = true)]
    estimate: Option<f64>,
    /// Distortion measure used for derived estimates.
    #[arg(long, default_value = "mse")]
    distortion: String,
    /// Convergence tolerance of the derivation run.
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// Iteration cap of the derivation run.
    #[arg(long, default_value_t = DEFAULT_MAX_ITER)]
    max_iter: usize,
    /// Number of ticks to draw.
    #[arg(long)]
    ticks: u64,
    /// Generator seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output directory.
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

/// Exit statuses: 2 for invalid configuration, 3 for an infeasible
/// silence mass, 1 for filesystem trouble.
enum CliError {
    Invalid(String),
    Infeasible(String),
    Io(String),
}

impl CliError {
    fn report(&self) -> ExitCode {
        let (code, message) = match self {
            CliError::Io(m) => (1, m),
            CliError::Invalid(m) => (2, m),
            CliError::Infeasible(m) => (3, m),
        };
        eprintln!("error: {message}");
        ExitCode::from(code)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InfeasibleEta { .. } => CliError::Infeasible(e.to_string()),
            _ => CliError::Invalid(e.to_string()),
        }
    }
}

fn write_output(dir: &Path, name: &str, contents: &str) -> Result<(), CliError> {
    fs::create_dir_all(dir)
        .map_err(|e| CliError::Io(format!("cannot create {}: {e}", dir.display())))?;
    let path = dir.join(name);
    fs::write(&path, contents)
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?;
    eprintln!("wrote {}", path.display());
    Ok(())
}

fn check_probability(name: &str, value: f64) -> Result<(), CliError> {
    if value > 0.0 && value < 1.0 {
        Ok(())
    } else {
        Err(CliError::Invalid(format!("--{name} must lie strictly inside (0, 1), got {value}")))
    }
}

fn run_center(args: &CenterArgs) -> Result<(), CliError> {
    let d = args.density.load()?;
    check_probability("eta", args.eta)?;
    if args.tol.is_nan() || args.tol <= 0.0 {
        return Err(CliError::Invalid(format!("--tol must be positive, got {}", args.tol)));
    }
    if args.max_iter == 0 {
        return Err(CliError::Invalid("--max-iter must be at least 1".into()));
    }
    let kind = DistortionKind::parse(&args.distortion)?;
    let start = match (args.start_lo, args.start_hi) {
        (Some(lo), Some(hi)) => Interval::new(lo, hi)?,
        _ => Interval::new(
            d.quantile(0.5 * (1.0 - args.eta))?,
            d.quantile(0.5 * (1.0 + args.eta))?,
        )?,
    };
    let trace: CenteringTrace = iterate_centering(&d, &start, args.eta, kind, args.tol, args.max_iter)?;
    let summary = serde_json::json!({
        "density": d.kind_name(),
        "eta": args.eta,
        "final": trace.final_design(),
        "iterations": trace.steps(),
        "converged": trace.converged,
        "fixed_point_gap": trace.fixed_point_gap,
    });
    write_output(&args.out, "trace.csv", &trace_to_csv(&trace))?;
    write_output(
        &args.out,
        "summary.json",
        &format!("{}\n", serde_json::to_string_pretty(&summary).expect("serializable")),
    )
}

fn run_families(args: &FamiliesArgs) -> Result<(), CliError> {
    let d = args.density.load()?;
    for &eta in &args.eta {
        check_probability("eta", eta)?;
    }
    if args.grid < 100 {
        return Err(CliError::Invalid(format!("--grid must be at least 100, got {}", args.grid)));
    }
    // Rows come out ordered by the sweep variable.
    let mut etas = args.eta.clone();
    etas.sort_by(f64::total_cmp);
    etas.dedup();
    let sweep = family_sweep(&d, &etas, args.grid)?;
    write_output(&args.out, "families.csv", &rows_to_csv(&sweep.rows))?;
    write_output(&args.out, "curves.csv", &curves_to_csv(&sweep.curves))
}

fn run_bound(args: &BoundArgs) -> Result<(), CliError> {
    let ks = k_grid(args.k_min, args.k_max, args.k_steps)?;
    let points = fig6_sweep(&ks)?;
    write_output(&args.out, "fig6.csv", &fig6_to_csv(&points))?;
    if args.ratio_check {
        let ratio = matched_rate_ratio(&ks, 0.3, 0.9)?;
        println!("max distortion ratio (exact gaussian / periodic), rates 0.3..0.9: {ratio:.15}");
    }
    Ok(())
}

fn run_simulate(args: &SimulateArgs) -> Result<(), CliError> {
    let d = args.density.load()?;
    if args.ticks == 0 {
        return Err(CliError::Invalid("--ticks must be at least 1".into()));
    }
    let kind = DistortionKind::parse(&args.distortion)?;
    let (silence, estimate) = match (args.silence_lo, args.silence_hi, args.eta) {
        (Some(lo), Some(hi), None) => {
            let interval = Interval::new(lo, hi)?;
            let estimate = match args.estimate {
                Some(e) => e,
                None => best_estimate(&d, &interval, kind)?,
            };
            (interval, estimate)
        }
        (None, None, Some(eta)) => {
            check_probability("eta", eta)?;
            if args.tol.is_nan() || args.tol <= 0.0 {
                return Err(CliError::Invalid(format!("--tol must be positive, got {}", args.tol)));
            }
            if args.max_iter == 0 {
                return Err(CliError::Invalid("--max-iter must be at least 1".into()));
            }
            let start = Interval::new(d.quantile(0.5 * (1.0 - eta))?, d.quantile(0.5 * (1.0 + eta))?)?;
            let design = iterate_centering(&d, &start, eta, kind, args.tol, args.max_iter)?
                .final_design()
                .clone();
            (design.interval, args.estimate.unwrap_or(design.estimate))
        }
        _ => {
            return Err(CliError::Invalid(
                "either --silence-lo/--silence-hi or --eta must be given".into(),
            ))
        }
    };
    let report = simulate(&d, &silence, estimate, args.ticks, args.seed)?;
    write_output(
        &args.out,
        "report.json",
        &format!("{}\n", serde_json::to_string_pretty(&report).expect("serializable")),
    )
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Center(args) => run_center(args),
        Command::Families(args) => run_families(args),
        Command::Bound(args) => run_bound(args),
        Command::Simulate(args) => run_simulate(args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => e.report(),
    }
}
