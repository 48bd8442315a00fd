//! Command-line front end: generate, solve, verify, reduce, bench, render.
//!
//! Exit codes: 0 success, 1 validation/usage errors, 2 resource limits,
//! 3 solver self-check failure (a placement that fails verification is
//! never written).

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use segcover::error::Error;
use segcover::exact_pierce::{min_pierce, PierceProblem, DEFAULT_WORK_LIMIT};
use segcover::hardness::{reduce_to_instance, CubicPlanarGraph};
use segcover::instance::{
    random_instance, verify_cover, GenParams, Instance, OrientationMode, Placement,
};
use segcover::ptas_arbitrary::cover_ptas_arbitrary;
use segcover::ptas_axis::cover_ptas_axis;
use segcover::render::render_svg;
use segcover::strip_cover::cover_axis_parallel;

#[derive(Parser)]
#[command(
    name = "segcover",
    version,
    about = "Sensor placement for covering line segments in a rectangle"
)]
struct Cli {
    /// Comparison tolerance (default 1e-9; the SEGCOVER_TOL environment
    /// variable overrides the default, this flag overrides both).
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algo {
    Approx12,
    PtasAxis,
    PtasArb,
    Exact,
}

impl Algo {
    fn name(self) -> &'static str {
        match self {
            Algo::Approx12 => "approx12",
            Algo::PtasAxis => "ptas-axis",
            Algo::PtasArb => "ptas-arb",
            Algo::Exact => "exact",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum OrientationArg {
    AxisParallel,
    Arbitrary,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random instance (deterministic for a fixed seed).
    Generate(GenerateArgs),
    /// Solve an instance and write the placement.
    Solve(SolveArgs),
    /// Check a placement against an instance.
    Verify(VerifyArgs),
    /// Turn a cubic planar graph into a coverage instance.
    Reduce(ReduceArgs),
    /// Average solver output over random instances, as CSV.
    Bench(BenchArgs),
    /// Render an instance (and optional placement) as SVG.
    Render(RenderArgs),
}

#[derive(Args)]
struct GenerateArgs {
    /// Number of segments.
    #[arg(long, default_value_t = 30)]
    n: usize,
    #[arg(long, default_value_t = 700.0)]
    width: f64,
    #[arg(long, default_value_t = 700.0)]
    height: f64,
    #[arg(long, default_value_t = 20.0)]
    rho: f64,
    #[arg(long, value_enum, default_value = "axis-parallel")]
    orientation: OrientationArg,
    /// Maximum segment length (default: min(width, height)).
    #[arg(long)]
    max_len: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output path (stdout if omitted).
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long, value_enum)]
    algo: Algo,
    /// Instance JSON path.
    #[arg(short, long)]
    input: PathBuf,
    /// Placement JSON path (stdout if omitted).
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Accuracy target for ptas-axis: solution size <= (1 + eps) * OPT.
    #[arg(long, default_value_t = 1.0)]
    eps: f64,
    /// Shift classes for ptas-arb: solution size <= (1 + 1/k) * OPT.
    #[arg(long, default_value_t = 2)]
    k: usize,
    /// Length bound factor for ptas-arb (default: derived from the
    /// instance as max length / rho, rounded up to 2 decimals).
    #[arg(long)]
    c: Option<f64>,
    /// Largest solution size the exact search may return.
    #[arg(long)]
    max_size: Option<usize>,
    /// Search nodes allowed in exact solves.
    #[arg(long, default_value_t = DEFAULT_WORK_LIMIT)]
    work_limit: u64,
}

#[derive(Args)]
struct VerifyArgs {
    /// Instance JSON path.
    #[arg(short, long)]
    input: PathBuf,
    /// Placement JSON path.
    #[arg(short, long)]
    placement: PathBuf,
    /// Report path (stdout if omitted).
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ReduceArgs {
    /// Graph JSON path: {"n": <int>, "edges": [[u, v], ...]}.
    #[arg(long)]
    graph: PathBuf,
    /// Instance output path.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct BenchArgs {
    /// Comma-separated segment counts, e.g. 10,15,20,30.
    #[arg(long, default_value = "10,15,20,30")]
    n: String,
    /// Comma-separated sensing ranges, e.g. 20,30,40,50.
    #[arg(long, default_value = "20,30,40,50")]
    rho: String,
    #[arg(long, default_value_t = 20)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "approx12")]
    algo: Algo,
    #[arg(long, default_value_t = 700.0)]
    width: f64,
    #[arg(long, default_value_t = 700.0)]
    height: f64,
    /// Maximum segment length (default: min(width, height)).
    #[arg(long)]
    max_len: Option<f64>,
    /// Search nodes allowed per exact oracle attempt; the ratio column is
    /// blank whenever the oracle gives up.
    #[arg(long, default_value_t = DEFAULT_WORK_LIMIT)]
    work_limit: u64,
    #[arg(long, default_value_t = 1.0)]
    eps: f64,
    #[arg(long, default_value_t = 2)]
    k: usize,
    /// CSV output path (stdout if omitted).
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct RenderArgs {
    /// Instance JSON path.
    #[arg(short, long)]
    input: PathBuf,
    /// Optional placement JSON path.
    #[arg(short, long)]
    placement: Option<PathBuf>,
    /// Draw hippodrome outlines.
    #[arg(long)]
    hippodromes: bool,
    /// SVG output path (stdout if omitted).
    #[arg(short, long)]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are successes; everything else is
            // a usage error.
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::ResourceLimit(_) => 2,
                _ => 1,
            };
            ExitCode::from(code)
        }
    }
}

fn init_tolerance(flag: Option<f64>) -> Result<(), Error> {
    let tol = match flag {
        Some(t) => Some(t),
        None => match std::env::var("SEGCOVER_TOL") {
            Ok(s) => Some(
                s.parse::<f64>()
                    .map_err(|_| Error::validation("SEGCOVER_TOL", "not a number"))?,
            ),
            Err(_) => None,
        },
    };
    if let Some(t) = tol {
        if !(t.is_finite() && t > 0.0) {
            return Err(Error::validation("tol", "tolerance must be positive"));
        }
        segcover::geom::set_tolerance(t);
    }
    Ok(())
}

fn read_file(path: &PathBuf) -> Result<String, Error> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::validation(path.display().to_string(), e.to_string()))
}

fn emit(output: &Option<PathBuf>, content: &str) -> Result<(), Error> {
    match output {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| Error::validation(path.display().to_string(), e.to_string())),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    init_tolerance(cli.tol)?;
    match cli.command {
        Command::Generate(args) => generate(args),
        Command::Solve(args) => solve(args),
        Command::Verify(args) => verify(args),
        Command::Reduce(args) => reduce(args),
        Command::Bench(args) => bench(args),
        Command::Render(args) => render(args),
    }
}

fn generate(args: GenerateArgs) -> Result<ExitCode, Error> {
    let params = GenParams {
        width: args.width,
        height: args.height,
        rho: args.rho,
        n: args.n,
        orientation: match args.orientation {
            OrientationArg::AxisParallel => OrientationMode::AxisParallel,
            OrientationArg::Arbitrary => OrientationMode::Arbitrary,
        },
        max_len: args.max_len.unwrap_or(args.width.min(args.height)),
        seed: args.seed,
    };
    let inst = random_instance(&params)?;
    emit(&args.output, &(inst.to_json() + "\n"))?;
    Ok(ExitCode::SUCCESS)
}

/// Derives the ptas-arb length bound from the instance: the maximum
/// segment length over rho, rounded up to two decimals.
fn derive_c(inst: &Instance) -> f64 {
    let max_len = inst.segments.iter().map(|s| s.length()).fold(0.0, f64::max);
    let raw = max_len / inst.rho;
    ((raw * 100.0).ceil() / 100.0).max(0.01)
}

fn solve(args: SolveArgs) -> Result<ExitCode, Error> {
    let inst = Instance::from_json(&read_file(&args.input)?)?;
    let placement = match args.algo {
        Algo::Approx12 => cover_axis_parallel(&inst)?.placement,
        Algo::PtasAxis => {
            let res = cover_ptas_axis(&inst, args.eps)?;
            eprintln!(
                "ptas-axis: optimum in [{}, {}] (T = {}, t = {})",
                res.opt_lower, res.opt_upper, res.config.threshold, res.config.strips
            );
            res.placement
        }
        Algo::PtasArb => {
            let c = args.c.unwrap_or_else(|| derive_c(&inst));
            let res = cover_ptas_arbitrary(&inst, c, args.k)?;
            eprintln!(
                "ptas-arb: class {} of {} chosen (c = {c})",
                res.chosen_class, res.layout.k
            );
            res.placement
        }
        Algo::Exact => {
            let hips = inst.hippodromes();
            let cap = args.max_size.unwrap_or(hips.len());
            let prob = PierceProblem::new(hips, inst.region)
                .with_cap(cap)
                .with_work_limit(args.work_limit);
            match min_pierce(&prob)? {
                Some(points) => Placement::new("exact", points),
                None => {
                    return Err(Error::validation(
                        "max-size",
                        format!("no piercing set of size <= {cap} exists"),
                    ))
                }
            }
        }
    };
    // Self-check: never write a placement that fails verification.
    let report = verify_cover(&inst, &placement);
    if !report.all_covered {
        eprintln!(
            "self-check failed: {} segments uncovered: {:?}",
            report.uncovered_indices.len(),
            report.uncovered_indices
        );
        return Ok(ExitCode::from(3));
    }
    eprintln!(
        "{}: {} sensors{}",
        placement.algorithm,
        placement.sensors.len(),
        placement
            .lower_bound
            .map(|lb| format!(", lower bound {lb:.4}"))
            .unwrap_or_default()
    );
    emit(&args.output, &(placement.to_json() + "\n"))?;
    Ok(ExitCode::SUCCESS)
}

fn verify(args: VerifyArgs) -> Result<ExitCode, Error> {
    let inst = Instance::from_json(&read_file(&args.input)?)?;
    let placement = Placement::from_json(&read_file(&args.placement)?)?;
    for (i, p) in placement.sensors.iter().enumerate() {
        if !inst.region.contains(*p) {
            return Err(Error::validation(
                format!("sensors[{i}]"),
                "sensor lies outside the region",
            ));
        }
    }
    let report = verify_cover(&inst, &placement);
    emit(&args.output, &(report.to_json() + "\n"))?;
    Ok(if report.all_covered { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn reduce(args: ReduceArgs) -> Result<ExitCode, Error> {
    let graph = CubicPlanarGraph::from_json(&read_file(&args.graph)?)?;
    let (inst, mapping) = reduce_to_instance(&graph)?;
    eprintln!(
        "reduced: {} segments, rho = {}, path length {} per edge",
        inst.segments.len(),
        mapping.rho,
        mapping.path_len
    );
    std::fs::write(&args.out, inst.to_json() + "\n")
        .map_err(|e| Error::validation(args.out.display().to_string(), e.to_string()))?;
    Ok(ExitCode::SUCCESS)
}

fn parse_list(name: &str, text: &str) -> Result<Vec<f64>, Error> {
    text.split(',')
        .map(|part| {
            part.trim()
                .parse::<f64>()
                .map_err(|_| Error::validation(name, format!("bad list entry '{part}'")))
        })
        .collect()
}

fn bench(args: BenchArgs) -> Result<ExitCode, Error> {
    let ns = parse_list("n", &args.n)?;
    let rhos = parse_list("rho", &args.rho)?;
    if args.trials == 0 {
        return Err(Error::validation("trials", "need at least one trial"));
    }
    let mut csv = String::from(
        "n,rho,algo,trials,mean_sensors,mean_lower_bound,mean_ratio_vs_oracle\n",
    );
    for &n in &ns {
        for &rho in &rhos {
            let mut sensors_sum = 0.0;
            let mut lb_sum = 0.0;
            let mut lb_count = 0usize;
            let mut ratio_sum = 0.0;
            let mut oracle_ok = true;
            for trial in 0..args.trials {
                let inst = random_instance(&GenParams {
                    width: args.width,
                    height: args.height,
                    rho,
                    n: n as usize,
                    orientation: match args.algo {
                        Algo::PtasArb => OrientationMode::Arbitrary,
                        _ => OrientationMode::AxisParallel,
                    },
                    max_len: args.max_len.unwrap_or(args.width.min(args.height)),
                    seed: args.seed + trial as u64,
                })?;
                let placement = match args.algo {
                    Algo::Approx12 => cover_axis_parallel(&inst)?.placement,
                    Algo::PtasAxis => cover_ptas_axis(&inst, args.eps)?.placement,
                    Algo::PtasArb => {
                        cover_ptas_arbitrary(&inst, derive_c(&inst), args.k)?.placement
                    }
                    Algo::Exact => {
                        let hips = inst.hippodromes();
                        let cap = hips.len();
                        let prob = PierceProblem::new(hips, inst.region)
                            .with_cap(cap)
                            .with_work_limit(args.work_limit);
                        Placement::new(
                            "exact",
                            min_pierce(&prob)?.expect("cap covers every hippodrome"),
                        )
                    }
                };
                sensors_sum += placement.sensors.len() as f64;
                if let Some(lb) = placement.lower_bound {
                    lb_sum += lb;
                    lb_count += 1;
                }
                if oracle_ok && args.algo != Algo::Exact {
                    let prob = PierceProblem::new(inst.hippodromes(), inst.region)
                        .with_work_limit(args.work_limit);
                    match min_pierce(&prob) {
                        Ok(Some(opt)) if !opt.is_empty() => {
                            ratio_sum += placement.sensors.len() as f64 / opt.len() as f64;
                        }
                        Ok(Some(_)) => {} // empty instance: no ratio
                        Ok(None) | Err(Error::ResourceLimit(_)) => oracle_ok = false,
                        Err(other) => return Err(other),
                    }
                }
            }
            let trials = args.trials as f64;
            let mean_lb = if lb_count == args.trials {
                format!("{:.4}", lb_sum / trials)
            } else {
                String::new()
            };
            let mean_ratio = if oracle_ok && args.algo != Algo::Exact {
                format!("{:.4}", ratio_sum / trials)
            } else {
                String::new()
            };
            let _ = writeln!(
                csv,
                "{},{},{},{},{:.4},{},{}",
                n,
                rho,
                args.algo.name(),
                args.trials,
                sensors_sum / trials,
                mean_lb,
                mean_ratio
            );
        }
    }
    emit(&args.output, &csv)?;
    Ok(ExitCode::SUCCESS)
}

fn render(args: RenderArgs) -> Result<ExitCode, Error> {
    let inst = Instance::from_json(&read_file(&args.input)?)?;
    let placement = match &args.placement {
        Some(path) => Some(Placement::from_json(&read_file(path)?)?),
        None => None,
    };
    let svg = render_svg(&inst, placement.as_ref(), args.hippodromes);
    emit(&args.output, &svg)?;
    Ok(ExitCode::SUCCESS)
}
