use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use tspn::bounds::{self, BoundCheck};
use tspn::io::{self, ResultFile, Timing};
use tspn::oracles::{self, DEFAULT_SWEEP_K};
use tspn::sweep::{DEFAULT_LINE_PATH_EPSILON, DEFAULT_RAY_PATH_EPSILON, DEFAULT_TOUR_EPSILON};
use tspn::{Mode, OracleError, RegionSet, SweepConfig};

/// Approximate shortest tours and paths visiting lines or rays.
#[derive(Parser)]
#[command(name = "tspn", version)]
struct Cli {
    /// Worker threads for the orientation sweep.
    #[arg(long, global = true, env = "TSPN_THREADS")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tour of lines: best-perimeter rectangle (ε defaults to 1/200).
    TourLines(RunArgs),
    /// Path of lines: three sides of the best rectangle (ε defaults to 1/250).
    PathLines(RunArgs),
    /// Tour of rays: best-perimeter rectangle (ε defaults to 1/200).
    TourRays(RunArgs),
    /// Path of rays: the best rectangle's boundary (ε defaults to 1/1000).
    PathRays(RunArgs),
    /// Check a result against an instance and a dense-sweep lower bound.
    Certify(CertifyArgs),
    /// Enclosing-rectangle bounds for an open polyline.
    Bounds(BoundsArgs),
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    input: PathBuf,
    /// Result JSON.
    #[arg(long)]
    out: PathBuf,
    /// Optional SVG figure.
    #[arg(long)]
    svg: Option<PathBuf>,
    #[arg(long, conflicts_with = "randomize_eps")]
    epsilon: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Draw ε uniformly from [1/300, 1/200] using the seed (tours only).
    #[arg(long)]
    randomize_eps: bool,
    /// Tolerance of the output intersection check.
    #[arg(long, default_value_t = 1e-9)]
    tolerance: f64,
}

#[derive(Args)]
struct CertifyArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    result: PathBuf,
    /// Orientations of the dense sweep.
    #[arg(long, default_value_t = DEFAULT_SWEEP_K)]
    sweep_k: usize,
    #[arg(long, default_value_t = 1e-9)]
    tolerance: f64,
    /// Write the result with the certificate attached.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BoundsArgs {
    #[arg(long)]
    curve: PathBuf,
    #[arg(long, value_enum, default_value_t = Check::Both)]
    check: Check,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Check {
    /// `w + 2h ≤ √2·L`.
    ThreeSides,
    /// `2(w + h) ≤ √5·L`.
    Perimeter,
    Both,
}

const EXIT_DEGENERATE: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().context("setting up the thread pool")?;
    }
    match cli.command {
        Command::TourLines(a) => solve(a, io::RegionKind::Lines, Mode::Tour),
        Command::PathLines(a) => solve(a, io::RegionKind::Lines, Mode::Path),
        Command::TourRays(a) => solve(a, io::RegionKind::Rays, Mode::Tour),
        Command::PathRays(a) => solve(a, io::RegionKind::Rays, Mode::Path),
        Command::Certify(a) => certify(a),
        Command::Bounds(a) => check_bounds(a),
    }
}

fn read_regions(path: &Path, kind: io::RegionKind) -> Result<RegionSet> {
    let regions = io::read_instance(path).with_context(|| format!("reading {}", path.display()))?;
    if regions.kind() != kind {
        bail!("{}: expected a {kind} instance, got {}", path.display(), regions.kind());
    }
    Ok(regions)
}

fn config(a: &RunArgs, kind: io::RegionKind, mode: Mode) -> Result<SweepConfig> {
    if a.randomize_eps {
        if mode != Mode::Tour {
            bail!("--randomize-eps applies to tours only");
        }
        return Ok(SweepConfig::randomized_tour(a.seed));
    }
    let cfg = match (kind, mode) {
        (_, Mode::Tour) => SweepConfig::for_tour(a.epsilon.unwrap_or(DEFAULT_TOUR_EPSILON), a.seed),
        (io::RegionKind::Lines, Mode::Path) => {
            SweepConfig::for_path(a.epsilon.unwrap_or(DEFAULT_LINE_PATH_EPSILON), a.seed)
        }
        // the ray path reuses the perimeter sweep over [0, π/2)
        (io::RegionKind::Rays, Mode::Path) => {
            SweepConfig::for_tour(a.epsilon.unwrap_or(DEFAULT_RAY_PATH_EPSILON), a.seed)
        }
    };
    Ok(cfg?)
}

fn solve(a: RunArgs, kind: io::RegionKind, mode: Mode) -> Result<ExitCode> {
    let regions = read_regions(&a.input, kind)?;
    let cfg = config(&a, kind, mode)?;
    let start = Instant::now();
    let result = regions.solve(mode, &cfg)?;
    let elapsed = start.elapsed().as_secs_f64();

    let check = oracles::verify_output(&result, &regions, a.tolerance);
    if !check.ok {
        bail!(
            "output misses region {} by {:e}",
            check.worst_region.map_or("?".into(), |i| i.to_string()),
            check.max_violation
        );
    }
    let file = ResultFile::new(&result, &regions, cfg.seed, Some(Timing { solve_seconds: elapsed }));
    file.write(&a.out)?;
    if let Some(svg) = &a.svg {
        io::write_atomic(svg, tspn::svg::emit_svg(&regions, &result).as_bytes())?;
    }
    println!(
        "{} regions, ε = {}, m = {}: objective {:.9} at orientation {} ({:.6} rad) in {:.3} s",
        regions.len(),
        cfg.epsilon,
        cfg.m,
        result.objective_value,
        result.winning_angle_index,
        result.winning_angle,
        elapsed
    );
    if result.degenerate {
        println!("warning: degenerate instance, all regions share a point");
        return Ok(ExitCode::from(EXIT_DEGENERATE));
    }
    Ok(ExitCode::SUCCESS)
}

fn certify(a: CertifyArgs) -> Result<ExitCode> {
    let regions = io::read_instance(&a.input).with_context(|| format!("reading {}", a.input.display()))?;
    let mut file = ResultFile::read(&a.result).with_context(|| format!("reading {}", a.result.display()))?;
    file.check_instance(&regions)?;
    let result = file.to_tour_result()?;

    let check = oracles::verify_output(&result, &regions, a.tolerance);
    if !check.ok {
        println!(
            "FAIL intersection: region {} missed by {:e}",
            check.worst_region.map_or("?".into(), |i| i.to_string()),
            check.max_violation
        );
        return Ok(ExitCode::FAILURE);
    }
    match oracles::certify(&result, &regions, a.sweep_k) {
        Ok(cert) => {
            let ratio = cert.ratio.expect("positive lower bound");
            let verdict = if cert.passed { "PASS" } else { "FAIL ratio" };
            println!(
                "{verdict}: ratio {ratio:.6} ≤ {:.6} required (output {:.9}, lower bound {:.9}, k = {})",
                cert.bound, cert.output_value, cert.lower_bound, a.sweep_k
            );
            let passed = cert.passed;
            if let Some(out) = &a.out {
                file.certificate = Some(cert);
                file.write(out)?;
            }
            Ok(if passed { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        Err(OracleError::DegenerateInstance) => {
            let length = oracles::output_length(&result);
            println!("degenerate: OPT = 0 (output {length:.3e})");
            let zero = length <= 1e-9 * (1.0 + regions.scale());
            Ok(if zero { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        Err(e) => Err(e.into()),
    }
}

fn check_bounds(a: BoundsArgs) -> Result<ExitCode> {
    let curve = io::read_curve(&a.curve).with_context(|| format!("reading {}", a.curve.display()))?;
    let length = curve.length();
    let mut ok = true;
    let mut report = |name: &str, c: BoundCheck| {
        let holds = c.holds(length);
        ok &= holds;
        println!(
            "{name}: value {:.12} bound {:.12} slack {:.3e} {}",
            c.value,
            c.bound,
            c.slack,
            if holds { "ok" } else { "VIOLATED" }
        );
    };
    if a.check != Check::Perimeter {
        report("w + 2h ≤ √2·L", bounds::three_side_bound(&curve));
    }
    if a.check != Check::ThreeSides {
        report("2(w + h) ≤ √5·L", bounds::perimeter_bound(&curve));
    }
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}
