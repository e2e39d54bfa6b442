//! Command-line front end. Every subcommand writes CSV to `--out` or stdout.
//!
//! Exit codes: 0 success, 1 tolerance or numerical failure, 2 usage error.

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use periodic_tasep::finite_time::{
    one_point_flat_grid, one_point_general_auto, one_point_general_grid, one_point_step_grid,
    FredholmOptions,
};
use periodic_tasep::harness::{self, Settings, SweepFamily, SweepSpec};
use periodic_tasep::limit_dist::{distribution_grid, Family, ReferenceCurve, DEFAULT_NODE_COUNT};
use periodic_tasep::quadrature::QuadratureSpec;
use periodic_tasep::ring_bethe::{solve_bethe_roots, SystemShape};
use periodic_tasep::tasep_sim::{ensemble_cdf, InitialCondition, Observable, SimConfig};
use periodic_tasep::{Error, Result};
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "ptasep",
    version,
    about = "Exact, limiting and simulated one-point distributions of TASEP on a ring"
)]
struct Cli {
    /// settings file of `flag = value` lines; flags given on the command line win
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// worker threads (falls back to PTASEP_THREADS, then all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Roots of w^N (w+1)^(L-N) = z^L at one rescaled contour point
    Roots(RootsArgs),
    /// Exact P(x_k(t) >= a) on a range of thresholds
    FiniteCdf(FiniteArgs),
    /// Limit distribution F1 or F2 on an x grid, or a reference curve
    LimitCdf(LimitArgs),
    /// Monte Carlo tail probabilities of a tagged position or a bond current
    Simulate(SimArgs),
    /// Kolmogorov-Smirnov distance between two tabulated curves
    Compare(CompareArgs),
    /// Sup-distance of the scaled finite-ring distribution to its limit for several L
    Sweep(SweepArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Ic {
    Flat,
    Step,
}

#[derive(Clone, Copy, ValueEnum)]
enum LimitFamily {
    F1,
    F2,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    /// Fredholm determinant of size at most min(N, L-N)
    Fredholm,
    /// N x N determinant, rings up to 20 sites
    General,
}

#[derive(Args)]
struct Output {
    /// output file (stdout when absent)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RootsArgs {
    #[arg(long)]
    big_l: Option<usize>,
    #[arg(long)]
    big_n: Option<usize>,
    /// real part of the rescaled point zhat
    #[arg(long, allow_hyphen_values = true)]
    zhat_re: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    zhat_im: Option<f64>,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct FiniteArgs {
    #[arg(long, value_enum)]
    ic: Option<Ic>,
    #[arg(long)]
    big_l: Option<usize>,
    #[arg(long)]
    big_n: Option<usize>,
    /// tagged particle, 1..=N (default N)
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    t: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    a_min: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    a_max: Option<i64>,
    #[arg(long, value_enum)]
    method: Option<Method>,
    #[arg(long)]
    quad_nodes: Option<usize>,
    /// contour radius |zhat| (default 0.5 for fredholm; general picks one per threshold)
    #[arg(long)]
    radius: Option<f64>,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct LimitArgs {
    #[arg(long, value_enum)]
    family: Option<LimitFamily>,
    #[arg(long)]
    tau: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    gamma: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    x_min: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    x_max: Option<f64>,
    #[arg(long)]
    x_step: Option<f64>,
    #[arg(long)]
    quad_nodes: Option<usize>,
    #[arg(long)]
    radius: Option<f64>,
    /// starting node half-count m
    #[arg(long)]
    node_count: Option<usize>,
    /// write goe, gue or gaussian on the grid instead of F1/F2
    #[arg(long)]
    emit_reference: Option<ReferenceCurve>,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct SimArgs {
    #[arg(long, value_enum)]
    ic: Option<Ic>,
    #[arg(long)]
    big_l: Option<usize>,
    #[arg(long)]
    big_n: Option<usize>,
    #[arg(long)]
    t: Option<f64>,
    /// tagged:K (position x_K(t)) or current:M (J_M(t))
    #[arg(long)]
    observable: Option<Observable>,
    #[arg(long, allow_hyphen_values = true)]
    a_min: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    a_max: Option<i64>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct CompareArgs {
    curve_a: PathBuf,
    curve_b: PathBuf,
    /// pass when the KS distance is at most this
    #[arg(long)]
    threshold: Option<f64>,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, value_enum)]
    ic: Option<Ic>,
    /// flat spacing
    #[arg(long)]
    d: Option<usize>,
    /// step density N/L
    #[arg(long)]
    rho: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    gamma: Option<f64>,
    #[arg(long)]
    tau: Option<f64>,
    /// comma-separated ring sizes
    #[arg(long, value_delimiter = ',')]
    sizes: Option<Vec<usize>>,
    #[arg(long, allow_hyphen_values = true)]
    x_min: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    x_max: Option<f64>,
    #[arg(long)]
    x_step: Option<f64>,
    /// contour radius for the finite-ring formulas
    #[arg(long)]
    finite_radius: Option<f64>,
    #[arg(long)]
    finite_nodes: Option<usize>,
    /// contour radius for the limit functions
    #[arg(long)]
    radius: Option<f64>,
    #[arg(long)]
    quad_nodes: Option<usize>,
    #[command(flatten)]
    out: Output,
}

fn sink(out: &Output) -> Result<Box<dyn Write>> {
    Ok(match &out.out {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn required<T>(value: Option<T>, flag: &str) -> Result<T> {
    value.ok_or_else(|| Error::InvalidArgument(format!("--{flag} is required")))
}

fn quad(
    cfg: &Settings,
    nodes: Option<usize>,
    radius: Option<f64>,
    keys: (&str, &str),
    default_radius: f64,
) -> Result<QuadratureSpec> {
    QuadratureSpec::new(
        cfg.get_or(keys.0, nodes, QuadratureSpec::default().nodes)?,
        cfg.get_or(keys.1, radius, default_radius)?,
    )
}

fn ic_of(cfg: &Settings, flag: Option<Ic>) -> Result<Ic> {
    let raw = cfg.raw("ic");
    match (flag, raw) {
        (Some(ic), _) => Ok(ic),
        (None, Some(s)) => {
            Ic::from_str(s, true).map_err(|e| Error::InvalidArgument(format!("config ic: {e}")))
        }
        (None, None) => Err(Error::InvalidArgument("--ic is required".into())),
    }
}

fn initial_condition(ic: Ic, shape: SystemShape) -> Result<InitialCondition> {
    Ok(match ic {
        Ic::Flat => InitialCondition::Flat {
            d: shape.flat_spacing().ok_or_else(|| {
                Error::ShapeMismatch(format!(
                    "flat data needs N | L, got L={}, N={}",
                    shape.l(),
                    shape.n()
                ))
            })?,
        },
        Ic::Step => InitialCondition::Step,
    })
}

fn shape_of(cfg: &Settings, l: Option<usize>, n: Option<usize>) -> Result<SystemShape> {
    SystemShape::new(
        required(cfg.get("big-l", l)?, "big-l")?,
        required(cfg.get("big-n", n)?, "big-n")?,
    )
}

fn thresholds(cfg: &Settings, lo: Option<i64>, hi: Option<i64>) -> Result<Vec<i64>> {
    let lo = required(cfg.get("a-min", lo)?, "a-min")?;
    let hi = required(cfg.get("a-max", hi)?, "a-max")?;
    if hi < lo {
        return Err(Error::InvalidArgument(format!("a-max {hi} < a-min {lo}")));
    }
    Ok((lo..=hi).collect())
}

fn x_grid(
    cfg: &Settings,
    lo: Option<f64>,
    hi: Option<f64>,
    step: Option<f64>,
    default_step: f64,
) -> Result<Vec<f64>> {
    harness::grid(
        cfg.get_or("x-min", lo, -4.0)?,
        cfg.get_or("x-max", hi, 4.0)?,
        cfg.get_or("x-step", step, default_step)?,
    )
}

/// `Ok(true)` when every tolerance check passed.
fn run(cli: Cli) -> Result<bool> {
    let cfg = match &cli.config {
        Some(p) => Settings::load(p)?,
        None => Settings::default(),
    };
    if let Some(n) = harness::thread_count(cfg.get("threads", cli.threads)?)? {
        // a second initialization only fails if a pool already exists, which is harmless
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    match cli.command {
        Command::Roots(a) => {
            let shape = shape_of(&cfg, a.big_l, a.big_n)?;
            let zhat = Complex64::new(
                cfg.get_or("zhat-re", a.zhat_re, 0.5)?,
                cfg.get_or("zhat-im", a.zhat_im, 0.0)?,
            );
            let roots = solve_bethe_roots(&shape, zhat)?;
            harness::write_roots(sink(&a.out)?, &roots)?;
            Ok(true)
        }
        Command::FiniteCdf(a) => {
            let shape = shape_of(&cfg, a.big_l, a.big_n)?;
            let ic = ic_of(&cfg, a.ic)?;
            let k = cfg.get_or("k", a.k, shape.n())?;
            let t = required(cfg.get("t", a.t)?, "t")?;
            let grid = thresholds(&cfg, a.a_min, a.a_max)?;
            let method = match (a.method, cfg.raw("method")) {
                (Some(m), _) => m,
                (None, Some(s)) => Method::from_str(s, true).map_err(Error::InvalidArgument)?,
                (None, None) => Method::Fredholm,
            };
            let auto_radius = a.radius.is_none() && cfg.raw("radius").is_none();
            let q = quad(
                &cfg,
                a.quad_nodes,
                a.radius,
                ("quad-nodes", "radius"),
                QuadratureSpec::default().radius,
            )?;
            let opts = FredholmOptions::default();
            let results = match (method, ic) {
                (Method::General, _) => {
                    let y = initial_condition(ic, shape)?.configuration(shape)?;
                    if auto_radius {
                        one_point_general_auto(&y, k, &grid, t, q.nodes)?
                    } else {
                        one_point_general_grid(&y, k, &grid, t, &q)?
                    }
                }
                (Method::Fredholm, Ic::Flat) => {
                    let InitialCondition::Flat { d } = initial_condition(ic, shape)? else {
                        unreachable!("flat data maps to a flat initial condition")
                    };
                    one_point_flat_grid(d, shape.n(), k, &grid, t, &q, &opts)?
                }
                (Method::Fredholm, Ic::Step) => {
                    one_point_step_grid(shape.l(), shape.n(), k, &grid, t, &q, &opts)?
                }
            };
            harness::write_finite(sink(&a.out)?, &grid, &results)?;
            Ok(true)
        }
        Command::LimitCdf(a) => {
            let xs = x_grid(&cfg, a.x_min, a.x_max, a.x_step, 0.1)?;
            let reference = match (a.emit_reference, cfg.raw("emit-reference")) {
                (Some(r), _) => Some(r),
                (None, Some(s)) => Some(
                    s.parse::<ReferenceCurve>()
                        .map_err(Error::InvalidArgument)?,
                ),
                (None, None) => None,
            };
            if let Some(r) = reference {
                let values: Vec<f64> = xs.iter().map(|&x| r.value(x)).collect();
                harness::write_reference(sink(&a.out)?, &xs, &values)?;
                return Ok(true);
            }
            let family = match (a.family, cfg.raw("family")) {
                (Some(f), _) => f,
                (None, Some(s)) => {
                    LimitFamily::from_str(s, true).map_err(Error::InvalidArgument)?
                }
                (None, None) => return Err(Error::InvalidArgument("--family is required".into())),
            };
            let tau = cfg.get_or("tau", a.tau, 1.0)?;
            let family = match family {
                LimitFamily::F1 => Family::Flat,
                LimitFamily::F2 => Family::Step {
                    gamma: cfg.get_or("gamma", a.gamma, 0.0)?,
                },
            };
            let q = quad(
                &cfg,
                a.quad_nodes,
                a.radius,
                ("quad-nodes", "radius"),
                QuadratureSpec::default().radius,
            )?;
            let m = cfg.get_or("node-count", a.node_count, DEFAULT_NODE_COUNT)?;
            let curve = distribution_grid(family, &xs, tau, &q, m)?;
            harness::write_limit(sink(&a.out)?, &curve.points)?;
            Ok(true)
        }
        Command::Simulate(a) => {
            let shape = shape_of(&cfg, a.big_l, a.big_n)?;
            let ic = initial_condition(ic_of(&cfg, a.ic)?, shape)?;
            let t = required(cfg.get("t", a.t)?, "t")?;
            let observable = match (a.observable, cfg.raw("observable")) {
                (Some(o), _) => o,
                (None, Some(s)) => s.parse().map_err(Error::InvalidArgument)?,
                (None, None) => Observable::Tagged(shape.n()),
            };
            let sim = SimConfig {
                seed: cfg.get_or("seed", a.seed, 0)?,
                samples: cfg.get_or("samples", a.samples, 10_000)?,
                threads: None,
            };
            let rows = ensemble_cdf(
                ic,
                shape,
                t,
                observable,
                &thresholds(&cfg, a.a_min, a.a_max)?,
                &sim,
            )?;
            harness::write_simulation(sink(&a.out)?, &rows)?;
            Ok(true)
        }
        Command::Compare(a) => {
            let curve_a = harness::read_curve(File::open(&a.curve_a)?)?;
            let curve_b = harness::read_curve(File::open(&a.curve_b)?)?;
            let report = harness::compare_curves(
                &curve_a,
                &curve_b,
                cfg.get_or("threshold", a.threshold, 0.02)?,
            )?;
            let mut w = csv::Writer::from_writer(sink(&a.out)?);
            w.write_record([
                "ks_statistic",
                "sup_pointwise",
                "n_points",
                "threshold",
                "pass",
            ])?;
            w.write_record([
                harness::fmt_float(report.ks_statistic),
                harness::fmt_float(report.sup_pointwise),
                report.n_points.to_string(),
                harness::fmt_float(report.threshold),
                report.pass.to_string(),
            ])?;
            w.flush()?;
            Ok(report.pass)
        }
        Command::Sweep(a) => {
            let family = match ic_of(&cfg, a.ic)? {
                Ic::Flat => SweepFamily::Flat {
                    d: cfg.get_or("d", a.d, 2)?,
                },
                Ic::Step => SweepFamily::Step {
                    rho: cfg.get_or("rho", a.rho, 0.5)?,
                    gamma: cfg.get_or("gamma", a.gamma, 0.0)?,
                },
            };
            let sizes = match a.sizes {
                Some(s) => s,
                None => match cfg.raw("sizes") {
                    Some(s) => s
                        .split(',')
                        .map(|v| {
                            v.trim()
                                .parse()
                                .map_err(|e| Error::InvalidArgument(format!("sizes: {v:?}: {e}")))
                        })
                        .collect::<Result<_>>()?,
                    None => vec![100, 1000],
                },
            };
            let spec = SweepSpec {
                family,
                sizes,
                tau: cfg.get_or("tau", a.tau, 1.0)?,
                xs: x_grid(&cfg, a.x_min, a.x_max, a.x_step, 0.5)?,
                finite_quad: quad(
                    &cfg,
                    a.finite_nodes,
                    a.finite_radius,
                    ("finite-nodes", "finite-radius"),
                    0.9,
                )?,
                limit_quad: quad(
                    &cfg,
                    a.quad_nodes,
                    a.radius,
                    ("quad-nodes", "radius"),
                    QuadratureSpec::default().radius,
                )?,
            };
            let rows = harness::converge_sweep(&spec)?;
            harness::write_sweep(sink(&a.out)?, &rows)?;
            Ok(rows.iter().all(|r| r.decreasing))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::InvalidArgument(_)
                | Error::InvalidShape(_)
                | Error::InvalidConfiguration(_)
                | Error::Io(_) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}
