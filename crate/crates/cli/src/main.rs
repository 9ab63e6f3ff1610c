use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use fence_cli::report::{CheckReport, RunReport};
use fence_cli::verify::{self, LStarModel, Profile};
use fence_cli::{cells_list, curve, fence_params, lstar_line, render};
use fence_core::grid::{
    anneal_min_free_perimeter, oracle_min_free_perimeter_with_cap, AnnealSchedule,
    DEFAULT_ENUMERATION_CAP,
};
use fence_core::polyline::{init, optimize_multistart};
use fence_core::{l_star, optimal_fence, regime, GridDomain, OptimizerConfig, Rect};

/// Shortest fences cutting a given area out of a rectangle.
#[derive(Parser)]
#[command(name = "fence", version)]
struct Cli {
    /// Print a single JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct AreaArgs {
    /// One side of the rectangle.
    #[arg(long)]
    x: f64,
    /// The other side.
    #[arg(long)]
    y: f64,
    /// Area to enclose.
    #[arg(long)]
    area: f64,
}

impl AreaArgs {
    fn rect(&self) -> Result<Rect> {
        Ok(Rect::new(self.x, self.y)?)
    }
}

#[derive(Args)]
struct GridArgs {
    #[arg(long)]
    cols: usize,
    #[arg(long)]
    rows: usize,
    /// Side of one square cell.
    #[arg(long, default_value_t = 1.0)]
    cell: f64,
    /// Number of cells in the shape.
    #[arg(long)]
    k: usize,
}

#[derive(Subcommand)]
enum Cmd {
    /// Minimum fence length, regime and optimal fence.
    Lstar(AreaArgs),
    /// CSV of l* over the whole area range.
    Curve {
        #[arg(long)]
        x: f64,
        #[arg(long)]
        y: f64,
        #[arg(long, default_value_t = 101)]
        samples: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// SVG of the rectangle and its optimal fence.
    Render {
        #[command(flatten)]
        area: AreaArgs,
        #[arg(long)]
        out: PathBuf,
    },
    /// Exact minimum over connected cell shapes (small grids only).
    Oracle {
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        cap: usize,
    },
    /// Simulated-annealing upper bound over connected cell shapes.
    Anneal {
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        sweeps: Option<usize>,
        #[arg(long)]
        t0: Option<f64>,
        #[arg(long)]
        ratio: Option<f64>,
    },
    /// Polygonal fence descent from the regime's starting fence.
    Optimize {
        #[command(flatten)]
        area: AreaArgs,
        #[arg(long, default_value_t = 32)]
        vertices: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of seeds tried, starting at --seed.
        #[arg(long, default_value_t = 1)]
        starts: u64,
        #[arg(long, default_value_t = 5000)]
        max_iter: usize,
    },
    /// Run the verification campaigns.
    Verify {
        #[arg(long, value_enum, default_value_t = ProfileArg::Quick)]
        profile: ProfileArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, hide = true)]
        inject_fault: Option<Fault>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ProfileArg {
    Quick,
    Full,
}

#[derive(Clone, Copy, ValueEnum)]
enum Fault {
    /// l* reports X/2 in the straight-cut regime.
    HalveLstar,
}

fn bound_check(index: usize, length: f64, floor: f64) -> CheckReport {
    CheckReport::new(
        index,
        "lstar-dominance",
        length - floor + 1e-9,
        format!("length={length} lstar={floor}"),
    )
}

/// Writes the report or the text lines; a closed stdout is not an error.
fn emit(report: &RunReport, json: bool, text: &[String]) {
    let mut out = io::stdout().lock();
    let _ = if json {
        writeln!(out, "{}", report.to_json())
    } else {
        text.iter().try_for_each(|line| writeln!(out, "{line}"))
    };
}

fn run(cli: Cli) -> Result<bool> {
    let started = Instant::now();
    let json = cli.json;
    let mut report;
    let mut text = Vec::new();
    match cli.cmd {
        Cmd::Lstar(args) => {
            let rect = args.rect()?;
            let line = lstar_line(&rect, args.area)?;
            report = RunReport::new(format!(
                "lstar --x {} --y {} --area {}",
                args.x, args.y, args.area
            ));
            report
                .input("x", args.x)
                .input("y", args.y)
                .input("area", args.area);
            report
                .output("lstar", l_star(&rect, args.area)?)
                .output("regime", regime(&rect, args.area)?.name())
                .output("fence", fence_params(&optimal_fence(&rect, args.area)?));
            text.push(line);
        }
        Cmd::Curve { x, y, samples, out } => {
            let rect = Rect::new(x, y)?;
            let rows = curve::sample(&rect, samples)?;
            let mut buf = Vec::new();
            curve::write_csv(&rows, &mut buf)?;
            fs::write(&out, buf).with_context(|| format!("cannot write {}", out.display()))?;
            report = RunReport::new(format!("curve --x {x} --y {y} --samples {samples}"));
            report.input("x", x).input("y", y).input("samples", samples);
            report
                .output("rows", rows.len())
                .output("path", out.display().to_string());
            text.push(format!("wrote {} rows to {}", rows.len(), out.display()));
        }
        Cmd::Render { area: args, out } => {
            let rect = args.rect()?;
            let fence = optimal_fence(&rect, args.area)?;
            fs::write(&out, render::render_svg(&rect, &fence))
                .with_context(|| format!("cannot write {}", out.display()))?;
            report = RunReport::new(format!(
                "render --x {} --y {} --area {}",
                args.x, args.y, args.area
            ));
            report
                .input("x", args.x)
                .input("y", args.y)
                .input("area", args.area);
            report
                .output("fence", fence_params(&fence))
                .output("path", out.display().to_string());
            text.push(format!("wrote {}", out.display()));
        }
        Cmd::Oracle { grid, cap } => {
            let d = GridDomain::new(grid.cols, grid.rows, grid.cell)?;
            let (length, shape) = oracle_min_free_perimeter_with_cap(&d, grid.k, cap)?;
            let floor = l_star(&d.rect(), d.area_of(grid.k))?;
            report = RunReport::new(format!(
                "oracle --cols {} --rows {} --cell {} --k {}",
                grid.cols, grid.rows, grid.cell, grid.k
            ));
            grid_inputs(&mut report, &grid);
            report
                .output("length", length)
                .output("cells", shape.cells());
            report.checks.push(bound_check(1, length, floor));
            text.push(format!(
                "length={length} lstar={floor} cells={}",
                cells_list(shape.cells())
            ));
        }
        Cmd::Anneal {
            grid,
            seed,
            sweeps,
            t0,
            ratio,
        } => {
            let d = GridDomain::new(grid.cols, grid.rows, grid.cell)?;
            let mut sched = AnnealSchedule::for_domain(&d);
            sched.sweeps = sweeps.unwrap_or(sched.sweeps);
            sched.t0 = t0.unwrap_or(sched.t0);
            sched.ratio = ratio.unwrap_or(sched.ratio);
            let (length, shape) = anneal_min_free_perimeter(&d, grid.k, seed, &sched)?;
            let floor = l_star(&d.rect(), d.area_of(grid.k))?;
            report = RunReport::new(format!(
                "anneal --cols {} --rows {} --cell {} --k {} --seed {seed}",
                grid.cols, grid.rows, grid.cell, grid.k
            ));
            report.seed = Some(seed);
            grid_inputs(&mut report, &grid);
            report
                .input("sweeps", sched.sweeps)
                .input("t0", sched.t0)
                .input("ratio", sched.ratio);
            report
                .output("length", length)
                .output("cells", shape.cells());
            report.checks.push(bound_check(1, length, floor));
            text.push(format!(
                "length={length} lstar={floor} cells={}",
                cells_list(shape.cells())
            ));
        }
        Cmd::Optimize {
            area: args,
            vertices,
            seed,
            starts,
            max_iter,
        } => {
            let rect = args.rect()?;
            let cfg = OptimizerConfig {
                vertex_count: vertices,
                seed,
                max_iter,
                ..Default::default()
            };
            // Fail early with the initializer's own message.
            init::for_regime(&rect, args.area, &cfg)?;
            let seeds: Vec<u64> = (0..starts.max(1)).map(|i| seed.wrapping_add(i)).collect();
            let (best_seed, out) = optimize_multistart(&rect, args.area, &cfg, &seeds)?;
            let floor = l_star(&rect, args.area)?;
            report = RunReport::new(format!(
                "optimize --x {} --y {} --area {} --vertices {vertices} --seed {seed} --starts {starts} --max-iter {max_iter}",
                args.x, args.y, args.area
            ));
            report.seed = Some(best_seed);
            report
                .input("x", args.x)
                .input("y", args.y)
                .input("area", args.area);
            report
                .input("vertices", vertices)
                .input("max_iter", max_iter)
                .input("starts", starts);
            report
                .output("length", out.length)
                .output("area", out.area)
                .output("lstar", floor)
                .output("converged", out.converged)
                .output("iterations", out.iterations)
                .output("t_start", out.fence.t_start)
                .output("t_end", out.fence.t_end)
                .output(
                    "interior",
                    out.fence
                        .interior
                        .iter()
                        .map(|p| [p.x, p.y])
                        .collect::<Vec<_>>(),
                );
            report.checks.push(CheckReport::new(
                1,
                "lstar-dominance",
                out.min_bound_ratio - (1.0 - 1e-9),
                format!("min_length_over_lstar={}", out.min_bound_ratio),
            ));
            text.push(format!(
                "length={} area={} lstar={floor} converged={} iterations={} seed={best_seed}",
                out.length, out.area, out.converged, out.iterations
            ));
        }
        Cmd::Verify {
            profile,
            seed,
            inject_fault,
        } => {
            let profile = match profile {
                ProfileArg::Quick => Profile::Quick,
                ProfileArg::Full => Profile::Full,
            };
            let model = match inject_fault {
                Some(Fault::HalveLstar) => LStarModel::HalvedStraightCut,
                None => LStarModel::Exact,
            };
            report = verify::run(profile, seed, model);
            text = report.check_lines();
            let failed: Vec<&str> = report.failures().map(|c| c.name.as_str()).collect();
            let total = report.checks.len();
            text.push(format!("verify: {}/{total} passed", total - failed.len()));
            if !failed.is_empty() {
                eprintln!("failed checks: {}", failed.join(", "));
            }
            emit(&report, json, &text);
            return Ok(report.passed());
        }
    }
    report.timing.total_ms = started.elapsed().as_secs_f64() * 1e3;
    for c in report.failures() {
        eprintln!("bound check failed: {} ({})", c.name, c.detail);
    }
    emit(&report, json, &text);
    Ok(report.passed())
}

fn grid_inputs(report: &mut RunReport, grid: &GridArgs) {
    report
        .input("cols", grid.cols)
        .input("rows", grid.rows)
        .input("cell", grid.cell)
        .input("k", grid.k);
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
