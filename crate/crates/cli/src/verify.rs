//! Verification campaigns. Each check draws from its own RNG stream, so
//! results do not depend on which checks run or in which order.

use std::f64::consts::{FRAC_PI_2, PI, SQRT_2};
use std::time::Instant;

use fence_core::grid::{
    anneal_min_free_perimeter, complement_components, grid_free_perimeter, grid_touch_class,
    oracle_min_free_perimeter, random_connected_shape, AnnealSchedule, GridShape,
};
use fence_core::polyline::{fence_length, gradients, init, optimize, Side};
use fence_core::reflections::{reflect_half_plane, reflect_quarter_plane, HalfPlane, QuarterPlane};
use fence_core::{
    case_lower_bound, iso_lower_half_plane, iso_lower_plane, iso_lower_quarter_plane, max_sum_sqrt,
    regime, sum_sqrt_lower, FencePolyline, GridDomain, OptimizerConfig, Point, Polygon, Rect,
    Regime, SubareaPartition,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::report::{CheckReport, RunReport, Timing};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Profile {
    Quick,
    Full,
}

impl Profile {
    pub fn name(self) -> &'static str {
        match self {
            Profile::Quick => "quick",
            Profile::Full => "full",
        }
    }

    fn scale(self) -> Scale {
        match self {
            Profile::Quick => Scale {
                rects: 100,
                symmetry_samples: 10_000,
                ratio_samples: 1_000,
                shapes: 2_000,
                partitions: 2_000,
                gradient_configs: 100,
                random_polygons: 64,
                grids: &[(3, 4)],
                vertices: 32,
            },
            Profile::Full => Scale {
                rects: 1_000,
                symmetry_samples: 100_000,
                ratio_samples: 10_000,
                shapes: 10_000,
                partitions: 10_000,
                gradient_configs: 1_000,
                random_polygons: 512,
                grids: &[(3, 4), (2, 9), (4, 5), (4, 6)],
                vertices: 32,
            },
        }
    }
}

struct Scale {
    rects: usize,
    symmetry_samples: usize,
    ratio_samples: usize,
    shapes: usize,
    partitions: usize,
    gradient_configs: usize,
    random_polygons: usize,
    grids: &'static [(usize, usize)],
    vertices: usize,
}

/// The `l*` implementation under test. Checks compare everything against
/// this model, so a broken model must make them fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LStarModel {
    #[default]
    Exact,
    /// Reports `X/2` throughout the straight-cut regime.
    HalvedStraightCut,
}

impl LStarModel {
    pub fn eval(self, rect: &Rect, a: f64) -> fence_core::Result<f64> {
        let exact = fence_core::l_star(rect, a)?;
        Ok(match self {
            LStarModel::Exact => exact,
            LStarModel::HalvedStraightCut => {
                if regime(rect, a)? == Regime::StraightCut {
                    rect.x() / 2.0
                } else {
                    exact
                }
            }
        })
    }
}

struct Ctx {
    seed: u64,
    scale: Scale,
    model: LStarModel,
}

impl Ctx {
    fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        rng
    }

    fn lstar(&self, rect: &Rect, a: f64) -> f64 {
        self.model.eval(rect, a).expect("area in range")
    }
}

pub const CHECK_NAMES: [&str; 12] = [
    "half-area-value",
    "regime-continuity",
    "complement-symmetry",
    "fact-ratios",
    "oracle-dominance",
    "case-bound-soundness",
    "complement-identity",
    "subarea-lemma",
    "optimizer-dominance",
    "gradient-check",
    "reflection-scaling",
    "reproducibility",
];

/// Runs all checks (in parallel) and returns them in index order.
pub fn run(profile: Profile, seed: u64, model: LStarModel) -> RunReport {
    let started = Instant::now();
    let ctx = Ctx {
        seed,
        scale: profile.scale(),
        model,
    };
    let results: Vec<(CheckReport, f64)> = (1..=CHECK_NAMES.len())
        .into_par_iter()
        .map(|i| {
            let t = Instant::now();
            let check = run_check(&ctx, i);
            (check, t.elapsed().as_secs_f64() * 1e3)
        })
        .collect();

    let mut report = RunReport::new(format!("verify --profile {} --seed {seed}", profile.name()));
    report.seed = Some(seed);
    report.input("profile", profile.name()).input("seed", seed);
    let (checks, times): (Vec<_>, Vec<_>) = results.into_iter().unzip();
    report.checks = checks;
    let failed: Vec<String> = report.failures().map(|c| c.name.clone()).collect();
    let total = report.checks.len();
    report.output("checks", total).output("failed", failed);
    report.timing = Timing {
        total_ms: started.elapsed().as_secs_f64() * 1e3,
        checks_ms: times,
    };
    report
}

fn run_check(ctx: &Ctx, index: usize) -> CheckReport {
    let name = CHECK_NAMES[index - 1];
    let (margin, detail) = match index {
        1 => half_area_value(ctx),
        2 => regime_continuity(ctx),
        3 => complement_symmetry(ctx),
        4 => fact_ratios(ctx),
        5 => oracle_dominance(ctx),
        6 => case_bound_soundness(ctx),
        7 => complement_identity(ctx),
        8 => subarea_lemma(ctx),
        9 => optimizer_dominance(ctx),
        10 => gradient_check(ctx),
        11 => reflection_scaling(ctx),
        12 => reproducibility(ctx),
        _ => unreachable!("checks are numbered 1 to 12"),
    };
    CheckReport::new(index, name, margin, detail)
}

fn random_rect(rng: &mut impl Rng) -> Rect {
    let x: f64 = rng.gen_range(0.1..10.0);
    Rect::new(x, x * rng.gen_range(1.0..10.0)).expect("positive sides")
}

fn half_area_value(ctx: &Ctx) -> (f64, String) {
    let unit = Rect::new(1.0, 2.0).expect("valid");
    let base = ctx.lstar(&unit, 1.0);
    let exact_margin = if base == 1.0 {
        0.0
    } else {
        -(base - 1.0).abs()
    };
    let mut rng = ctx.rng(1);
    let worst = (0..ctx.scale.rects)
        .map(|_| {
            let r = random_rect(&mut rng);
            (ctx.lstar(&r, r.area() / 2.0) - r.x()).abs() / r.x()
        })
        .fold(0.0, f64::max);
    (
        exact_margin.min(1e-12 - worst),
        format!(
            "l*(Rect{{1,2}},1)={base} max_rel_err={worst:e} rects={}",
            ctx.scale.rects
        ),
    )
}

fn regime_continuity(ctx: &Ctx) -> (f64, String) {
    let mut rng = ctx.rng(2);
    let worst = (0..ctx.scale.rects)
        .map(|_| {
            let r = random_rect(&mut rng);
            let lo = (ctx.lstar(&r, r.arc_limit()) - r.x()).abs();
            let hi = (ctx.lstar(&r, r.area() - r.arc_limit()) - r.x()).abs();
            lo.max(hi) / r.x()
        })
        .fold(0.0, f64::max);
    (1e-12 - worst, format!("max_err/X={worst:e}"))
}

fn complement_symmetry(ctx: &Ctx) -> (f64, String) {
    let mut rng = ctx.rng(3);
    let rects: Vec<Rect> = std::iter::once(Rect::new(1.0, 2.0).expect("valid"))
        .chain((0..9).map(|_| random_rect(&mut rng)))
        .collect();
    let per_rect = ctx.scale.symmetry_samples / rects.len();
    let mut worst = 0.0f64;
    for r in &rects {
        for _ in 0..per_rect {
            let a = rng.gen_range(0.0..=r.area());
            let d = (ctx.lstar(r, a) - ctx.lstar(r, r.area() - a)).abs() / r.x();
            worst = worst.max(d);
        }
    }
    (
        1e-12 - worst,
        format!("max_err/X={worst:e} samples={}", per_rect * rects.len()),
    )
}

fn fact_ratios(ctx: &Ctx) -> (f64, String) {
    let mut rng = ctx.rng(4);
    let mut worst = 0.0f64;
    for _ in 0..ctx.scale.ratio_samples {
        let a = 10f64.powf(rng.gen_range(-6.0..6.0));
        let plane = iso_lower_plane(a).expect("a >= 0");
        let half = iso_lower_half_plane(a).expect("a >= 0");
        let quarter = iso_lower_quarter_plane(a).expect("a >= 0");
        worst = worst.max((plane / quarter - 2.0).abs() / 2.0);
        worst = worst.max((half / quarter - SQRT_2).abs() / SQRT_2);
    }
    (1e-12 - worst, format!("max_rel_err={worst:e}"))
}

fn oracle_dominance(ctx: &Ctx) -> (f64, String) {
    let mut margin = f64::INFINITY;
    let mut tight = 0;
    for &(cols, rows) in ctx.scale.grids {
        let d = GridDomain::new(cols, rows, 1.0).expect("valid grid");
        let rect = d.rect();
        for k in 0..=d.len() {
            let (len, _) = oracle_min_free_perimeter(&d, k).expect("within cap");
            let a = d.area_of(k);
            let floor = ctx.lstar(&rect, a);
            margin = margin.min(len - floor + 1e-9);
            // Full short-side strips realise the straight cut exactly.
            if k % cols == 0 && regime(&rect, a).expect("in range") == Regime::StraightCut {
                tight += 1;
                margin = margin.min(-(len - floor).abs());
            }
        }
    }
    (
        margin,
        format!("grids={:?} tight_cases={tight}", ctx.scale.grids),
    )
}

fn shapes(ctx: &Ctx) -> (GridDomain, Vec<GridShape>) {
    let d = GridDomain::new(5, 6, 1.0).expect("valid grid");
    let mut rng = ctx.rng(6);
    let shapes = (0..ctx.scale.shapes)
        .map(|_| {
            let k = rng.gen_range(1..=d.len());
            random_connected_shape(&d, k, &mut rng).expect("k in range")
        })
        .collect();
    (d, shapes)
}

fn case_bound_soundness(ctx: &Ctx) -> (f64, String) {
    let (d, shapes) = shapes(ctx);
    let rect = d.rect();
    let mut margin = f64::INFINITY;
    for g in &shapes {
        let free = grid_free_perimeter(g, &d).expect("in domain");
        let a = d.area_of(g.len());
        let tc = grid_touch_class(g, &d).expect("in domain");
        let bound = case_lower_bound(tc, &rect, a)
            .expect("in range")
            .max(ctx.lstar(&rect, a));
        margin = margin.min(free - bound + 1e-9);
    }
    (margin, format!("shapes={} grid=5x6", shapes.len()))
}

fn complement_identity(ctx: &Ctx) -> (f64, String) {
    let (d, shapes) = shapes(ctx);
    let mut worst = 0.0f64;
    for g in &shapes {
        let free = grid_free_perimeter(g, &d).expect("in domain");
        let sum: f64 = complement_components(g, &d)
            .expect("in domain")
            .iter()
            .map(|c| grid_free_perimeter(c, &d).expect("in domain"))
            .sum();
        worst = worst.max((sum - free).abs());
    }
    (
        -worst,
        format!("shapes={} max_abs_diff={worst}", shapes.len()),
    )
}

fn subarea_lemma(ctx: &Ctx) -> (f64, String) {
    let mut rng = ctx.rng(8);
    let mut margin = f64::INFINITY;
    for i in 0..ctx.scale.partitions {
        let k = rng.gen_range(1..=12usize);
        let equal = i % 2 == 0;
        let parts: Vec<f64> = if equal {
            vec![rng.gen_range(0.01..10.0); k]
        } else {
            (0..k).map(|_| rng.gen_range(0.01..10.0)).collect()
        };
        let p = SubareaPartition::new(parts.clone()).expect("positive parts");
        let total = p.total();
        let sum = sum_sqrt_lower(&p);
        let cap = max_sum_sqrt(k, total).expect("k >= 1");
        margin = margin.min(sum - total.sqrt() * (1.0 - 1e-12));
        margin = margin.min(cap * (1.0 + 1e-12) - sum);
        let spread = parts
            .iter()
            .fold(0.0f64, |m, &v| m.max((v - parts[0]).abs() / parts[0]));
        let at_cap = (cap - sum).abs() <= 1e-9 * cap;
        if at_cap != (spread <= 1e-9) {
            margin = margin.min(-(cap - sum).abs());
        }
    }
    (margin, format!("partitions={}", ctx.scale.partitions))
}

fn optimizer_dominance(ctx: &Ctx) -> (f64, String) {
    let rect = Rect::new(1.0, 2.0).expect("valid");
    let cfg = OptimizerConfig {
        vertex_count: ctx.scale.vertices,
        seed: ctx.seed,
        ..Default::default()
    };
    let runs: Vec<(f64, fence_core::OptimizeOutcome)> = [0.25, 1.0, 1.9]
        .par_iter()
        .map(|&a| {
            let start = init::for_regime(&rect, a, &cfg).expect("valid start");
            (a, optimize(&rect, a, &start, &cfg).expect("valid run"))
        })
        .collect();
    let mut margin = f64::INFINITY;
    let mut parts = Vec::new();
    for (a, out) in &runs {
        let target = ctx.lstar(&rect, *a);
        let rel = (out.length - target).abs() / target;
        margin = margin.min(0.01 - rel);
        margin = margin.min(out.min_bound_ratio - (1.0 - 1e-9));
        if out.iterations > cfg.max_iter {
            margin = margin.min(-1.0);
        }
        parts.push(format!("a={a}:len={}:it={}", out.length, out.iterations));
    }
    (margin, parts.join(" "))
}

/// Random valid fence: either a cross cut between the long sides or a
/// star-shaped arc around the origin corner.
fn random_fence(rng: &mut impl Rng) -> (Rect, FencePolyline) {
    loop {
        let x: f64 = rng.gen_range(0.5..2.0);
        let y = x * rng.gen_range(1.0..3.0);
        let rect = Rect::new(x, y).expect("positive sides");
        let per = 2.0 * (x + y);
        let n = rng.gen_range(1..=12usize);
        let fence = if rng.gen_bool(0.5) {
            let y0 = rng.gen_range(0.2..0.8) * y;
            let y1 = rng.gen_range(0.2..0.8) * y;
            let interior = (1..=n)
                .map(|i| {
                    let f = i as f64 / (n + 1) as f64;
                    let jitter = rng.gen_range(-0.1..0.1) * y;
                    Point::new(
                        x * (1.0 - f),
                        (y0 + (y1 - y0) * f + jitter).clamp(0.05 * y, 0.95 * y),
                    )
                })
                .collect();
            FencePolyline::new(&rect, x + y0, per - y1, interior)
        } else {
            let r0 = rng.gen_range(0.2..0.8) * x;
            let r1 = rng.gen_range(0.2..0.8) * x;
            let interior = (1..=n)
                .map(|i| {
                    let t = FRAC_PI_2 * i as f64 / (n + 1) as f64;
                    let r = rng.gen_range(0.2..0.9) * x;
                    Point::new(r * t.cos(), r * t.sin())
                })
                .collect();
            FencePolyline::new(&rect, r0, per - r1, interior)
        };
        if let Ok(f) = fence {
            return (rect, f);
        }
    }
}

/// Largest norm-relative error of analytic against central-difference gradients.
pub fn gradient_error(rect: &Rect, f: &FencePolyline) -> f64 {
    let g = gradients(f, rect);
    let z = f.dofs();
    let h = 1e-6 * rect.x();
    let mut fd_len = vec![0.0; z.len()];
    let mut fd_area = vec![0.0; z.len()];
    let area = |f: &FencePolyline| fence_core::geometry::signed_area(&f.ring(rect, Side::Left));
    for i in 0..z.len() {
        let mut plus = z.clone();
        let mut minus = z.clone();
        plus[i] += h;
        minus[i] -= h;
        let fp = FencePolyline::from_dofs(rect, &plus);
        let fm = FencePolyline::from_dofs(rect, &minus);
        fd_len[i] = (fence_length(&fp, rect) - fence_length(&fm, rect)) / (2.0 * h);
        fd_area[i] = (area(&fp) - area(&fm)) / (2.0 * h);
    }
    let rel = |a: &[f64], b: &[f64]| {
        let num = a
            .iter()
            .zip(b)
            .map(|(x, y)| (x - y).powi(2))
            .sum::<f64>()
            .sqrt();
        let den = b.iter().map(|y| y * y).sum::<f64>().sqrt();
        num / den
    };
    rel(&g.length, &fd_len).max(rel(&g.area, &fd_area))
}

fn gradient_check(ctx: &Ctx) -> (f64, String) {
    let mut rng = ctx.rng(10);
    let worst = (0..ctx.scale.gradient_configs)
        .map(|_| {
            let (rect, f) = random_fence(&mut rng);
            gradient_error(&rect, &f)
        })
        .fold(0.0, f64::max);
    (
        1e-6 - worst,
        format!(
            "configs={} max_rel_err={worst:e}",
            ctx.scale.gradient_configs
        ),
    )
}

fn p(x: f64, y: f64) -> Point {
    Point::new(x, y)
}

/// `base` followed by points at evenly spaced angles around the origin.
fn star(angles: (f64, f64), radii: &[f64], base: &[Point]) -> Vec<Point> {
    let n = radii.len();
    let mut v = base.to_vec();
    for (i, r) in radii.iter().enumerate() {
        let t = angles.0 + (angles.1 - angles.0) * (i + 1) as f64 / (n + 1) as f64;
        v.push(p(r * t.cos(), r * t.sin()));
    }
    v
}

fn reflection_scaling(ctx: &Ctx) -> (f64, String) {
    let mut rng = ctx.rng(11);
    let axis = HalfPlane::new(p(0.0, 0.0), p(1.0, 0.0)).expect("unit direction");
    let corner = QuarterPlane::new(p(0.0, 0.0), p(1.0, 0.0)).expect("unit direction");

    let mut on_axis = vec![
        Polygon::new(vec![p(0.0, 0.0), p(1.0, 0.0), p(1.0, 1.0), p(0.0, 1.0)]).expect("square"),
        Polygon::new(vec![p(0.0, 0.0), p(1.0, 0.0), p(0.0, 1.0)]).expect("triangle"),
    ];
    let mut half_disk = star((0.0, PI), &[1.0; 63], &[p(1.0, 0.0)]);
    half_disk.push(p(-1.0, 0.0));
    on_axis.push(Polygon::new(half_disk).expect("half disk"));
    let mut in_corner = vec![
        Polygon::new(vec![p(0.0, 0.0), p(1.0, 0.0), p(1.0, 1.0), p(0.0, 1.0)]).expect("square"),
        Polygon::new(vec![p(0.0, 0.0), p(2.0, 0.0), p(2.0, 1.0), p(0.0, 1.0)]).expect("rectangle"),
    ];
    for _ in 0..ctx.scale.random_polygons {
        let n = rng.gen_range(3..40);
        let radii: Vec<f64> = (0..n).map(|_| rng.gen_range(0.1..2.0)).collect();
        let half = rng.gen_range(0.1..2.0);
        let mut bump = star((0.0, PI), &radii, &[p(half, 0.0)]);
        bump.push(p(-half, 0.0));
        on_axis.push(Polygon::new(bump).expect("star-shaped polygon"));
        let legs = (rng.gen_range(0.1..2.0), rng.gen_range(0.1..2.0));
        let mut wedge = star((0.0, FRAC_PI_2), &radii, &[p(0.0, 0.0), p(legs.0, 0.0)]);
        wedge.push(p(0.0, legs.1));
        in_corner.push(Polygon::new(wedge).expect("star-shaped polygon"));
    }

    let rel = |a: f64, b: f64| (a - b).abs() / b;
    let mut worst = 0.0f64;
    for poly in &on_axis {
        let region = reflect_half_plane(poly, &axis).expect("edge contact");
        let free = poly.perimeter() - axis.contact_length(poly);
        worst = worst.max(rel(region.area(), 2.0 * poly.area()));
        worst = worst.max(rel(region.perimeter(), 2.0 * free));
    }
    for poly in &in_corner {
        let region = reflect_quarter_plane(poly, &corner).expect("edge contact");
        worst = worst.max(rel(region.area(), 4.0 * poly.area()));
        worst = worst.max(rel(region.perimeter(), 4.0 * corner.free_length(poly)));
    }

    // Quarter disk of radius 1 as a 64-segment arc.
    let mut qd = vec![p(0.0, 0.0), p(1.0, 0.0)];
    qd.extend((1..64).map(|i| {
        let t = FRAC_PI_2 * i as f64 / 64.0;
        p(t.cos(), t.sin())
    }));
    qd.push(p(0.0, 1.0));
    let qd = Polygon::new(qd).expect("quarter disk");
    let arc_err = rel(corner.free_length(&qd), FRAC_PI_2);

    (
        (1e-12 - worst).min(1e-3 - arc_err),
        format!(
            "polygons={} max_rel_err={worst:e} quarter_disk_arc_rel_err={arc_err:e}",
            on_axis.len() + in_corner.len()
        ),
    )
}

/// Fingerprint of a small seeded campaign, compared across two runs.
fn fingerprint(ctx: &Ctx) -> Vec<u64> {
    let mut out = Vec::new();
    let d = GridDomain::new(6, 8, 0.25).expect("valid grid");
    let sched = AnnealSchedule {
        sweeps: 40,
        ..AnnealSchedule::for_domain(&d)
    };
    let (len, shape) = anneal_min_free_perimeter(&d, 20, ctx.seed, &sched).expect("k in range");
    out.push(len.to_bits());
    out.extend(shape.cells().iter().map(|&(c, r)| (c * 1000 + r) as u64));

    let mut rng = ctx.rng(12);
    for _ in 0..50 {
        let k = rng.gen_range(1..=d.len());
        let g = random_connected_shape(&d, k, &mut rng).expect("k in range");
        out.push(grid_free_perimeter(&g, &d).expect("in domain").to_bits());
    }

    let rect = Rect::new(1.0, 2.0).expect("valid");
    let cfg = OptimizerConfig {
        vertex_count: 8,
        max_iter: 200,
        seed: ctx.seed,
        ..Default::default()
    };
    let start = init::straight_cut(&rect, 0.9, 8, ctx.seed, 0.05).expect("valid start");
    let run = optimize(&rect, 0.9, &start, &cfg).expect("valid run");
    out.extend(run.fence.dofs().iter().map(|v| v.to_bits()));
    out.push(run.iterations as u64);
    out
}

fn reproducibility(ctx: &Ctx) -> (f64, String) {
    let first = fingerprint(ctx);
    let second = fingerprint(ctx);
    let same = first == second;
    (
        if same { 0.0 } else { -1.0 },
        format!("identical={same} values={}", first.len()),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn faulty_model_halves_only_the_middle_regime() {
        let r = Rect::new(1.0, 2.0).unwrap();
        let m = LStarModel::HalvedStraightCut;
        assert_eq!(m.eval(&r, 1.0).unwrap(), 0.5);
        assert_eq!(
            m.eval(&r, 0.25).unwrap(),
            fence_core::l_star(&r, 0.25).unwrap()
        );
    }

    #[test]
    fn random_fences_have_accurate_gradients() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let (rect, f) = random_fence(&mut rng);
            assert!(gradient_error(&rect, &f) <= 1e-6);
        }
    }
}
