use fence_core::polyline::{enclosed_area, fence_length, init, optimize, Side};
use fence_core::{l_star, OptimizerConfig, Rect};

fn rect() -> Rect {
    Rect::new(1.0, 2.0).unwrap()
}

fn run(a: f64, n: usize) -> fence_core::OptimizeOutcome {
    let r = rect();
    let cfg = OptimizerConfig {
        vertex_count: n,
        seed: 1,
        ..Default::default()
    };
    let start = init::for_regime(&r, a, &cfg).unwrap();
    optimize(&r, a, &start, &cfg).unwrap()
}

#[test]
fn reaches_all_three_regime_optima() {
    for a in [0.25, 1.0, 1.9] {
        let out = run(a, 32);
        let target = l_star(&rect(), a).unwrap();
        eprintln!(
            "a={a} len={} target={target} it={} conv={} pg={}",
            out.length, out.iterations, out.converged, out.projected_gradient
        );
        assert!(
            (out.length - target).abs() <= 0.01 * target,
            "a={a}: {out:?}"
        );
        assert!(out.iterations <= 5000);
        assert!(out.min_bound_ratio >= 1.0 - 1e-9);
        let r = rect();
        let left = enclosed_area(&out.fence, &r, Side::Left).unwrap();
        let right = enclosed_area(&out.fence, &r, Side::Right).unwrap();
        assert!(((left + right) - 2.0).abs() <= 2.0 * 1e-12);
        assert_eq!(fence_length(&out.fence, &r), out.length);
    }
}

#[test]
fn refinement_never_lengthens() {
    for a in [0.25, 1.9] {
        let lens: Vec<f64> = [8, 16, 32].iter().map(|&n| run(a, n).length).collect();
        eprintln!("{a}: {lens:?}");
        assert!(lens.windows(2).all(|w| w[1] <= w[0]), "{lens:?}");
    }
}
