//! Polygonal fences with both endpoints sliding on the rectangle border,
//! and an augmented-Lagrangian minimiser of fence length at fixed enclosed
//! area.
//!
//! Border positions are arc-length parameters `t` in `[0, 2(X+Y))`,
//! measured counter-clockwise from the origin corner: the bottom side
//! `(t, 0)` first, then the right side `x = X`, the top, and the left side.
//!
//! Walking the fence from its start to its end, the region on the left is
//! bounded by the fence followed by the border path running
//! counter-clockwise from the end parameter back to the start parameter.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{domain, FenceError, Result};
use crate::geometry::{is_simple_ring, signed_area, Point};
use crate::isoperimetrics::{l_star, regime, Rect, Regime};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct FencePolyline<T> {
    pub t_start: T,
    pub t_end: T,
    /// Vertices strictly inside the rectangle, in walking order.
    pub interior: Vec<Point<T>>,
}

/// Which of the two regions cut off by a fence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// Left of the fence when walking from start to end.
    Left,
    Right,
}

pub fn border_perimeter<T: Scalar>(rect: &Rect<T>) -> T {
    T::lit(2.0) * (rect.x() + rect.y())
}

fn wrap<T: Scalar>(rect: &Rect<T>, t: T) -> T {
    let p = border_perimeter(rect);
    let w = t - p * (t / p).floor();
    if w >= p || w < T::zero() {
        T::zero()
    } else {
        w
    }
}

/// Corner parameters and positions, counter-clockwise from the origin.
fn corners<T: Scalar>(rect: &Rect<T>) -> [(T, Point<T>); 4] {
    let (x, y) = (rect.x(), rect.y());
    [
        (T::zero(), Point::new(T::zero(), T::zero())),
        (x, Point::new(x, T::zero())),
        (x + y, Point::new(x, y)),
        (x + x + y, Point::new(T::zero(), y)),
    ]
}

pub fn border_point<T: Scalar>(rect: &Rect<T>, t: T) -> Point<T> {
    let (x, y) = (rect.x(), rect.y());
    let t = wrap(rect, t);
    let zero = T::zero();
    if t < x {
        Point::new(t, zero)
    } else if t < x + y {
        Point::new(x, t - x)
    } else if t < x + x + y {
        Point::new(x - (t - x - y), y)
    } else {
        Point::new(zero, y - (t - x - x - y))
    }
}

/// Unit tangent of the border in the direction of increasing `t`; exactly
/// at a corner, the average of the two side tangents.
pub fn border_tangent<T: Scalar>(rect: &Rect<T>, t: T) -> Point<T> {
    let (o, l) = (T::zero(), T::one());
    let sides = [
        Point::new(l, o),
        Point::new(o, l),
        Point::new(-l, o),
        Point::new(o, -l),
    ];
    let t = wrap(rect, t);
    let cs = corners(rect);
    for (i, (ct, _)) in cs.iter().enumerate() {
        if t == *ct {
            let half = T::lit(0.5);
            return (sides[(i + 3) % 4] + sides[i]) * half;
        }
    }
    let side = cs.iter().rposition(|(ct, _)| t > *ct).unwrap_or(0);
    sides[side]
}

/// Corners met walking counter-clockwise from `from` to `to`, both excluded.
fn corners_between<T: Scalar>(rect: &Rect<T>, from: T, to: T) -> Vec<Point<T>> {
    let span = wrap(rect, to - from);
    let mut hits: Vec<(T, Point<T>)> = corners(rect)
        .into_iter()
        .map(|(ct, p)| (wrap(rect, ct - from), p))
        .filter(|(off, _)| *off > T::zero() && *off < span)
        .collect();
    hits.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite offsets"));
    hits.into_iter().map(|(_, p)| p).collect()
}

impl<T: Scalar> FencePolyline<T> {
    /// Validated fence: interior vertices strictly inside, consecutive
    /// vertices at least `merge_distance` apart and a simple closed loop.
    pub fn new(rect: &Rect<T>, t_start: T, t_end: T, interior: Vec<Point<T>>) -> Result<Self> {
        if !(t_start.is_finite() && t_end.is_finite()) {
            return domain("border parameters must be finite");
        }
        let f = FencePolyline {
            t_start: wrap(rect, t_start),
            t_end: wrap(rect, t_end),
            interior,
        };
        if !f.interior_inside(rect) {
            return Err(FenceError::Geometry(
                "interior vertices must lie strictly inside".into(),
            ));
        }
        let path = f.path(rect);
        let eps = merge_distance(rect);
        if path.windows(2).any(|w| w[0].distance(w[1]) < eps) {
            return Err(FenceError::Geometry(
                "consecutive fence vertices are too close".into(),
            ));
        }
        if !is_simple_ring(&f.ring(rect, Side::Left)) {
            return Err(FenceError::Geometry("fence loop is not simple".into()));
        }
        Ok(f)
    }

    pub fn start_point(&self, rect: &Rect<T>) -> Point<T> {
        border_point(rect, self.t_start)
    }

    pub fn end_point(&self, rect: &Rect<T>) -> Point<T> {
        border_point(rect, self.t_end)
    }

    /// Start point, interior vertices, end point.
    pub fn path(&self, rect: &Rect<T>) -> Vec<Point<T>> {
        let mut v = Vec::with_capacity(self.interior.len() + 2);
        v.push(self.start_point(rect));
        v.extend_from_slice(&self.interior);
        v.push(self.end_point(rect));
        v
    }

    /// Closed counter-clockwise ring around the region on `side`.
    pub fn ring(&self, rect: &Rect<T>, side: Side) -> Vec<Point<T>> {
        match side {
            Side::Left => {
                let mut v = self.path(rect);
                v.extend(corners_between(rect, self.t_end, self.t_start));
                v
            }
            Side::Right => {
                let mut v = self.path(rect);
                v.reverse();
                v.extend(corners_between(rect, self.t_start, self.t_end));
                v
            }
        }
    }

    /// Degrees of freedom: `[t_start, x1, y1, ..., xn, yn, t_end]`.
    pub fn dofs(&self) -> Vec<T> {
        let mut z = Vec::with_capacity(2 * self.interior.len() + 2);
        z.push(self.t_start);
        for p in &self.interior {
            z.push(p.x);
            z.push(p.y);
        }
        z.push(self.t_end);
        z
    }

    /// Inverse of [`dofs`](Self::dofs); border parameters are wrapped, nothing is validated.
    pub fn from_dofs(rect: &Rect<T>, z: &[T]) -> Self {
        let n = (z.len() - 2) / 2;
        FencePolyline {
            t_start: wrap(rect, z[0]),
            t_end: wrap(rect, z[z.len() - 1]),
            interior: (0..n)
                .map(|i| Point::new(z[1 + 2 * i], z[2 + 2 * i]))
                .collect(),
        }
    }

    fn interior_inside(&self, rect: &Rect<T>) -> bool {
        let zero = T::zero();
        self.interior
            .iter()
            .all(|p| p.x > zero && p.x < rect.x() && p.y > zero && p.y < rect.y())
    }

    /// Cheap validity used for optimizer trial points.
    fn is_admissible(&self, rect: &Rect<T>) -> bool {
        let eps = merge_distance(rect);
        let gap = wrap(rect, self.t_end - self.t_start);
        gap > eps
            && border_perimeter(rect) - gap > eps
            && self.interior_inside(rect)
            && is_simple_ring(&self.ring(rect, Side::Left))
    }
}

/// `1e-6·X`: vertices closer than this are merged.
pub fn merge_distance<T: Scalar>(rect: &Rect<T>) -> T {
    T::lit(1e-6) * rect.x()
}

pub fn fence_length<T: Scalar>(f: &FencePolyline<T>, rect: &Rect<T>) -> T {
    let path = f.path(rect);
    path.windows(2)
        .fold(T::zero(), |acc, w| acc + w[0].distance(w[1]))
}

/// Shoelace area of the region on `side`; the two sides sum to `XY`.
pub fn enclosed_area<T: Scalar>(f: &FencePolyline<T>, rect: &Rect<T>, side: Side) -> Result<T> {
    let ring = f.ring(rect, side);
    if !is_simple_ring(&ring) {
        return Err(FenceError::Geometry("fence loop self-intersects".into()));
    }
    Ok(signed_area(&ring))
}

/// Partial derivatives with respect to [`FencePolyline::dofs`].
#[derive(Debug, Clone, PartialEq)]
pub struct Gradients<T> {
    pub length: Vec<T>,
    /// Derivatives of the left-side area; the right side is the negation.
    pub area: Vec<T>,
}

fn unit<T: Scalar>(v: Point<T>) -> Point<T> {
    let n = v.norm();
    if n > T::zero() {
        v * (T::one() / n)
    } else {
        Point::new(T::zero(), T::zero())
    }
}

pub fn gradients<T: Scalar>(f: &FencePolyline<T>, rect: &Rect<T>) -> Gradients<T> {
    let path = f.path(rect);
    let m = path.len();
    let n = f.interior.len();
    let half = T::lit(0.5);

    // Unit direction of each fence segment.
    let dirs: Vec<Point<T>> = path.windows(2).map(|w| unit(w[1] - w[0])).collect();
    let ring = f.ring(rect, Side::Left);
    let r = ring.len();
    // d(area)/d(vertex) = -(1/2)·perp(next - prev) on the counter-clockwise ring.
    let area_grad = |i: usize| -> Point<T> {
        let prev = ring[(i + r - 1) % r];
        let next = ring[(i + 1) % r];
        -(next - prev).perp() * half
    };

    let mut length = Vec::with_capacity(2 * n + 2);
    let mut area = Vec::with_capacity(2 * n + 2);

    let ts = border_tangent(rect, f.t_start);
    length.push(-dirs[0].dot(ts));
    area.push(area_grad(0).dot(ts));
    for i in 1..=n {
        let g = dirs[i - 1] - dirs[i];
        length.push(g.x);
        length.push(g.y);
        let a = area_grad(i);
        area.push(a.x);
        area.push(a.y);
    }
    let te = border_tangent(rect, f.t_end);
    length.push(dirs[m - 2].dot(te));
    area.push(area_grad(m - 1).dot(te));
    Gradients { length, area }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizerConfig<T> {
    /// Budget of accepted descent steps.
    pub max_iter: usize,
    /// Displacement of the first step after each multiplier update.
    pub step: T,
    pub penalty_init: T,
    pub penalty_growth: T,
    pub penalty_max: T,
    /// Allowed `|area - target| / XY`.
    pub tol_area: T,
    /// Allowed norm of the length gradient projected off the area gradient.
    pub tol_grad: T,
    pub seed: u64,
    pub vertex_count: usize,
}

impl<T: Scalar> Default for OptimizerConfig<T> {
    fn default() -> Self {
        OptimizerConfig {
            max_iter: 5000,
            step: T::lit(1e-2),
            penalty_init: T::lit(10.0),
            penalty_growth: T::lit(2.0),
            penalty_max: T::lit(1e6),
            tol_area: T::lit(1e-9),
            tol_grad: T::lit(1e-6),
            seed: 0,
            vertex_count: 32,
        }
    }
}

impl<T: Scalar> OptimizerConfig<T> {
    pub fn validate(&self) -> Result<()> {
        let positive = [
            self.step,
            self.penalty_init,
            self.penalty_growth,
            self.penalty_max,
        ];
        if self.max_iter == 0
            || self.vertex_count == 0
            || positive.iter().any(|v| !(v.is_finite() && *v > T::zero()))
        {
            return domain("optimizer parameters must be positive");
        }
        let unit_interval = |v: T| v > T::zero() && v < T::one();
        if !unit_interval(self.tol_area) || !unit_interval(self.tol_grad) {
            return domain("tol_area and tol_grad must lie in (0, 1)");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizeOutcome<T> {
    pub fence: FencePolyline<T>,
    pub length: T,
    /// Left-side area of `fence`.
    pub area: T,
    pub converged: bool,
    /// Accepted descent steps.
    pub iterations: usize,
    /// Smallest `length / l*(area)` over all accepted iterates.
    pub min_bound_ratio: T,
    pub projected_gradient: T,
}

struct Problem<'a, T> {
    rect: &'a Rect<T>,
    target: T,
    /// Constraint normaliser `min(a, XY - a)`: collapsing either region
    /// violates the scaled constraint by at least 1.
    scale: T,
    /// Penalty weight in length units.
    weight: T,
}

struct Eval<T> {
    fence: FencePolyline<T>,
    length: T,
    area: T,
    grads: Gradients<T>,
}

impl<T: Scalar> Problem<'_, T> {
    fn eval(&self, z: &[T]) -> Option<Eval<T>> {
        let fence = FencePolyline::from_dofs(self.rect, z);
        if !fence.is_admissible(self.rect) {
            return None;
        }
        let length = fence_length(&fence, self.rect);
        let area = signed_area(&fence.ring(self.rect, Side::Left));
        let grads = gradients(&fence, self.rect);
        Some(Eval {
            fence,
            length,
            area,
            grads,
        })
    }

    fn violation(&self, e: &Eval<T>) -> T {
        (e.area - self.target) / self.scale
    }

    /// `|area - a| / XY`, the quantity `tol_area` bounds.
    fn area_error(&self, e: &Eval<T>) -> T {
        (e.area - self.target).abs() / self.rect.area()
    }

    /// Least-squares multiplier: the `λ` making `∇L - wλ∇c` smallest.
    fn multiplier_estimate(&self, e: &Eval<T>) -> T {
        let aa = dot(&e.grads.area, &e.grads.area);
        if aa == T::zero() {
            return T::zero();
        }
        dot(&e.grads.length, &e.grads.area) / aa * self.scale / self.weight
    }

    /// Augmented Lagrangian `L + w(-λc + (μ/2)c²)` and its gradient.
    fn merit(&self, e: &Eval<T>, lambda: T, mu: T) -> (T, Vec<T>) {
        let c = self.violation(e);
        let value = e.length + self.weight * (mu * c * c * T::lit(0.5) - lambda * c);
        let coef = self.weight * (mu * c - lambda) / self.scale;
        let grad = e
            .grads
            .length
            .iter()
            .zip(&e.grads.area)
            .map(|(&gl, &ga)| gl + coef * ga)
            .collect();
        (value, grad)
    }
}

fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |acc, (&x, &y)| acc + x * y)
}

fn inf_norm<T: Scalar>(a: &[T]) -> T {
    a.iter().fold(T::zero(), |acc, v| acc.max(v.abs()))
}

/// Norm of the length gradient after removing its component along the area gradient.
pub fn projected_gradient_norm<T: Scalar>(g: &Gradients<T>) -> T {
    let aa = dot(&g.area, &g.area);
    if aa == T::zero() {
        return dot(&g.length, &g.length).sqrt();
    }
    let k = dot(&g.length, &g.area) / aa;
    g.length
        .iter()
        .zip(&g.area)
        .fold(T::zero(), |acc, (&l, &a)| {
            let r = l - k * a;
            acc + r * r
        })
        .sqrt()
}

const LBFGS_MEMORY: usize = 16;
const ARMIJO: f64 = 1e-4;
const INNER_ITER: usize = 500;
/// Outer rounds in a row without an accepted step before giving up.
const MAX_IDLE_ROUNDS: usize = 8;

/// Minimises fence length subject to the left-side area equalling `a`.
///
/// Trial points that leave the rectangle or make the loop self-intersect
/// are rejected and the step is halved. Every accepted iterate is checked
/// against `l*`; the smallest ratio is reported.
pub fn optimize<T: Scalar>(
    rect: &Rect<T>,
    a: T,
    init: &FencePolyline<T>,
    cfg: &OptimizerConfig<T>,
) -> Result<OptimizeOutcome<T>> {
    cfg.validate()?;
    rect.target(a)?;
    if a <= T::zero() || a >= rect.area() {
        return domain("target area must lie strictly inside (0, XY)");
    }
    let prob = Problem {
        rect,
        target: a,
        scale: a.min(rect.area() - a),
        weight: rect.x(),
    };
    let mut cur = prob.eval(&init.dofs()).ok_or_else(|| {
        FenceError::Geometry("initial fence is not a simple loop inside the rectangle".into())
    })?;

    let mut lambda = prob.multiplier_estimate(&cur);
    let mut mu = cfg.penalty_init;
    let mut iterations = 0usize;
    let mut min_ratio = bound_ratio(rect, &cur)?;
    let mut prev_violation = prob.violation(&cur).abs();
    let max_move = T::lit(0.25) * rect.x();
    let mut converged = false;
    let mut idle_rounds = 0;

    while iterations < cfg.max_iter {
        let budget = (cfg.max_iter - iterations).min(INNER_ITER);
        let (next, used, end) = inner_lbfgs(
            &prob,
            cur,
            lambda,
            mu,
            cfg,
            budget,
            max_move,
            &mut min_ratio,
        )?;
        iterations += used;
        cur = merge_close(&prob, next);

        let c = prob.violation(&cur);
        let err = prob.area_error(&cur);
        let pg = projected_gradient_norm(&cur.grads);
        if err <= cfg.tol_area && pg <= cfg.tol_grad {
            converged = true;
            break;
        }
        if end == InnerEnd::Stalled && used == 0 {
            idle_rounds += 1;
            if err <= cfg.tol_area || idle_rounds >= MAX_IDLE_ROUNDS {
                break;
            }
        } else {
            idle_rounds = 0;
        }
        lambda = lambda - mu * c;
        // Growing the penalty only helps once the subproblem was actually solved.
        if end == InnerEnd::Converged
            && err > cfg.tol_area
            && c.abs() > T::lit(0.25) * prev_violation
        {
            mu = (mu * cfg.penalty_growth).min(cfg.penalty_max);
        }
        prev_violation = c.abs();
    }

    Ok(OptimizeOutcome {
        projected_gradient: projected_gradient_norm(&cur.grads),
        length: cur.length,
        area: cur.area,
        fence: cur.fence,
        converged,
        iterations,
        min_bound_ratio: min_ratio,
    })
}

fn bound_ratio<T: Scalar>(rect: &Rect<T>, e: &Eval<T>) -> Result<T> {
    let floor = l_star(rect, e.area)?;
    Ok(if floor > T::zero() {
        e.length / floor
    } else {
        T::infinity()
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum InnerEnd {
    Converged,
    /// The line search found no acceptable step.
    Stalled,
    Budget,
}

/// Inner minimisation of the merit function. Returns the last accepted
/// point, the number of accepted steps and why it stopped.
#[allow(clippy::too_many_arguments)]
fn inner_lbfgs<T: Scalar>(
    prob: &Problem<'_, T>,
    start: Eval<T>,
    lambda: T,
    mu: T,
    cfg: &OptimizerConfig<T>,
    budget: usize,
    max_move: T,
    min_ratio: &mut T,
) -> Result<(Eval<T>, usize, InnerEnd)> {
    let mut cur = start;
    let (mut value, mut grad) = prob.merit(&cur, lambda, mu);
    let mut z = cur.fence.dofs();
    let mut hist: Vec<(Vec<T>, Vec<T>, T)> = Vec::with_capacity(LBFGS_MEMORY);
    let mut used = 0;
    let tiny = T::epsilon() * prob.rect.x();

    while used < budget {
        if inf_norm(&grad) <= cfg.tol_grad * T::lit(0.1) {
            return Ok((cur, used, InnerEnd::Converged));
        }
        let mut dir = two_loop(&grad, &hist);
        let mut slope = dot(&grad, &dir);
        if hist.is_empty() || slope >= T::zero() {
            hist.clear();
            dir = grad.iter().map(|&g| -g).collect();
            slope = dot(&grad, &dir);
        }
        let dmax = inf_norm(&dir);
        let mut alpha = if hist.is_empty() {
            cfg.step / dmax
        } else {
            T::one()
        };
        alpha = alpha.min(max_move / dmax);

        let accepted = loop {
            if alpha * dmax < tiny {
                break None;
            }
            let trial: Vec<T> = z
                .iter()
                .zip(&dir)
                .map(|(&zi, &di)| zi + alpha * di)
                .collect();
            if let Some(e) = prob.eval(&trial) {
                let (v, g) = prob.merit(&e, lambda, mu);
                if v <= value + T::lit(ARMIJO) * alpha * slope {
                    break Some((trial, e, v, g));
                }
            }
            alpha = alpha * T::lit(0.5);
        };
        let Some((trial, e, v, g)) = accepted else {
            return Ok((cur, used, InnerEnd::Stalled));
        };

        // Endpoint parameters may wrap around the border; use the raw step.
        let s: Vec<T> = dir.iter().map(|&d| alpha * d).collect();
        let y: Vec<T> = g.iter().zip(&grad).map(|(&a, &b)| a - b).collect();
        let sy = dot(&s, &y);
        if sy > T::epsilon() * dot(&y, &y).sqrt() * dot(&s, &s).sqrt() {
            if hist.len() == LBFGS_MEMORY {
                hist.remove(0);
            }
            hist.push((s, y, T::one() / sy));
        }

        *min_ratio = min_ratio.min(bound_ratio(prob.rect, &e)?);
        z = e.fence.dofs();
        let _ = trial;
        cur = e;
        value = v;
        grad = g;
        used += 1;
    }
    Ok((cur, used, InnerEnd::Budget))
}

fn two_loop<T: Scalar>(grad: &[T], hist: &[(Vec<T>, Vec<T>, T)]) -> Vec<T> {
    let mut q: Vec<T> = grad.to_vec();
    let mut alphas = Vec::with_capacity(hist.len());
    for (s, y, rho) in hist.iter().rev() {
        let a = *rho * dot(s, &q);
        for (qi, &yi) in q.iter_mut().zip(y) {
            *qi = *qi - a * yi;
        }
        alphas.push(a);
    }
    if let Some((s, y, _)) = hist.last() {
        let gamma = dot(s, y) / dot(y, y);
        for qi in q.iter_mut() {
            *qi = *qi * gamma;
        }
    }
    for ((s, y, rho), a) in hist.iter().zip(alphas.into_iter().rev()) {
        let b = *rho * dot(y, &q);
        for (qi, &si) in q.iter_mut().zip(s) {
            *qi = *qi + (a - b) * si;
        }
    }
    q.into_iter().map(|v| -v).collect()
}

/// Drops interior vertices closer than the merge distance to their predecessor
/// (or, for the last one, to the end point).
fn merge_close<T: Scalar>(prob: &Problem<'_, T>, e: Eval<T>) -> Eval<T> {
    let rect = prob.rect;
    let eps = merge_distance(rect);
    let mut kept: Vec<Point<T>> = Vec::with_capacity(e.fence.interior.len());
    let mut prev = e.fence.start_point(rect);
    for &p in &e.fence.interior {
        if p.distance(prev) >= eps {
            kept.push(p);
            prev = p;
        }
    }
    let end = e.fence.end_point(rect);
    while kept.last().is_some_and(|p| p.distance(end) < eps) {
        kept.pop();
    }
    if kept.len() == e.fence.interior.len() {
        return e;
    }
    let merged = FencePolyline {
        interior: kept,
        ..e.fence.clone()
    };
    prob.eval(&merged.dofs()).unwrap_or(e)
}

/// Starting fences for the three regimes.
pub mod init {
    use super::*;

    /// Cut parallel to the short side at height `a / X`, running from the
    /// right side to the left side so the origin-side slab is on its left.
    /// Interior vertices are jittered across the cut by up to `jitter·X`.
    pub fn straight_cut<T: Scalar>(
        rect: &Rect<T>,
        a: T,
        vertex_count: usize,
        seed: u64,
        jitter: T,
    ) -> Result<FencePolyline<T>> {
        rect.target(a)?;
        let (x, y) = (rect.x(), rect.y());
        let h = a / x;
        let margin = T::lit(1e-3) * x;
        if h <= margin || h >= y - margin {
            return domain("straight-cut start needs a cut height away from both short sides");
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = T::from(vertex_count + 1).expect("small count");
        let interior = (1..=vertex_count)
            .map(|i| {
                let frac = T::from(i).expect("small count") / n;
                let shake = T::lit(rng.gen_range(-1.0..=1.0)) * jitter * x;
                let py = (h + shake).max(margin).min(y - margin);
                Point::new(x * (T::one() - frac), py)
            })
            .collect();
        let per = border_perimeter(rect);
        FencePolyline::new(rect, x + h, per - h, interior)
    }

    /// Right-angle fence around the square of area `a` at the origin
    /// corner; the square is on the left.
    pub fn corner_fence<T: Scalar>(
        rect: &Rect<T>,
        a: T,
        vertex_count: usize,
    ) -> Result<FencePolyline<T>> {
        let (t_start, t_end, interior) = corner_path(rect, a, vertex_count)?;
        FencePolyline::new(rect, t_start, t_end, interior)
    }

    /// The same right-angle fence walked the other way, so the region left
    /// of it is everything except the corner square of area `XY - a`.
    pub fn complement_corner_fence<T: Scalar>(
        rect: &Rect<T>,
        a: T,
        vertex_count: usize,
    ) -> Result<FencePolyline<T>> {
        rect.target(a)?;
        let (t_start, t_end, mut interior) = corner_path(rect, rect.area() - a, vertex_count)?;
        interior.reverse();
        FencePolyline::new(rect, t_end, t_start, interior)
    }

    fn corner_path<T: Scalar>(
        rect: &Rect<T>,
        a: T,
        vertex_count: usize,
    ) -> Result<(T, T, Vec<Point<T>>)> {
        rect.target(a)?;
        let s = a.sqrt();
        if a <= T::zero() || s >= rect.x() {
            return domain("corner fence needs 0 < a < X²");
        }
        if vertex_count == 0 {
            return domain("corner fence needs at least one interior vertex");
        }
        // Up the first leg to the square's corner, then along the second leg.
        let up = vertex_count.div_ceil(2);
        let across = vertex_count - up;
        let count = |k: usize| T::from(k).expect("small count");
        let mut interior: Vec<Point<T>> = (1..=up)
            .map(|j| Point::new(s, s * count(j) / count(up)))
            .collect();
        interior.extend((1..=across).map(|j| Point::new(s - s * count(j) / count(across + 1), s)));
        Ok((s, border_perimeter(rect) - s, interior))
    }

    /// Picks the initializer matching the regime of `a`.
    pub fn for_regime<T: Scalar>(
        rect: &Rect<T>,
        a: T,
        cfg: &OptimizerConfig<T>,
    ) -> Result<FencePolyline<T>> {
        match regime(rect, a)? {
            Regime::QuarterDisk => corner_fence(rect, a, cfg.vertex_count),
            Regime::StraightCut => straight_cut(rect, a, cfg.vertex_count, cfg.seed, T::lit(0.05)),
            Regime::ComplementQuarterDisk => complement_corner_fence(rect, a, cfg.vertex_count),
        }
    }
}

/// Runs [`optimize`] from the regime initializer once per seed, in
/// parallel. The shortest fence wins; ties go to the lowest seed.
pub fn optimize_multistart<T: Scalar>(
    rect: &Rect<T>,
    a: T,
    cfg: &OptimizerConfig<T>,
    seeds: &[u64],
) -> Result<(u64, OptimizeOutcome<T>)> {
    let runs: Vec<(u64, OptimizeOutcome<T>)> = seeds
        .par_iter()
        .map(|&seed| {
            let cfg = OptimizerConfig {
                seed,
                ..cfg.clone()
            };
            let start = init::for_regime(rect, a, &cfg)?;
            optimize(rect, a, &start, &cfg).map(|o| (seed, o))
        })
        .collect::<Result<_>>()?;
    runs.into_iter()
        .min_by(|(sa, a), (sb, b)| {
            a.length
                .partial_cmp(&b.length)
                .unwrap_or(std::cmp::Ordering::Equal)
                .then(sa.cmp(sb))
        })
        .ok_or_else(|| FenceError::Domain("no seeds given".into()))
}
