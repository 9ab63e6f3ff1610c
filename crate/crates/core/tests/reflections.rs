use std::f64::consts::{FRAC_PI_2, PI};

use fence_core::reflections::{
    free_perimeter_polygon, reflect_half_plane, reflect_quarter_plane, touch_class_polygon,
    HalfPlane, QuarterPlane,
};
use fence_core::{Point, Polygon, Rect, TouchClass};
use proptest::prelude::*;

fn p(x: f64, y: f64) -> Point {
    Point::new(x, y)
}

/// Star-shaped polygon standing on the bottom side of `rect`: a base
/// segment centred at `cx` plus a chain of points at increasing angle.
fn bump(cx: f64, half: f64, radii: &[f64]) -> Polygon {
    let n = radii.len();
    let mut v = vec![p(cx - half, 0.0), p(cx + half, 0.0)];
    for (i, r) in radii.iter().enumerate() {
        let t = PI * (i + 1) as f64 / (n + 1) as f64;
        v.push(p(cx + r * t.cos(), r * t.sin()));
    }
    Polygon::new(v).unwrap()
}

/// Star-shaped polygon in the origin corner with legs on both axes.
fn wedge(leg_x: f64, leg_y: f64, radii: &[f64]) -> Polygon {
    let n = radii.len();
    let mut v = vec![p(0.0, 0.0), p(leg_x, 0.0)];
    for (i, r) in radii.iter().enumerate() {
        let t = FRAC_PI_2 * (i + 1) as f64 / (n + 1) as f64;
        v.push(p(r * t.cos(), r * t.sin()));
    }
    v.push(p(0.0, leg_y));
    Polygon::new(v).unwrap()
}

fn rel_eq(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * b.abs().max(f64::MIN_POSITIVE)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn one_side_polygons_respect_half_plane_bound(
        half in 0.05f64..1.4,
        radii in prop::collection::vec(0.05f64..1.4, 3..40),
    ) {
        let rect = Rect::new(3.0, 4.0).unwrap();
        let poly = bump(1.5, half, &radii);
        let a = poly.area();
        let free = free_perimeter_polygon(&poly, &rect).unwrap();
        prop_assert_eq!(touch_class_polygon(&poly, &rect).unwrap(), TouchClass::One);
        prop_assert!(free >= (2.0 * PI * a).sqrt() * (1.0 - 1e-9));

        let axis = HalfPlane::new(p(0.0, 0.0), p(1.0, 0.0)).unwrap();
        let doubled = reflect_half_plane(&poly, &axis).unwrap();
        prop_assert!(rel_eq(doubled.area(), 2.0 * a, 1e-12));
        prop_assert!(rel_eq(doubled.perimeter(), 2.0 * free, 1e-12));
    }

    #[test]
    fn corner_polygons_respect_quarter_plane_bound(
        legs in (0.05f64..2.5, 0.05f64..2.5),
        radii in prop::collection::vec(0.05f64..2.5, 2..40),
    ) {
        let rect = Rect::new(3.0, 4.0).unwrap();
        let poly = wedge(legs.0, legs.1, &radii);
        let a = poly.area();
        let free = free_perimeter_polygon(&poly, &rect).unwrap();
        prop_assert_eq!(touch_class_polygon(&poly, &rect).unwrap(), TouchClass::TwoAdjacent);
        prop_assert!(free >= (PI * a).sqrt() * (1.0 - 1e-9));

        let corner = QuarterPlane::new(p(0.0, 0.0), p(1.0, 0.0)).unwrap();
        let quad = reflect_quarter_plane(&poly, &corner).unwrap();
        prop_assert!(rel_eq(quad.area(), 4.0 * a, 1e-12));
        prop_assert!(rel_eq(quad.perimeter(), 4.0 * free, 1e-12));
    }

    #[test]
    fn touch_class_invariant_under_rectangle_symmetries(
        half in 0.05f64..1.0,
        radii in prop::collection::vec(0.05f64..1.0, 3..12),
        cx in 1.0f64..2.0,
        lift in 0.0f64..1.0,
    ) {
        let (x, y) = (3.0, 4.0);
        let rect = Rect::new(x, y).unwrap();
        // Either on the bottom side or floating.
        let base = bump(cx, half, &radii);
        let poly = if lift < 0.5 { base } else { base.map(|v| p(v.x, v.y + lift)).unwrap() };
        let tc = touch_class_polygon(&poly, &rect).unwrap();
        let maps: [fn(Point, f64, f64) -> Point; 3] = [
            |v, x, _| p(x - v.x, v.y),
            |v, _, y| p(v.x, y - v.y),
            |v, x, y| p(x - v.x, y - v.y),
        ];
        for m in maps {
            let img = poly.map(|v| m(v, x, y)).unwrap();
            prop_assert_eq!(touch_class_polygon(&img, &rect).unwrap(), tc);
            prop_assert!(rel_eq(
                free_perimeter_polygon(&img, &rect).unwrap(),
                free_perimeter_polygon(&poly, &rect).unwrap(),
                1e-12,
            ));
        }
        // The square additionally has the quarter turn.
        let square = Rect::new(4.0, 4.0).unwrap();
        let sq_tc = touch_class_polygon(&poly, &square).unwrap();
        let turned = poly.map(|v| p(4.0 - v.y, v.x)).unwrap();
        prop_assert_eq!(touch_class_polygon(&turned, &square).unwrap(), sq_tc);
    }
}

#[test]
fn refined_bump_approaches_half_disk_bound() {
    let rect = Rect::new(3.0, 4.0).unwrap();
    let gap = |n: usize| {
        let poly = bump(1.5, 1.0, &vec![1.0; n]);
        let free = free_perimeter_polygon(&poly, &rect).unwrap();
        free / (2.0 * PI * poly.area()).sqrt() - 1.0
    };
    let (coarse, fine) = (gap(15), gap(63));
    assert!(coarse > fine && fine > 0.0);
    assert!(fine < 1e-3);
}
