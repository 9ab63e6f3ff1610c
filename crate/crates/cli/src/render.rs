//! SVG drawing of a rectangle and its optimal fence.
//!
//! The long side runs horizontally and the short side vertically, origin
//! top-left: local `(x, y)` is drawn at `(u, v) = (y, x)`.

use std::fmt::Write;

use fence_core::{Corner, FenceGeometry, Rect};

/// Pixel width of the drawing; the height follows the aspect ratio.
const WIDTH_PX: f64 = 600.0;

/// `v` to six significant digits.
pub fn sig6(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let decimals = (5 - v.abs().log10().floor() as i32).max(0) as usize;
    format!("{v:.decimals$}")
}

fn corner_uv(rect: &Rect, c: Corner) -> (f64, f64) {
    let (x, y) = (rect.x(), rect.y());
    match c {
        Corner::Origin => (0.0, 0.0),
        Corner::ShortEnd => (0.0, x),
        Corner::Far => (y, x),
        Corner::LongEnd => (y, 0.0),
    }
}

/// Path data of the fence, or `None` for an empty fence.
pub fn fence_path(rect: &Rect, fence: &FenceGeometry) -> Option<String> {
    match *fence {
        FenceGeometry::StraightCut { offset } => {
            Some(format!("M {offset} 0 L {offset} {}", rect.x()))
        }
        FenceGeometry::QuarterArc { corner, radius, .. } => {
            let (cu, cv) = corner_uv(rect, corner);
            // Unit steps from the corner into the rectangle.
            let du = if cu == 0.0 { 1.0 } else { -1.0 };
            let dv = if cv == 0.0 { 1.0 } else { -1.0 };
            let (u0, v0) = (cu + du * radius, cv);
            let (u1, v1) = (cu, cv + dv * radius);
            // Screen-clockwise when the turn from start to end is positive.
            let sweep = if du * dv > 0.0 { 1 } else { 0 };
            Some(format!(
                "M {u0} {v0} A {radius} {radius} 0 0 {sweep} {u1} {v1}"
            ))
        }
        FenceGeometry::Empty { .. } => None,
    }
}

pub fn render_svg(rect: &Rect, fence: &FenceGeometry) -> String {
    let (x, y) = (rect.x(), rect.y());
    let length = fence.length(rect);
    let height_px = WIDTH_PX * x / y;
    let stroke = 0.01 * x;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH_PX}" height="{height_px}" viewBox="0 0 {y} {x}">"#
    );
    let _ = writeln!(
        s,
        r##"  <rect x="0" y="0" width="{y}" height="{x}" fill="none" stroke="#000" stroke-width="{stroke}"/>"##
    );
    if let Some(d) = fence_path(rect, fence) {
        let _ = writeln!(
            s,
            r##"  <path d="{d}" fill="none" stroke="#c00" stroke-width="{}"/>"##,
            2.0 * stroke
        );
    }
    let _ = writeln!(
        s,
        r##"  <text x="{}" y="{}" font-size="{}" text-anchor="end" fill="#000">l* = {}</text>"##,
        0.98 * y,
        0.95 * x,
        0.08 * x,
        sig6(length)
    );
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use fence_core::optimal_fence;

    #[test]
    fn six_significant_digits() {
        assert_eq!(sig6(0.886_226_925_452_758), "0.886227");
        assert_eq!(sig6(1.0), "1.00000");
        assert_eq!(sig6(123.456_789), "123.457");
        assert_eq!(sig6(0.0), "0");
    }

    #[test]
    fn half_area_draws_one_cut_across_the_short_side() {
        let r = Rect::new(1.0, 2.0).unwrap();
        let svg = render_svg(&r, &optimal_fence(&r, 1.0).unwrap());
        assert!(svg.contains(r#"viewBox="0 0 2 1""#));
        assert_eq!(svg.matches("<path").count(), 1);
        assert!(svg.contains(r#"d="M 1 0 L 1 1""#));
    }

    #[test]
    fn arcs_sweep_into_the_rectangle() {
        let r = Rect::new(1.0, 2.0).unwrap();
        let arc = |corner| FenceGeometry::QuarterArc {
            corner,
            radius: 0.5,
            arc_area: 0.0,
            encloses: fence_core::Enclosure::CornerSide,
        };
        assert_eq!(
            fence_path(&r, &arc(Corner::Origin)).unwrap(),
            "M 0.5 0 A 0.5 0.5 0 0 1 0 0.5"
        );
        assert_eq!(
            fence_path(&r, &arc(Corner::Far)).unwrap(),
            "M 1.5 1 A 0.5 0.5 0 0 1 2 0.5"
        );
        assert_eq!(
            fence_path(&r, &arc(Corner::LongEnd)).unwrap(),
            "M 1.5 0 A 0.5 0.5 0 0 0 2 0.5"
        );
    }
}
