//! Library side of the `fence` command: reports, CSV curves, SVG drawings
//! and the verification campaigns.

pub mod curve;
pub mod render;
pub mod report;
pub mod verify;

use fence_core::{Enclosure, FenceGeometry, Rect};

/// `kind:key=value,...` description of an optimal fence.
pub fn fence_params(fence: &FenceGeometry) -> String {
    match *fence {
        FenceGeometry::StraightCut { offset } => format!("straight-cut:offset={offset}"),
        FenceGeometry::QuarterArc {
            corner,
            radius,
            encloses,
            ..
        } => {
            let side = match encloses {
                Enclosure::CornerSide => "corner-side",
                Enclosure::FarSide => "far-side",
            };
            format!(
                "quarter-arc:corner={},radius={radius},encloses={side}",
                corner.name()
            )
        }
        FenceGeometry::Empty { full } => format!("empty:full={full}"),
    }
}

/// The line printed by `fence lstar`.
pub fn lstar_line(rect: &Rect, a: f64) -> fence_core::Result<String> {
    let value = fence_core::l_star(rect, a)?;
    let regime = fence_core::regime(rect, a)?;
    let fence = fence_core::optimal_fence(rect, a)?;
    Ok(format!(
        "lstar={value} regime={regime} fence={}",
        fence_params(&fence)
    ))
}

/// `col:row` pairs separated by commas.
pub fn cells_list(cells: &[(usize, usize)]) -> String {
    cells
        .iter()
        .map(|(c, r)| format!("{c}:{r}"))
        .collect::<Vec<_>>()
        .join(",")
}
