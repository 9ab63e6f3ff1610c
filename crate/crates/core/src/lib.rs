//! Minimal free perimeter ("shortest fence") of regions inside a rectangle.
//!
//! * [`isoperimetrics`]: closed-form bounds, `l*(A)`, optimal fence construction.
//! * [`reflections`]: mirror-doubling of polygons against half- and quarter-planes.
//! * [`grid`]: exhaustive and annealed minimum free perimeter over cell shapes.
//! * [`polyline`]: augmented-Lagrangian descent over polygonal fences.
//!
//! Everything numeric is generic over [`Scalar`] (`f32` or `f64`); the
//! aliases at the crate root fix the scalar to `f64`.

pub mod error;
pub mod geometry;
pub mod grid;
pub mod isoperimetrics;
pub mod polyline;
pub mod reflections;
pub mod scalar;

pub use error::{FenceError, Result};
pub use isoperimetrics::{
    case_lower_bound, iso_lower_half_plane, iso_lower_plane, iso_lower_quarter_plane, l_star,
    max_sum_sqrt, optimal_fence, regime, sum_sqrt_lower, Contacts, Corner, Enclosure, Regime,
    TouchClass,
};
pub use scalar::Scalar;

pub type Point = geometry::Point<f64>;
pub type Rect = isoperimetrics::Rect<f64>;
pub type TargetArea = isoperimetrics::TargetArea<f64>;
pub type FenceGeometry = isoperimetrics::FenceGeometry<f64>;
pub type SubareaPartition = isoperimetrics::SubareaPartition<f64>;
pub type Polygon = reflections::Polygon<f64>;
pub type Region = reflections::Region<f64>;
pub type GridDomain = grid::GridDomain<f64>;
pub type FencePolyline = polyline::FencePolyline<f64>;
pub type OptimizerConfig = polyline::OptimizerConfig<f64>;
pub type OptimizeOutcome = polyline::OptimizeOutcome<f64>;

pub type Rect32 = isoperimetrics::Rect<f32>;
pub type Point32 = geometry::Point<f32>;
