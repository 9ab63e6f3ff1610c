//! Floating-point scalar abstraction shared by every module.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst};

/// Scalar type the geometry and optimizers are generic over (`f32` or `f64`).
pub trait Scalar: Float + FloatConst + Debug + Display + Default + Send + Sync + 'static {
    /// Converts an `f64` literal. Never fails for the finite constants used here.
    #[inline]
    fn lit(v: f64) -> Self {
        <Self as num_traits::NumCast>::from(v).expect("finite literal")
    }

    /// Relative tolerance for "lies on a line" style predicates.
    ///
    /// `1e-9` for `f64`; widened to a few ulps of the type for narrower floats.
    #[inline]
    fn contact_rel_tol() -> Self {
        Self::lit(1e-9).max(Self::epsilon() * Self::lit(64.0))
    }

    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
