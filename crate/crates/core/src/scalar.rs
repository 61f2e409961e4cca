use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Real scalar the numerical core is written against.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + ToPrimitive + Sum + Default + Debug + Display + Send + Sync + 'static
{
    /// Absolute tolerance used for structural checks: Hermiticity, unit
    /// norm, unit trace, positivity.
    fn structural_tol() -> Self;

    /// Converts an `f64` literal. Every finite `f64` is representable (with
    /// rounding) in the supported types.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("finite literal")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().expect("real scalar")
    }
}

impl Scalar for f64 {
    #[inline]
    fn structural_tol() -> Self {
        1e-10
    }
}

impl Scalar for f32 {
    #[inline]
    fn structural_tol() -> Self {
        1e-4
    }
}
