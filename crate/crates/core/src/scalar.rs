//! Floating-point scalar abstraction shared by the numeric layers.

use std::fmt::{Debug, Display};

/// Real scalar type the pointwise geometry is generic over (`f32` or `f64`).
pub trait Scalar: num_traits::Float + num_traits::FromPrimitive + Debug + Display + Send + Sync + 'static {
    /// Lossy conversion from `f64`; used for literals and constants.
    fn lit(v: f64) -> Self {
        <Self as num_traits::FromPrimitive>::from_f64(v).expect("f64 literal representable")
    }

    fn to_f64_lossy(self) -> f64 {
        num_traits::ToPrimitive::to_f64(&self).unwrap_or(f64::NAN)
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
