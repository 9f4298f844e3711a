//! Generic floating-point scalar used by every numerical kernel.
//!
//! All physics in this crate is written against [`Scalar`] so the same
//! code runs in `f32` or `f64`. The default instantiation everywhere is
//! `f64`; `f32` is useful for large parametric sweeps where the reduced
//! precision is acceptable.

use std::fmt;
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, NumAssign};

/// Floating-point scalar: `f32` or `f64`.
pub trait Scalar:
    Float + FromPrimitive + NumAssign + Sum + fmt::Debug + fmt::Display + Default + Send + Sync + 'static
{
    /// Converts an `f64` literal (model constants, tabulated coefficients)
    /// into the scalar type.
    #[inline]
    fn lit(value: f64) -> Self {
        Self::from_f64(value).expect("constant must be representable in the scalar type")
    }

    /// Widening conversion used by reporting code.
    fn as_f64(self) -> f64;

    /// Half of `self`.
    #[inline]
    fn half(self) -> Self {
        self / Self::lit(2.0)
    }
}

impl Scalar for f32 {
    #[inline]
    fn as_f64(self) -> f64 {
        self as f64
    }
}

impl Scalar for f64 {
    #[inline]
    fn as_f64(self) -> f64 {
        self
    }
}
