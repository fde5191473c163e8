//! Floating-point abstraction shared by every numerical module.
//!
//! All formulas are written once against [`Real`]; the crate root exposes
//! `f64` aliases for the common case.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Real scalar usable by the numerical core (`f32`, `f64`).
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Sum + Send + Sync + 'static
{
    /// Converts an `f64` literal into `Self`.
    #[inline(always)]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }

    /// Converts an integer count into `Self`.
    #[inline(always)]
    fn from_int(n: i64) -> Self {
        Self::from_i64(n).expect("integer representable in scalar type")
    }

    /// Euler–Mascheroni constant.
    #[inline(always)]
    fn euler_gamma() -> Self {
        Self::lit(0.577_215_664_901_532_9)
    }

    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// `(sin x, cos x)` for the lattice hot loop; may trade the last ulp for speed.
    #[inline(always)]
    fn sin_cos_fast(self) -> (Self, Self) {
        self.sin_cos()
    }
}

impl Real for f32 {}

impl Real for f64 {
    #[inline(always)]
    fn sin_cos_fast(self) -> (Self, Self) {
        crate::fastmath::sin_cos(self)
    }
}

/// Three-component real vector.
pub type Vec3<T> = [T; 3];

#[inline]
pub fn dot<T: Real>(a: &Vec3<T>, b: &Vec3<T>) -> T {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

#[inline]
pub fn norm<T: Real>(a: &Vec3<T>) -> T {
    dot(a, a).sqrt()
}
