//! Scalar abstraction shared by every numerical routine in the crate.

use std::fmt::{Debug, Display};

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};

/// Floating point type the library is generic over: `f32` or `f64`.
pub trait Real:
    Float + FloatConst + FromPrimitive + NumAssign + Debug + Display + Default + Send + Sync + 'static
{
}

impl Real for f32 {}
impl Real for f64 {}

#[inline]
pub(crate) fn cast<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("f64 is representable in every Real type")
}

#[inline]
pub(crate) fn from_int<T: Real>(n: i64) -> T {
    T::from_i64(n).expect("integer label is representable")
}

/// Fractional part in `[0, 1)`.
#[inline]
pub(crate) fn frac<T: Real>(x: T) -> T {
    let r = x - x.floor();
    // x slightly below an integer can round up to exactly 1
    if r >= T::one() {
        T::zero()
    } else {
        r
    }
}

/// `e^{2πiθ}`.
#[inline]
pub(crate) fn turn<T: Real>(theta: T) -> Complex<T> {
    let (s, c) = (T::TAU() * theta).sin_cos();
    Complex::new(c, s)
}
