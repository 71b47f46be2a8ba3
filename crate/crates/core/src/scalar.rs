//! Floating-point scalar abstraction.

use std::fmt;

use num_traits::{Float, FloatConst, FromPrimitive};

/// Scalar type the whole analysis is generic over: `f32` or `f64`.
pub trait Scalar: Float + FloatConst + FromPrimitive + fmt::Debug + fmt::Display + 'static {}

impl<T> Scalar for T where T: Float + FloatConst + FromPrimitive + fmt::Debug + fmt::Display + 'static
{}

/// Converts an `f64` constant into the working scalar type.
#[inline]
pub fn cast<T: Scalar>(x: f64) -> T {
    T::from_f64(x).expect("finite f64 constant must be representable")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn casts_to_both_widths() {
        let a: f32 = cast(0.5);
        let b: f64 = cast(0.5);
        assert_eq!(a, 0.5f32);
        assert_eq!(b, 0.5f64);
    }
}
