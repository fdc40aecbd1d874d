// Copyright The fekete Authors
// SPDX-License-Identifier: Apache-2.0

//! Scalar abstraction shared by every numerical routine in the crate.

use std::fmt::Debug;

use num_traits::{Float, FloatConst, FromPrimitive, NumCast, ToPrimitive};

/// Real floating point scalar: `f32`, `f64` or the double-double [`twofloat::TwoFloat`].
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Default + Send + Sync + 'static
{
    /// Lossy conversion used at reporting boundaries.
    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl<T> Real for T where
    T: Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Default + Send + Sync + 'static
{
}

/// Converts an `f64` literal into `T`.
///
/// Goes through `NumCast`: twofloat's `FromPrimitive::from_f64` truncates to an integer.
#[inline]
pub fn lit<T: Real>(x: f64) -> T {
    <T as NumCast>::from(x).expect("literal representable in scalar type")
}

/// Converts a count into `T`.
#[inline]
pub fn count<T: Real>(n: usize) -> T {
    T::from_usize(n).expect("count representable in scalar type")
}

/// `a > b`, ordering infinities correctly for every scalar. twofloat's
/// `PartialOrd` ranks any infinity, even `-inf`, above all finite values.
#[inline]
pub fn greater<T: Real>(a: T, b: T) -> bool {
    if a.is_finite() && b.is_finite() {
        a > b
    } else {
        a.to_f64_lossy() > b.to_f64_lossy()
    }
}

/// The larger of `a` and `b` under [`greater`].
#[inline]
pub fn max_of<T: Real>(a: T, b: T) -> T {
    if greater(b, a) {
        b
    } else {
        a
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use twofloat::TwoFloat;

    #[test]
    fn literals_keep_their_fraction() {
        assert_eq!(lit::<TwoFloat>(12.5).hi(), 12.5);
        assert_eq!(lit::<f32>(0.25), 0.25);
        assert_eq!(count::<TwoFloat>(7).hi(), 7.0);
    }

    #[test]
    fn infinities_order_correctly() {
        let one = lit::<TwoFloat>(1.0);
        assert!(greater(one, TwoFloat::neg_infinity()));
        assert!(!greater(one, TwoFloat::infinity()));
        assert_eq!(max_of(TwoFloat::neg_infinity(), one), one);
        assert_eq!(max_of(2.0, f64::NEG_INFINITY), 2.0);
    }
}
