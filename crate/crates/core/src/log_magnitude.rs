// Copyright The fekete Authors
// SPDX-License-Identifier: Apache-2.0

use std::ops::{Div, Mul};

use crate::scalar::{greater, Real};

/// A nonnegative quantity carried as its natural logarithm.
///
/// `-inf` encodes zero and `+inf` an infinite quantity (a condition number at a
/// multiple root). Products and quotients become sums and differences, so values
/// such as `C(N, N/2)` or `e^{N/2}` never overflow.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct LogMagnitude<T = f64>(T);

impl<T: Real> LogMagnitude<T> {
    pub fn from_log(log_value: T) -> Self {
        Self(log_value)
    }

    /// Panics on negative input.
    pub fn from_value(value: T) -> Self {
        assert!(value >= T::zero(), "LogMagnitude of a negative value");
        Self(value.ln())
    }

    pub fn zero() -> Self {
        Self(T::neg_infinity())
    }

    pub fn one() -> Self {
        Self(T::zero())
    }

    pub fn infinite() -> Self {
        Self(T::infinity())
    }

    pub fn log(self) -> T {
        self.0
    }

    /// Exponentiates; may overflow to `inf` for large magnitudes.
    pub fn value(self) -> T {
        self.0.exp()
    }

    pub fn is_infinite(self) -> bool {
        self.0 == T::infinity()
    }

    pub fn is_zero(self) -> bool {
        self.0 == T::neg_infinity()
    }

    pub fn powf(self, exponent: T) -> Self {
        Self(self.0 * exponent)
    }

    pub fn max(self, other: Self) -> Self {
        if greater(other.0, self.0) {
            other
        } else {
            self
        }
    }

    pub fn cast<U: Real>(self) -> LogMagnitude<U> {
        LogMagnitude(U::from(self.0).unwrap_or_else(U::nan))
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl<T: Real> Mul for LogMagnitude<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self(self.0 + rhs.0)
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl<T: Real> Div for LogMagnitude<T> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        Self(self.0 - rhs.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_in_log_domain() {
        let a = LogMagnitude::from_value(8.0f64);
        let b = LogMagnitude::from_value(2.0f64);
        assert!(((a * b).value() - 16.0).abs() < 1e-12);
        assert!(((a / b).value() - 4.0).abs() < 1e-12);
        assert!((b.powf(10.0).value() - 1024.0).abs() < 1e-9);
        assert_eq!(a.max(b), a);
    }

    #[test]
    fn special_values() {
        assert!(LogMagnitude::<f64>::zero().is_zero());
        assert_eq!(LogMagnitude::<f64>::zero().value(), 0.0);
        assert!(LogMagnitude::<f64>::infinite().is_infinite());
        assert_eq!(LogMagnitude::<f64>::one().log(), 0.0);
        // Far beyond f64 range, still representable.
        let huge = LogMagnitude::from_log(5000.0f64);
        assert!(huge.value().is_infinite());
        assert_eq!(huge.log(), 5000.0);
    }
}
