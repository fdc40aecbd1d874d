// Copyright The fekete Authors
// SPDX-License-Identifier: Apache-2.0

//! Dense univariate complex polynomials and their Bombieri-Weyl norm.

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::log_magnitude::LogMagnitude;
use crate::scalar::{count, lit, Real};
use crate::special::{ln_binomial, logsumexp};
use crate::sphere::PlanePoint;

/// Largest degree accepted by [`Polynomial::from_roots`] and [`Polynomial::multiply`].
pub const MAX_DEGREE: usize = 4096;

/// Relative size below which [`Polynomial::normalize`] drops leading coefficients.
pub const TRIM_THRESHOLD: f64 = 1e-14;

/// `a_0 + a_1 x + … + a_N x^N`, coefficients in ascending degree.
///
/// The degree is `coeffs.len() - 1` as stored; a vanishing leading coefficient is
/// kept until [`Polynomial::normalize`] is called, so the homogenization degree
/// used by the Weyl norm is always the declared one.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial<T = f64> {
    coeffs: Vec<Complex<T>>,
}

impl<T: Real> Polynomial<T> {
    pub fn new(coeffs: Vec<Complex<T>>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidInput("a polynomial needs at least one coefficient".into()));
        }
        Ok(Self { coeffs })
    }

    pub fn from_real(coeffs: &[T]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| Complex::new(c, T::zero())).collect())
    }

    pub fn constant(c: Complex<T>) -> Self {
        Self { coeffs: vec![c] }
    }

    /// `∏ (x - z_i)`, monic, built by incremental multiplication.
    ///
    /// Coefficients grow like `∏ (1 + |z_i|)`; at high degree with `|z_i| ≫ 1`
    /// they can overflow the scalar type even though the Weyl norm (taken in the
    /// log domain) would not.
    pub fn from_roots(roots: &[PlanePoint<T>]) -> Result<Self> {
        if roots.is_empty() {
            return Err(Error::InvalidInput("from_roots needs at least one root".into()));
        }
        if roots.len() > MAX_DEGREE {
            return Err(Error::DegreeTooLarge {
                degree: roots.len(),
                max: MAX_DEGREE,
            });
        }
        let mut coeffs: Vec<Complex<T>> = Vec::with_capacity(roots.len() + 1);
        coeffs.push(Complex::one());
        for root in roots {
            let z = root.to_complex();
            coeffs.push(Complex::zero());
            // multiply in place by (x - z), highest degree first
            for k in (0..coeffs.len()).rev() {
                let lower = if k > 0 { coeffs[k - 1] } else { Complex::zero() };
                coeffs[k] = lower - z * coeffs[k];
            }
        }
        Ok(Self { coeffs })
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex<T>] {
        &self.coeffs
    }

    pub fn leading(&self) -> Complex<T> {
        self.coeffs[self.coeffs.len() - 1]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Coefficient convolution.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        let degree = self.degree() + other.degree();
        if degree > MAX_DEGREE {
            return Err(Error::DegreeTooLarge {
                degree,
                max: MAX_DEGREE,
            });
        }
        let mut out = vec![Complex::zero(); degree + 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j] + a * b;
            }
        }
        Ok(Self { coeffs: out })
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() == 1 {
            return Self::constant(Complex::zero());
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &a)| a * count::<T>(k))
            .collect();
        Self { coeffs }
    }

    /// Horner evaluation.
    pub fn evaluate(&self, z: Complex<T>) -> Complex<T> {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex::zero(), |acc, &a| acc * z + a)
    }

    /// `(P(z), P'(z))` in a single Horner pass.
    pub fn evaluate_with_derivative(&self, z: Complex<T>) -> (Complex<T>, Complex<T>) {
        let mut p = Complex::zero();
        let mut dp = Complex::zero();
        for &a in self.coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + a;
        }
        (p, dp)
    }

    /// `x^N P(1/x)`: the coefficient list reversed. This is the unitary swap of
    /// homogeneous coordinates, so the Weyl norm is unchanged and roots map to `1/z`.
    pub fn reversed(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Self { coeffs }
    }

    /// Drops leading coefficients with `|a| ≤ 1e-14 · max |a_i|`.
    pub fn normalize(&self) -> Result<Self> {
        let max = self
            .coeffs
            .iter()
            .map(|c| c.norm())
            .fold(T::zero(), |m, v| if v > m { v } else { m });
        if max.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let cutoff = lit::<T>(TRIM_THRESHOLD) * max;
        let mut coeffs = self.coeffs.clone();
        while coeffs.len() > 1 && coeffs[coeffs.len() - 1].norm() <= cutoff {
            coeffs.pop();
        }
        Ok(Self { coeffs })
    }

    /// Log of the Bombieri-Weyl norm `(Σ C(N,i)^{-1} |a_i|²)^{1/2}`, where `N` is
    /// the declared degree, evaluated as a log-sum-exp.
    pub fn log_weyl_norm(&self) -> Result<LogMagnitude<T>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let n = self.degree();
        let two = lit::<T>(2.0);
        let terms: Vec<T> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| two * c.norm().ln() - ln_binomial::<T>(n, i))
            .collect();
        Ok(LogMagnitude::from_log(lit::<T>(0.5) * logsumexp(&terms)))
    }

    pub fn weyl_norm(&self) -> Result<T> {
        Ok(self.log_weyl_norm()?.value())
    }

    pub fn cast<U: Real>(&self) -> Polynomial<U> {
        Polynomial {
            coeffs: self
                .coeffs
                .iter()
                .map(|c| {
                    Complex::new(
                        U::from(c.re).unwrap_or_else(U::nan),
                        U::from(c.im).unwrap_or_else(U::nan),
                    )
                })
                .collect(),
        }
    }
}

/// Log of the Weyl norm of `x - z`, i.e. `½ log(1 + |z|²)`.
pub fn log_monomial_norm<T: Real>(z: PlanePoint<T>) -> LogMagnitude<T> {
    LogMagnitude::from_log(lit::<T>(0.5) * z.norm_sqr().ln_1p())
}
