// Copyright The fekete Authors
// SPDX-License-Identifier: Apache-2.0

//! Bombieri-Weyl norms of univariate polynomials, the Shub-Smale condition
//! number of their roots, and the logarithmic energy of the corresponding
//! points on the sphere.
//!
//! Numerical code is generic over [`Real`], so `f32`, `f64` and the
//! double-double [`TwoFloat`] all work. The aliases below fix the common case.

// `!(x > 0)` deliberately rejects NaN too
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod condition;
pub mod energy;
pub mod error;
pub mod formats;
pub mod inequalities;
pub mod log_magnitude;
pub mod optimize;
pub mod poly;
pub mod quadrature;
pub mod sampling;
pub mod scalar;
pub mod special;
pub mod sphere;
pub mod verify;
pub mod wire;

pub use error::{Error, Result};
pub use log_magnitude::LogMagnitude;
pub use poly::Polynomial;
pub use scalar::Real;
pub use sphere::{Configuration, PlanePoint, RiemannPoint, Rotation, SpherePoint};
pub use twofloat::TwoFloat;

pub type Polynomial64 = Polynomial<f64>;
pub type Polynomial32 = Polynomial<f32>;
pub type PolynomialDd = Polynomial<TwoFloat>;
pub type Configuration64 = Configuration<f64>;
pub type ConfigurationDd = Configuration<TwoFloat>;
pub type SpherePoint64 = SpherePoint<f64>;
pub type PlanePoint64 = PlanePoint<f64>;
