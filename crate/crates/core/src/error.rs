// Copyright The fekete Authors
// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

/// Errors raised by the numerical routines and the file formats.
#[derive(Debug, Error)]
pub enum Error {
    #[error("point too close to the north pole (c = {c}); its projection is at infinity")]
    NearNorthPole { c: f64 },

    #[error("degree {degree} exceeds the supported maximum {max}")]
    DegreeTooLarge { degree: usize, max: usize },

    #[error("polynomial is identically zero")]
    ZeroPolynomial,

    #[error("points {i} and {j} coincide (distance {distance:e})")]
    CoincidentPoints { i: usize, j: usize, distance: f64 },

    #[error("z is not a root: |P(z)| = {residual:e} exceeds tolerance {tolerance:e}")]
    NotARoot { residual: f64, tolerance: f64 },

    #[error("root finder did not converge after {sweeps} sweeps (worst scaled residual {worst_residual:e})")]
    NoConvergence {
        sweeps: usize,
        /// Best iterate, as `(re, im)` pairs.
        best: Vec<(f64, f64)>,
        /// Weyl-scaled residual of each entry of `best`.
        residuals: Vec<f64>,
        worst_residual: f64,
    },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
