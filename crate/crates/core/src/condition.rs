// Copyright The fekete Authors
// SPDX-License-Identifier: Apache-2.0

//! Shub-Smale condition number `μ_norm` of univariate polynomials, by the
//! coefficient formula and by the spherical-integral characterization, plus the
//! identities tying it to the logarithmic energy.

use std::f64::consts::PI;

use num_complex::Complex;
use serde::Serialize;
use serde_json::json;

use crate::energy::{log_energy, KAPPA};
use crate::error::{Error, Result};
use crate::log_magnitude::LogMagnitude;
use crate::poly::Polynomial;
use crate::quadrature::sphere_integral;
use crate::scalar::{count, greater, lit, max_of, Real};
use crate::sphere::{chordal_distance, chordal_distance_plane, sphere_to_plane, Configuration, PlanePoint, Rotation};
use crate::wire::json_f64;

/// `|P(z)|` may exceed `ROOT_RESIDUAL · ‖P‖ · (1 + |z|)^N` only for non-roots.
pub const ROOT_RESIDUAL: f64 = 1e-8;
/// `|P'(z)| ≤ DOUBLE_ROOT · ‖P‖ · (1 + |z|²)^{(N-1)/2}` marks a multiple root.
pub const DOUBLE_ROOT: f64 = 1e-14;
/// Weyl-scaled residual accepted by [`find_roots`].
pub const FIND_ROOTS_RESIDUAL: f64 = 1e-10;
/// Sweep budget of [`find_roots`].
pub const MAX_SWEEPS: usize = 500;
/// Computed roots closer than this (chordally) are treated as one multiple
/// root. Floating-point root finding splits a k-fold root into a cluster of
/// radius about `eps^{1/k}`, so the exact `P' = 0` test cannot see it.
pub const ROOT_CLUSTER: f64 = 1e-5;
/// [`mu_norm_max_coeff`] rotates configurations with a point above this height.
pub const POLE_CLEARANCE: f64 = 0.9;

/// Which formula produced a condition number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Route {
    Coefficient,
    Spherical,
}

impl Route {
    pub fn as_str(self) -> &'static str {
        match self {
            Route::Coefficient => "coefficient",
            Route::Spherical => "spherical",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RootCondition<T = f64> {
    /// `None` for a point at the north pole (a root at infinity).
    pub root: Option<PlanePoint<T>>,
    pub mu: LogMagnitude<T>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConditionReport<T = f64> {
    pub per_root: Vec<RootCondition<T>>,
    pub mu_max: LogMagnitude<T>,
    pub route: Route,
}

impl<T: Real> ConditionReport<T> {
    fn from_roots(per_root: Vec<RootCondition<T>>, route: Route) -> Self {
        let mu_max = per_root
            .iter()
            .fold(LogMagnitude::zero(), |m, r| m.max(r.mu));
        Self {
            per_root,
            mu_max,
            route,
        }
    }

    pub fn n(&self) -> usize {
        self.per_root.len()
    }

    /// `{"n", "route", "mu_max_log", "per_root": [{"z": [re, im], "mu_log"}]}`;
    /// infinite logs are written as the string `"inf"`.
    pub fn to_json(&self) -> serde_json::Value {
        let per_root: Vec<_> = self
            .per_root
            .iter()
            .map(|r| {
                let z = r
                    .root
                    .map(|z| json!([json_f64(z.re.to_f64_lossy()), json_f64(z.im.to_f64_lossy())]))
                    .unwrap_or(serde_json::Value::Null);
                json!({ "z": z, "mu_log": json_f64(r.mu.log().to_f64_lossy()) })
            })
            .collect();
        json!({
            "n": self.n(),
            "route": self.route.as_str(),
            "mu_max_log": json_f64(self.mu_max.log().to_f64_lossy()),
            "per_root": per_root,
        })
    }
}

/// Evaluation frame for a point: the polynomial itself for `|z| ≤ 1`, otherwise
/// the reversed polynomial at `1/z`. Reversal is a unitary change of coordinates,
/// so `μ`, `‖P‖` and the Weyl-scaled residual are unchanged while the evaluation
/// point stays in the unit disc.
fn unit_disc_frame<T: Real>(poly: &Polynomial<T>, z: Complex<T>) -> (std::borrow::Cow<'_, Polynomial<T>>, Complex<T>) {
    if z.norm_sqr() > T::one() {
        (std::borrow::Cow::Owned(poly.reversed()), z.inv())
    } else {
        (std::borrow::Cow::Borrowed(poly), z)
    }
}

/// `μ_norm(P, z) = √N ‖P‖ (1 + |z|²)^{N/2 - 1} / |P'(z)|`, in the log domain.
pub fn mu_norm_coeff<T: Real>(poly: &Polynomial<T>, z: PlanePoint<T>) -> Result<LogMagnitude<T>> {
    let n = poly.degree();
    if n == 0 {
        return Err(Error::InvalidInput("condition number of a constant".into()));
    }
    let log_norm = poly.log_weyl_norm()?.log();
    let (frame, w) = unit_disc_frame(poly, z.to_complex());
    let (value, deriv) = frame.evaluate_with_derivative(w);
    let nf = count::<T>(n);
    let log_r2 = w.norm_sqr().ln_1p();

    let log_tol = lit::<T>(ROOT_RESIDUAL).ln() + log_norm + nf * w.norm().ln_1p();
    let log_residual = value.norm().ln();
    if log_residual > log_tol {
        return Err(Error::NotARoot {
            residual: log_residual.exp().to_f64_lossy(),
            tolerance: log_tol.exp().to_f64_lossy(),
        });
    }

    let half = lit::<T>(0.5);
    let log_deriv = deriv.norm().ln();
    let log_cutoff = lit::<T>(DOUBLE_ROOT).ln() + log_norm + half * (nf - T::one()) * log_r2;
    if !(log_deriv > log_cutoff) {
        return Ok(LogMagnitude::infinite());
    }
    Ok(LogMagnitude::from_log(
        half * nf.ln() + log_norm + (half * nf - T::one()) * log_r2 - log_deriv,
    ))
}

/// `log(½√(N(N+1)))`.
pub fn log_mu_prefactor<T: Real>(n: usize) -> T {
    let nf = count::<T>(n);
    lit::<T>(0.5) * (nf * (nf + T::one())).ln() - T::LN_2()
}

/// Spherical characterization at point `i`, given `log ∫ ∏|p - x_j|² dσ`.
pub fn mu_norm_spherical_with<T: Real>(cfg: &Configuration<T>, i: usize, log_integral: T) -> LogMagnitude<T> {
    let pts = cfg.points();
    let floor = lit::<T>(crate::energy::COINCIDENT_DISTANCE);
    let mut log_prod = T::zero();
    for (j, &xj) in pts.iter().enumerate() {
        if j == i {
            continue;
        }
        let d = chordal_distance(pts[i], xj);
        if d < floor {
            return LogMagnitude::infinite();
        }
        log_prod = log_prod + d.ln();
    }
    LogMagnitude::from_log(log_mu_prefactor::<T>(pts.len()) + lit::<T>(0.5) * log_integral - log_prod)
}

/// `μ = ½√(N(N+1)) (∫ ∏_j |p - x_j|² dσ)^{1/2} / ∏_{j≠i} |x_i - x_j|`.
pub fn mu_norm_spherical<T: Real>(cfg: &Configuration<T>, i: usize) -> LogMagnitude<T> {
    assert!(i < cfg.len(), "point index out of range");
    mu_norm_spherical_with(cfg, i, sphere_integral(cfg).log())
}

/// Spherical-route condition numbers of every point and their maximum.
pub fn mu_norm_max<T: Real>(cfg: &Configuration<T>) -> ConditionReport<T> {
    let log_integral = sphere_integral(cfg).log();
    let per_root = (0..cfg.len())
        .map(|i| RootCondition {
            root: sphere_to_plane(cfg.points()[i]).ok(),
            mu: mu_norm_spherical_with(cfg, i, log_integral),
        })
        .collect();
    ConditionReport::from_roots(per_root, Route::Spherical)
}

/// Coefficient-route condition numbers of `poly` at the given roots.
pub fn mu_norm_at_roots<T: Real>(poly: &Polynomial<T>, roots: &[PlanePoint<T>]) -> Result<ConditionReport<T>> {
    let per_root = roots
        .iter()
        .map(|&z| {
            Ok(RootCondition {
                root: Some(z),
                mu: mu_norm_coeff(poly, z)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ConditionReport::from_roots(per_root, Route::Coefficient))
}

/// Coefficient route for a configuration: project, expand the monic polynomial
/// and apply the coefficient formula at each projected point.
pub fn mu_norm_max_coeff<T: Real>(cfg: &Configuration<T>) -> Result<ConditionReport<T>> {
    let height = |c: &Configuration<T>| c.points().iter().fold(-T::one(), |h, x| max_of(h, x.to_array()[2]));
    if height(cfg) <= lit(POLE_CLEARANCE) {
        let roots = cfg.to_plane()?;
        return mu_norm_at_roots(&Polynomial::from_roots(&roots)?, &roots);
    }
    // μ is rotation invariant: compute in a frame whose pole is clear of every
    // point, then label the roots by the original points
    let turned = (1..24)
        .map(|k| cfg.rotated(&Rotation::about_axis([T::one(), T::zero(), T::zero()], lit::<T>(PI / 12.0) * count(k))))
        .reduce(|a, b| if greater(height(&a), height(&b)) { b } else { a })
        .expect("nonempty");
    let roots = turned.to_plane()?;
    let report = mu_norm_at_roots(&Polynomial::from_roots(&roots)?, &roots)?;
    let per_root = report
        .per_root
        .into_iter()
        .zip(cfg.points())
        .map(|(r, &x)| RootCondition { root: sphere_to_plane(x).ok(), mu: r.mu })
        .collect();
    Ok(ConditionReport::from_roots(per_root, Route::Coefficient))
}

/// Coefficient route for a polynomial given by coefficients: roots come from
/// [`find_roots`].
pub fn mu_norm_of_polynomial<T: Real>(poly: &Polynomial<T>) -> Result<ConditionReport<T>> {
    if poly.degree() == 0 {
        return Err(Error::InvalidInput("a constant polynomial has no roots".into()));
    }
    let roots = if poly.normalize()?.degree() == 0 {
        Vec::new()
    } else {
        find_roots(poly)?
    };
    let mut report = mu_norm_at_roots(poly, &roots)?;
    // a vanishing leading coefficient leaves roots at infinity: evaluate them
    // as roots at 0 of the reversed polynomial
    let at_infinity = poly.degree() - roots.len();
    if at_infinity > 0 {
        let mu = mu_norm_coeff(&poly.reversed(), PlanePoint::new(T::zero(), T::zero()))?;
        report.per_root.extend((0..at_infinity).map(|_| RootCondition { root: None, mu }));
        report = ConditionReport::from_roots(report.per_root, Route::Coefficient);
    }
    let cluster = lit::<T>(ROOT_CLUSTER);
    let mut multiple = vec![false; roots.len()];
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            if chordal_distance_plane(roots[i], roots[j]) < cluster {
                multiple[i] = true;
                multiple[j] = true;
            }
        }
    }
    if multiple.contains(&true) {
        for (r, m) in report.per_root.iter_mut().zip(multiple) {
            if m {
                r.mu = LogMagnitude::infinite();
            }
        }
        report = ConditionReport::from_roots(report.per_root, Route::Coefficient);
    }
    Ok(report)
}

/// `|(E - Σ log μ_i) - (-N log(½√(N(N+1))) - ½N log ∫)|` with spherical-route `μ`.
pub fn energy_condition_identity_residual<T: Real>(cfg: &Configuration<T>) -> Result<T> {
    let n = cfg.len();
    let energy = log_energy(cfg)?;
    let log_integral = sphere_integral(cfg).log();
    let sum_log_mu = (0..n).fold(T::zero(), |acc, i| acc + mu_norm_spherical_with(cfg, i, log_integral).log());
    let nf = count::<T>(n);
    let rhs = -nf * log_mu_prefactor::<T>(n) - lit::<T>(0.5) * nf * log_integral;
    Ok(((energy - sum_log_mu) - rhs).abs())
}

/// Lower bound `½N log N + (C_log - log 2)N` for `Σ log μ_i` (the `o(N)` term dropped).
pub fn sum_log_mu_lower_bound(n: usize, c_log: f64) -> f64 {
    let nf = n as f64;
    0.5 * nf * nf.ln() + (c_log - std::f64::consts::LN_2) * nf
}

/// `κN² - N log(½√(N(N+1))) + N log μ_max`: the energy ceiling implied by a
/// condition-number bound, via the energy–condition identity and Jensen.
pub fn energy_ceiling_from_mu(n: usize, log_mu_max: f64) -> f64 {
    let nf = n as f64;
    KAPPA * nf * nf - nf * log_mu_prefactor::<f64>(n) + nf * log_mu_max
}

/// Weyl-scaled residual `|P(z)| / (‖P‖ (1 + |z|²)^{N/2})`, in the log domain.
fn log_scaled_residual<T: Real>(poly: &Polynomial<T>, reversed: &Polynomial<T>, log_norm: T, z: Complex<T>) -> T {
    let n = count::<T>(poly.degree());
    let (frame, w) = if z.norm_sqr() > T::one() { (reversed, z.inv()) } else { (poly, z) };
    frame.evaluate(w).norm().ln() - log_norm - lit::<T>(0.5) * n * w.norm_sqr().ln_1p()
}

/// Newton ratio `P(z)/P'(z)`, evaluated through the reversed polynomial when `|z| > 1`.
fn newton_ratio<T: Real>(poly: &Polynomial<T>, reversed: &Polynomial<T>, z: Complex<T>) -> Complex<T> {
    if z.norm_sqr() > T::one() {
        let w = z.inv();
        let (q, dq) = reversed.evaluate_with_derivative(w);
        let denom = q * count::<T>(poly.degree()) - w * dq;
        z * q / denom
    } else {
        let (p, dp) = poly.evaluate_with_derivative(z);
        p / dp
    }
}

/// All roots by Aberth–Ehrlich simultaneous iteration.
///
/// Leading coefficients are trimmed first, so the number of roots is the
/// effective degree. Each returned root satisfies
/// `|P(z)| ≤ 1e-10 · ‖P‖ · (1 + |z|²)^{N/2}`; otherwise the best iterate is
/// reported through [`Error::NoConvergence`].
pub fn find_roots<T: Real>(poly: &Polynomial<T>) -> Result<Vec<PlanePoint<T>>> {
    let poly = poly.normalize()?;
    let n = poly.degree();
    if n == 0 {
        return Err(Error::InvalidInput("a constant polynomial has no roots".into()));
    }
    let reversed = poly.reversed();
    let log_norm = poly.log_weyl_norm()?.log();
    let lead = poly.leading();
    let radius = T::one()
        + poly.coeffs()[..n]
            .iter()
            .map(|&a| (a / lead).norm())
            .fold(T::zero(), |m, v| if v > m { v } else { m });

    let nf = count::<T>(n);
    let offset = lit::<T>(0.4);
    let mut z: Vec<Complex<T>> = (0..n)
        .map(|k| Complex::from_polar(radius, lit::<T>(2.0) * T::PI() * count::<T>(k) / nf + offset))
        .collect();

    let log_threshold = lit::<T>(FIND_ROOTS_RESIDUAL).ln();
    let worst = |z: &[Complex<T>]| {
        z.iter()
            .map(|&zk| log_scaled_residual(&poly, &reversed, log_norm, zk))
            .fold(T::neg_infinity(), max_of)
    };
    let mut best = z.clone();
    let mut best_worst = worst(&z);
    let mut stale = 0usize;
    let step_floor = lit::<T>(4.0) * T::epsilon();
    let mut sweeps = 0;

    while sweeps < MAX_SWEEPS {
        sweeps += 1;
        let mut max_step = T::zero();
        for k in 0..n {
            let ratio = newton_ratio(&poly, &reversed, z[k]);
            if !(ratio.re.is_finite() && ratio.im.is_finite()) {
                continue;
            }
            let mut repulsion = Complex::new(T::zero(), T::zero());
            for (j, &zj) in z.iter().enumerate() {
                if j != k {
                    let diff = z[k] - zj;
                    if diff.norm_sqr() > T::zero() {
                        repulsion = repulsion + diff.inv();
                    }
                }
            }
            let step = ratio / (Complex::new(T::one(), T::zero()) - ratio * repulsion);
            if step.re.is_finite() && step.im.is_finite() {
                z[k] = z[k] - step;
                let rel = step.norm() / (T::one() + z[k].norm());
                if rel > max_step {
                    max_step = rel;
                }
            }
        }
        let w = worst(&z);
        if w < best_worst {
            best_worst = w;
            best.clone_from(&z);
            stale = 0;
        } else {
            stale += 1;
        }
        if max_step <= step_floor || (best_worst <= log_threshold && stale >= 5) {
            break;
        }
    }

    if best_worst <= log_threshold {
        Ok(best.into_iter().map(PlanePoint::from).collect())
    } else {
        let residuals = best
            .iter()
            .map(|&zk| log_scaled_residual(&poly, &reversed, log_norm, zk).exp().to_f64_lossy())
            .collect();
        Err(Error::NoConvergence {
            sweeps,
            best: best.iter().map(|c| (c.re.to_f64_lossy(), c.im.to_f64_lossy())).collect(),
            residuals,
            worst_residual: best_worst.exp().to_f64_lossy(),
        })
    }
}
