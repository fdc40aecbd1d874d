// Copyright The fekete Authors
// SPDX-License-Identifier: Apache-2.0

//! Norm-quotient machinery: the quotient `∏‖x - z_i‖ / ‖∏(x - z_i)‖`, its exact
//! spherical-integral form, the `√(e^N/(N+1))` ceiling, Bombieri-type product
//! inequalities and the energy identity linking quotient, condition and energy.
//!
//! Every check reports a signed slack in the log domain (positive means the
//! inequality holds with room to spare) rather than a bare boolean.

use serde::Serialize;

use crate::condition::mu_norm_spherical_with;
use crate::energy::log_energy;
use crate::error::{Error, Result};
use crate::poly::{log_monomial_norm, Polynomial};
use crate::quadrature::sphere_integral;
use crate::scalar::{count, lit, Real};
use crate::special::ln_factorial;
use crate::sphere::{Configuration, PlanePoint};

/// Equality tolerance in the log domain.
pub const LOG_TOL: f64 = 1e-9;

/// `K_2 = √6 / e`.
pub fn k2() -> f64 {
    6f64.sqrt() / std::f64::consts::E
}

/// `K_3 = 4 / (e√e)`.
pub fn k3() -> f64 {
    4.0 / std::f64::consts::E.powf(1.5)
}

/// `K_4 = 3√5 / e²`.
pub fn k4() -> f64 {
    3.0 * 5f64.sqrt() / std::f64::consts::E.powi(2)
}

/// The known `K_N` values, for `N ∈ {2, 3, 4}`.
pub fn known_k(n: usize) -> Option<f64> {
    match n {
        2 => Some(k2()),
        3 => Some(k3()),
        4 => Some(k4()),
        _ => None,
    }
}

/// Result of comparing a root set's quotient with the `√(e^N/(N+1))` ceiling.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuotientReport {
    pub n: usize,
    pub log_quotient: f64,
    /// `½(N - log(N + 1))`.
    pub log_bound: f64,
    /// `exp(log_quotient - log_bound)`.
    pub k_value: f64,
    /// `log_bound - log_quotient`.
    pub log_slack: f64,
    pub holds: bool,
}

/// Outcome of a product inequality `lhs ≥ rhs` checked in the log domain.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InequalityCheck {
    /// `log lhs - log rhs`.
    pub log_slack: f64,
    pub holds: bool,
}

impl InequalityCheck {
    fn from_slack(log_slack: f64) -> Self {
        Self {
            log_slack,
            holds: log_slack >= -LOG_TOL,
        }
    }
}

/// `log(∏‖x - z_i‖ / ‖∏(x - z_i)‖) = Σ ½log(1 + |z_i|²) - log‖p‖`; never negative.
pub fn log_quotient<T: Real>(roots: &[PlanePoint<T>]) -> Result<T> {
    let poly = Polynomial::from_roots(roots)?;
    let numerator = roots
        .iter()
        .fold(T::zero(), |acc, &z| acc + log_monomial_norm(z).log());
    Ok(numerator - poly.log_weyl_norm()?.log())
}

/// `½(N - log(N + 1))`, the log of `√(e^N/(N+1))`.
pub fn log_quotient_bound(n: usize) -> f64 {
    let nf = n as f64;
    0.5 * (nf - (nf + 1.0).ln())
}

/// The quotient predicted by the spherical integral:
/// `N log 2 - ½log(N+1) - ½ log ∫ ∏|p - x_i|² dσ`.
pub fn log_quotient_from_integral<T: Real>(n: usize, log_integral: T) -> T {
    let nf = count::<T>(n);
    nf * T::LN_2() - lit::<T>(0.5) * (nf + T::one()).ln() - lit::<T>(0.5) * log_integral
}

/// `|log_quotient(projection) - (N log 2 - ½log(N+1) - ½ log ∫)|`.
pub fn miformula_residual<T: Real>(cfg: &Configuration<T>) -> Result<T> {
    let roots = cfg.to_plane()?;
    let lq = log_quotient(&roots)?;
    let predicted = log_quotient_from_integral(cfg.len(), sphere_integral(cfg).log());
    Ok((lq - predicted).abs())
}

pub fn quotient_report(n: usize, log_quotient: f64) -> QuotientReport {
    let log_bound = log_quotient_bound(n);
    QuotientReport {
        n,
        log_quotient,
        log_bound,
        k_value: (log_quotient - log_bound).exp(),
        log_slack: log_bound - log_quotient,
        holds: log_quotient <= log_bound + LOG_TOL,
    }
}

/// `∏‖x - z_i‖ ≤ √(e^N/(N+1)) ‖∏(x - z_i)‖`.
pub fn check_thmain2<T: Real>(roots: &[PlanePoint<T>]) -> Result<QuotientReport> {
    let lq = log_quotient(roots)?.to_f64_lossy();
    Ok(quotient_report(roots.len(), lq))
}

/// Log of the multinomial `(Σk_i)! / ∏ k_i!`.
pub fn log_multinomial(degrees: &[usize]) -> f64 {
    let total: usize = degrees.iter().sum();
    ln_factorial::<f64>(total) - degrees.iter().map(|&k| ln_factorial::<f64>(k)).sum::<f64>()
}

/// `‖PQ‖ ≥ √(m! n! / (m+n)!) ‖P‖ ‖Q‖` for forms of the declared degrees.
pub fn check_bombieri_pair<T: Real>(p: &Polynomial<T>, q: &Polynomial<T>) -> Result<InequalityCheck> {
    check_corollary_multi(&[p.clone(), q.clone()])
}

/// `‖P_1 ⋯ P_m‖ ≥ √(∏k_i! / (Σk_i)!) ∏‖P_i‖`.
pub fn check_corollary_multi<T: Real>(factors: &[Polynomial<T>]) -> Result<InequalityCheck> {
    let (first, rest) = factors
        .split_first()
        .ok_or_else(|| Error::InvalidInput("no factors".into()))?;
    let mut product = first.clone();
    for f in rest {
        product = product.multiply(f)?;
    }
    let mut log_norms = 0.0;
    for f in factors {
        log_norms += f.log_weyl_norm()?.log().to_f64_lossy();
    }
    let degrees: Vec<usize> = factors.iter().map(Polynomial::degree).collect();
    let lhs = product.log_weyl_norm()?.log().to_f64_lossy();
    let rhs = -0.5 * log_multinomial(&degrees) + log_norms;
    Ok(InequalityCheck::from_slack(lhs - rhs))
}

/// `log min{√((Σk)!/∏k_i!), √(e^{Σk}/(Σk+1))}`.
pub fn combined_bound(degrees: &[usize]) -> Result<f64> {
    if degrees.is_empty() {
        return Err(Error::InvalidInput("combined_bound needs at least one degree".into()));
    }
    let total: usize = degrees.iter().sum();
    Ok((0.5 * log_multinomial(degrees)).min(log_quotient_bound(total)))
}

/// Residual of
/// `E = Σ log μ_i + N·log_quotient - log2·N² - ½N log N + log2·N`
/// with spherical-route `μ`.
pub fn abs_identity_residual<T: Real>(cfg: &Configuration<T>) -> Result<T> {
    let n = cfg.len();
    let energy = log_energy(cfg)?;
    let roots = cfg.to_plane()?;
    let lq = log_quotient(&roots)?;
    let log_integral = sphere_integral(cfg).log();
    let sum_log_mu = (0..n).fold(T::zero(), |acc, i| acc + mu_norm_spherical_with(cfg, i, log_integral).log());
    let nf = count::<T>(n);
    let ln2 = T::LN_2();
    let rhs = sum_log_mu + nf * lq - ln2 * nf * nf - lit::<T>(0.5) * nf * nf.ln() + ln2 * nf;
    Ok((energy - rhs).abs())
}

/// Log of the lower factor `e^{C_log}/(2C) · √(e^N/N)` for well-conditioned
/// root sets (`μ ≤ C√N`), the `o(1)` correction dropped.
pub fn sharp2_lower_bound(n: usize, c_big: f64, c_log: f64) -> f64 {
    assert!(c_big > 0.0, "the condition-number constant must be positive");
    let nf = n as f64;
    c_log - (2.0 * c_big).ln() + 0.5 * (nf - nf.ln())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sphere::{plane_to_sphere, SpherePoint};
    use num_complex::Complex;

    fn pt(re: f64, im: f64) -> PlanePoint<f64> {
        PlanePoint::new(re, im)
    }

    fn cube_roots() -> Vec<PlanePoint<f64>> {
        let h = 3f64.sqrt() / 2.0;
        vec![pt(1.0, 0.0), pt(-0.5, h), pt(-0.5, -h)]
    }

    pub(crate) fn tetrahedron_roots() -> Vec<PlanePoint<f64>> {
        let s = 1.0 / 3f64.sqrt();
        let cfg = Configuration::new(vec![
            SpherePoint::new(s, s, s).unwrap(),
            SpherePoint::new(s, -s, -s).unwrap(),
            SpherePoint::new(-s, s, -s).unwrap(),
            SpherePoint::new(-s, -s, s).unwrap(),
        ])
        .unwrap();
        cfg.to_plane().unwrap()
    }

    fn lin(a: f64, b: f64) -> Polynomial<f64> {
        // a + b x
        Polynomial::from_real(&[a, b]).unwrap()
    }

    #[test]
    fn quotient_examples() {
        let lq = log_quotient(&[pt(1.0, 0.0), pt(-1.0, 0.0)]).unwrap();
        assert!((lq - 0.5 * 2f64.ln()).abs() < 1e-15);
        assert!((log_quotient(&cube_roots()).unwrap() - 2f64.ln()).abs() < 1e-15);
        assert!(log_quotient(&[pt(0.3, -4.0)]).unwrap().abs() < 1e-15);
    }

    #[test]
    fn miformula_examples() {
        let x = SpherePoint::new(1.0, 0.0, 0.0).unwrap();
        let y = SpherePoint::new(-1.0, 0.0, 0.0).unwrap();
        let antipodal = Configuration::new(vec![x, y]).unwrap();
        assert!(miformula_residual(&antipodal).unwrap() <= 1e-10);
        let coincident = Configuration::new(vec![x, x]).unwrap();
        assert!(miformula_residual(&coincident).unwrap() <= 1e-9);
        let pole = Configuration::new(vec![SpherePoint::north_pole(), y]).unwrap();
        assert!(matches!(miformula_residual(&pole), Err(Error::NearNorthPole { .. })));
    }

    #[test]
    fn thmain2_examples() {
        let r = check_thmain2(&[pt(1.0, 0.0), pt(-1.0, 0.0)]).unwrap();
        assert!((r.log_bound - 0.4507).abs() < 1e-4);
        assert!((r.log_quotient - 0.3466).abs() < 1e-4);
        assert!((r.k_value - k2()).abs() < 1e-12 && r.holds);
        assert!((k2() - 0.9011).abs() < 1e-4);

        let r = check_thmain2(&cube_roots()).unwrap();
        assert!((r.k_value - k3()).abs() < 1e-12);
        assert!((k3() - 0.8925).abs() < 1e-4);

        let roots = tetrahedron_roots();
        let r = check_thmain2(&roots).unwrap();
        assert!((r.log_quotient - 3f64.ln()).abs() < 1e-12);
        assert!((r.k_value - k4()).abs() < 1e-12);
        assert!((k4() - 0.9078).abs() < 1e-4);
    }

    #[test]
    fn bombieri_pair_examples() {
        // (x - 1)(x + 1): equality case
        let c = check_bombieri_pair(&lin(-1.0, 1.0), &lin(1.0, 1.0)).unwrap();
        assert!(c.holds && c.log_slack.abs() < 1e-12);
        // x^m · x^m: ‖x^{2m}‖ = 1 ≥ √((m!)²/(2m)!)
        let mono = |m: usize| {
            let mut v = vec![Complex::new(0.0, 0.0); m + 1];
            v[m] = Complex::new(1.0, 0.0);
            Polynomial::new(v).unwrap()
        };
        let c = check_bombieri_pair(&mono(4), &mono(4)).unwrap();
        assert!(c.holds);
        assert!((c.log_slack - 0.5 * log_multinomial(&[4, 4])).abs() < 1e-12);
    }

    #[test]
    fn corollary_on_linear_factors_is_the_factorial_bound() {
        let roots = [pt(0.5, 1.0), pt(-2.0, 0.1), pt(0.0, -1.0), pt(3.0, 3.0)];
        let factors: Vec<_> = roots
            .iter()
            .map(|z| Polynomial::from_roots(&[*z]).unwrap())
            .collect();
        let c = check_corollary_multi(&factors).unwrap();
        // slack = ½ log N! - log_quotient
        let lq = log_quotient(&roots).unwrap();
        assert!((c.log_slack - (0.5 * ln_factorial::<f64>(4) - lq)).abs() < 1e-12);
        assert!(c.holds);
        assert!(check_corollary_multi::<f64>(&[]).is_err());
    }

    #[test]
    fn combined_bound_examples() {
        // two linear factors: the factorial bound √2 still wins
        assert!((combined_bound(&[1, 1]).unwrap() - 0.5 * 2f64.ln()).abs() < 1e-15);
        for m in 3..30 {
            let ones = vec![1; m];
            let first = 0.5 * log_multinomial(&ones);
            let second = log_quotient_bound(m);
            assert!(second < first);
            assert_eq!(combined_bound(&ones).unwrap(), second);
        }
        let n = 40;
        let b = combined_bound(&[n - 1, 1]).unwrap();
        assert!((b - 0.5 * (n as f64).ln()).abs() < 1e-12);
        let b = combined_bound(&[2, 2]).unwrap();
        assert!((b - 0.5 * 6f64.ln()).abs() < 1e-12);
        assert!(combined_bound(&[]).is_err());
    }

    #[test]
    fn abs_identity_examples() {
        let x = SpherePoint::new(1.0, 0.0, 0.0).unwrap();
        let y = SpherePoint::new(-1.0, 0.0, 0.0).unwrap();
        let antipodal = Configuration::new(vec![x, y]).unwrap();
        assert!(abs_identity_residual(&antipodal).unwrap() <= 1e-10);
        let tetra = Configuration::new(tetrahedron_roots().into_iter().map(plane_to_sphere).collect()).unwrap();
        assert!(abs_identity_residual(&tetra).unwrap() <= 1e-9);
    }

    #[test]
    fn sharp2_examples() {
        assert!((sharp2_lower_bound(1, 1.0, 0.0) - (0.5 - 2f64.ln())).abs() < 1e-15);
        assert!((sharp2_lower_bound(100, 0.5, -0.223_282_3) - 47.47).abs() < 5e-3);
        for n in 2..50 {
            assert!(sharp2_lower_bound(n, 0.5, -0.223_282_3) <= log_quotient_bound(n));
        }
    }
}
