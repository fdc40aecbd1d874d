// Copyright The fekete Authors
// SPDX-License-Identifier: Apache-2.0

//! Discrete logarithmic energy on the unit sphere and on the Riemann sphere,
//! its Riemannian gradient, and the asymptotic expansion of its minimum.
//!
//! Energies sum over *ordered* pairs, `E = -Σ_{i≠j} log ‖x_i - x_j‖`.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{count, lit, Real};
use crate::sphere::{riemann_to_sphere, Configuration, RiemannPoint, SpherePoint};

/// Pairwise distances below this are coincident.
pub const COINCIDENT_DISTANCE: f64 = 1e-14;

/// Continuous logarithmic energy of the uniform measure, `½ - log 2`.
pub const KAPPA: f64 = 0.5 - std::f64::consts::LN_2;
/// Best known upper bound for the linear coefficient of the minimal energy.
pub const C_LOG_UPPER: f64 = -0.055_605_3;
/// Best known lower bound for the same coefficient.
pub const C_LOG_LOWER: f64 = -0.223_282_3;

/// The constants entering the minimal-energy expansion.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Constants {
    pub kappa: f64,
    pub c_log_upper: f64,
    pub c_log_lower: f64,
}

impl Default for Constants {
    fn default() -> Self {
        Self {
            kappa: KAPPA,
            c_log_upper: C_LOG_UPPER,
            c_log_lower: C_LOG_LOWER,
        }
    }
}

/// Energy of a configuration next to the expansion evaluated at both known
/// bounds for the linear coefficient. The `o(N)` remainder is unknown, so the
/// bracket is heuristic.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnergyReport {
    pub value: f64,
    pub n: usize,
    pub lower_bound: f64,
    pub upper_bound_conjectured: f64,
    /// `value - upper_bound_conjectured`.
    pub gap_to_expansion: f64,
    pub heuristic: bool,
}

impl EnergyReport {
    pub fn new(value: f64, n: usize) -> Self {
        let lower_bound = min_energy_expansion(n, C_LOG_LOWER);
        let upper_bound_conjectured = min_energy_expansion(n, C_LOG_UPPER);
        Self {
            value,
            n,
            lower_bound,
            upper_bound_conjectured,
            gap_to_expansion: value - upper_bound_conjectured,
            heuristic: true,
        }
    }
}

fn check_distinct<T: Real>(i: usize, j: usize, d2: T) -> Result<()> {
    let floor = lit::<T>(COINCIDENT_DISTANCE);
    if d2 < floor * floor {
        return Err(Error::CoincidentPoints {
            i,
            j,
            distance: d2.sqrt().to_f64_lossy(),
        });
    }
    Ok(())
}

/// `-Σ_{i≠j} log ‖x_i - x_j‖`. Rows are summed in parallel and reduced in index
/// order, so the result does not depend on the worker count.
pub fn log_energy<T: Real>(cfg: &Configuration<T>) -> Result<T> {
    let pts = cfg.points();
    let rows: Vec<Result<T>> = (0..pts.len())
        .into_par_iter()
        .map(|i| {
            let mut row = T::zero();
            for j in i + 1..pts.len() {
                let d2 = pts[i].distance_sqr(pts[j]);
                check_distinct(i, j, d2)?;
                row = row + d2.ln();
            }
            Ok(row)
        })
        .collect();
    // each unordered pair contributes 2·log d = log d²
    let mut total = T::zero();
    for r in rows {
        total = total - r?;
    }
    Ok(total)
}

/// Energy of points on the Riemann sphere (radius ½).
pub fn log_energy_riemann<T: Real>(points: &[RiemannPoint<T>]) -> Result<T> {
    let mut total = T::zero();
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let d = points[i].distance(points[j]);
            check_distinct(i, j, d * d)?;
            total = total - lit::<T>(2.0) * d.ln();
        }
    }
    Ok(total)
}

/// Energy of the image of Riemann-sphere points under the homothety `h`, minus
/// the Riemann-sphere energy: halving all distances shifts the energy by
/// `log 2 · (N² - N)`, so `E^𝕊 = E(h(·)) + log 2 · (N² - N)`.
pub fn riemann_energy_shift<T: Real>(n: usize) -> T {
    let nf = count::<T>(n);
    T::LN_2() * (nf * nf - nf)
}

/// Maps Riemann-sphere points to the unit sphere and returns that configuration.
pub fn riemann_image<T: Real>(points: &[RiemannPoint<T>]) -> Result<Configuration<T>> {
    Configuration::new(points.iter().map(|&p| riemann_to_sphere(p)).collect())
}

/// `κn² - ½ n log n + c_log·n`, the minimal-energy expansion without its `o(n)` term.
pub fn min_energy_expansion(n: usize, c_log: f64) -> f64 {
    let nf = n as f64;
    KAPPA * nf * nf - 0.5 * nf * nf.ln() + c_log * nf
}

/// Energy bound for points whose polynomial has condition number `≤ C√N`:
/// `κN² - ½N log N + log(2C)·N - ½N log(1 + 1/N)`.
pub fn thmain1_bound(n: usize, c_big: f64) -> f64 {
    assert!(c_big > 0.0, "the condition-number constant must be positive");
    let nf = n as f64;
    KAPPA * nf * nf - 0.5 * nf * nf.ln() + (2.0 * c_big).ln() * nf - 0.5 * nf * (1.0 / nf).ln_1p()
}

/// Riemannian gradient of [`log_energy`]: the ambient gradient
/// `-2 Σ_{j≠i} (x_i - x_j) / ‖x_i - x_j‖²` projected onto each tangent plane.
pub fn energy_gradient<T: Real>(cfg: &Configuration<T>) -> Result<Vec<[T; 3]>> {
    let pts = cfg.points();
    let two = lit::<T>(2.0);
    (0..pts.len())
        .into_par_iter()
        .map(|i| {
            let xi = pts[i];
            let mut g = [T::zero(); 3];
            for (j, &xj) in pts.iter().enumerate() {
                if j == i {
                    continue;
                }
                let d2 = xi.distance_sqr(xj);
                check_distinct(i.min(j), i.max(j), d2)?;
                let s = -two / d2;
                g[0] = g[0] + s * (xi.a - xj.a);
                g[1] = g[1] + s * (xi.b - xj.b);
                g[2] = g[2] + s * (xi.c - xj.c);
            }
            Ok(project_tangent(xi, g))
        })
        .collect()
}

/// Removes the normal component of `v` at `x`.
pub fn project_tangent<T: Real>(x: SpherePoint<T>, v: [T; 3]) -> [T; 3] {
    let dot = x.a * v[0] + x.b * v[1] + x.c * v[2];
    [v[0] - dot * x.a, v[1] - dot * x.b, v[2] - dot * x.c]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sphere::sphere_to_riemann;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn sp(a: f64, b: f64, c: f64) -> SpherePoint<f64> {
        SpherePoint::normalized(a, b, c).unwrap()
    }

    pub(crate) fn tetrahedron() -> Configuration<f64> {
        Configuration::new(vec![
            sp(1.0, 1.0, 1.0),
            sp(1.0, -1.0, -1.0),
            sp(-1.0, 1.0, -1.0),
            sp(-1.0, -1.0, 1.0),
        ])
        .unwrap()
    }

    fn antipodal() -> Configuration<f64> {
        Configuration::new(vec![sp(0.0, 0.0, 1.0), sp(0.0, 0.0, -1.0)]).unwrap()
    }

    #[test]
    fn energy_examples() {
        let e = log_energy(&antipodal()).unwrap();
        assert!((e + 2.0 * 2f64.ln()).abs() < 1e-15);
        assert!((e + 1.386_294).abs() < 1e-6);
        let t = log_energy(&tetrahedron()).unwrap();
        assert!((t + 6.0 * (8.0f64 / 3.0).ln()).abs() < 1e-13);
        assert!((t + 5.884_975_5).abs() < 1e-7);
        let x = sp(1.0, 0.0, 0.0);
        let dup = Configuration::new(vec![x, x]).unwrap();
        assert!(matches!(log_energy(&dup), Err(Error::CoincidentPoints { .. })));
    }

    #[test]
    fn riemann_energy_examples() {
        // antipodal pair on 𝕊 sits at distance 1: energy 0
        let pts = antipodal().to_riemann();
        let er = log_energy_riemann(&pts).unwrap();
        assert!(er.abs() < 1e-15);
        let e = log_energy(&riemann_image(&pts).unwrap()).unwrap();
        assert!((er - (e + riemann_energy_shift::<f64>(2))).abs() < 1e-12);

        let one = vec![sphere_to_riemann(sp(0.0, 1.0, 0.0))];
        assert_eq!(log_energy_riemann(&one).unwrap(), 0.0);
        assert_eq!(log_energy(&riemann_image(&one).unwrap()).unwrap(), 0.0);

        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let cfg = Configuration::<f64>::random(5, &mut rng);
        let er = log_energy_riemann(&cfg.to_riemann()).unwrap();
        let e = log_energy(&cfg).unwrap();
        assert!((er - (e + riemann_energy_shift::<f64>(5))).abs() < 1e-9);
    }

    #[test]
    fn expansion_examples() {
        assert!((min_energy_expansion(1, -0.3) - (KAPPA - 0.3)).abs() < 1e-15);
        assert!((min_energy_expansion(100, C_LOG_UPPER) + 2167.29).abs() < 5e-3);
        assert!((min_energy_expansion(100, C_LOG_LOWER) + 2184.06).abs() < 5e-3);
    }

    #[test]
    fn thmain1_bound_examples() {
        assert!((thmain1_bound(1, 1.0) - (KAPPA + 2f64.ln() - 0.5 * 2f64.ln())).abs() < 1e-15);
        assert!((thmain1_bound(100, 1.0) + 2092.91).abs() < 5e-3);
        assert!(thmain1_bound(10, 2.0) > thmain1_bound(10, 1.0));
    }

    #[test]
    fn constants_ordering() {
        let c = Constants::default();
        assert!(c.kappa < 0.0);
        assert!(c.c_log_lower <= c.c_log_upper);
        let r = EnergyReport::new(-2167.0, 100);
        assert!(r.lower_bound <= r.upper_bound_conjectured);
    }

    #[test]
    fn gradient_vanishes_at_symmetric_configurations() {
        for cfg in [antipodal(), tetrahedron()] {
            for g in energy_gradient(&cfg).unwrap() {
                assert!(g.iter().all(|v| v.abs() < 1e-10), "{g:?}");
            }
        }
    }

    #[test]
    fn gradient_is_tangent() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let cfg = Configuration::<f64>::random(12, &mut rng);
        let grad = energy_gradient(&cfg).unwrap();
        for (p, g) in cfg.points().iter().zip(&grad) {
            let dot = p.a * g[0] + p.b * g[1] + p.c * g[2];
            assert!(dot.abs() < 1e-10);
        }
    }
}
