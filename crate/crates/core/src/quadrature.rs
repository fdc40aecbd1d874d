// Copyright The fekete Authors
// SPDX-License-Identifier: Apache-2.0

//! Product Gauss-Legendre × trapezoid rules on the unit sphere, used as an
//! independent oracle for `∫ ∏|p - x_j|² dσ(p)` with `σ` normalized to mass 1.

use rayon::prelude::*;

use crate::log_magnitude::LogMagnitude;
use crate::scalar::{count, lit, Real};
use crate::special::logsumexp;
use crate::sphere::{Configuration, SpherePoint};

/// Nodes and positive weights (summing to 1) exact for polynomials of degree
/// `≤ exact_degree` restricted to the sphere.
#[derive(Debug, Clone)]
pub struct QuadratureRule<T = f64> {
    pub nodes: Vec<SpherePoint<T>>,
    pub weights: Vec<T>,
    pub exact_degree: usize,
    /// Number of polar (Gauss-Legendre) rings; nodes are stored ring by ring.
    rings: usize,
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`, found by Newton iteration on
/// the three-term recurrence.
pub fn gauss_legendre<T: Real>(n: usize) -> (Vec<T>, Vec<T>) {
    let mut nodes = vec![T::zero(); n];
    let mut weights = vec![T::zero(); n];
    let nf = count::<T>(n);
    let two = lit::<T>(2.0);
    let tol = lit::<T>(1e-15);
    for i in 0..n.div_ceil(2) {
        let mut x = (T::PI() * (count::<T>(i) + lit(0.75)) / (nf + lit(0.5))).cos();
        let mut dp = T::one();
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x = x - dx;
            if dx.abs() <= tol * x.abs().max(T::one()) {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d.is_finite() {
            dp = d;
        }
        let w = two / ((T::one() - x * x) * dp * dp);
        nodes[i] = x;
        nodes[n - 1 - i] = -x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = T::zero();
    }
    (nodes, weights)
}

fn legendre_with_derivative<T: Real>(n: usize, x: T) -> (T, T) {
    let mut p0 = T::one();
    let mut p1 = x;
    if n == 0 {
        return (T::one(), T::zero());
    }
    for k in 2..=n {
        let kf = count::<T>(k);
        let p2 = ((lit::<T>(2.0) * kf - T::one()) * x * p1 - (kf - T::one()) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let nf = count::<T>(n);
    let dp = nf * (x * p1 - p0) / (x * x - T::one());
    (p1, dp)
}

/// Rule exact to `degree`: `⌈(degree+1)/2⌉` polar nodes × `degree + 1` azimuths.
pub fn product_rule<T: Real>(degree: usize) -> QuadratureRule<T> {
    let polar = (degree + 2) / 2;
    let azimuths = degree + 1;
    let (ts, ws) = gauss_legendre::<T>(polar);
    let mut nodes = Vec::with_capacity(polar * azimuths);
    let mut weights = Vec::with_capacity(polar * azimuths);
    let az = count::<T>(azimuths);
    let half = lit::<T>(0.5);
    for (&t, &w) in ts.iter().zip(&ws) {
        let s = (T::one() - t * t).max(T::zero()).sqrt();
        for k in 0..azimuths {
            let phi = lit::<T>(2.0) * T::PI() * count::<T>(k) / az;
            let (sin, cos) = phi.sin_cos();
            nodes.push(SpherePoint {
                a: s * cos,
                b: s * sin,
                c: t,
            });
            weights.push(half * w / az);
        }
    }
    QuadratureRule {
        nodes,
        weights,
        exact_degree: degree,
        rings: polar,
    }
}

impl<T: Real> QuadratureRule<T> {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate<F: Fn(SpherePoint<T>) -> T>(&self, f: F) -> T {
        self.nodes
            .iter()
            .zip(&self.weights)
            .fold(T::zero(), |acc, (&p, &w)| acc + w * f(p))
    }

    /// `log ∫ exp(g) dσ` for an integrand given by its log `g`, node by node.
    /// Rings are evaluated in parallel and reduced in a fixed order.
    pub fn log_integrate<F>(&self, log_f: F) -> T
    where
        F: Fn(SpherePoint<T>) -> T + Sync,
    {
        let per_ring = self.nodes.len() / self.rings.max(1);
        let logs: Vec<T> = self
            .nodes
            .par_chunks(per_ring.max(1))
            .zip(self.weights.par_chunks(per_ring.max(1)))
            .flat_map_iter(|(ps, ws)| {
                ps.iter()
                    .zip(ws)
                    .map(|(&p, &w)| w.ln() + log_f(p))
                    .collect::<Vec<_>>()
            })
            .collect();
        logsumexp(&logs)
    }
}

/// `log ∏ |p - x_j|²`, multiplying directly and flushing to the log only when
/// the running product nears under- or overflow.
pub fn log_product_sq_distances<T: Real>(p: SpherePoint<T>, points: &[SpherePoint<T>]) -> T {
    let lo = T::min_positive_value().sqrt();
    let hi = T::max_value().sqrt();
    let mut prod = T::one();
    let mut acc = T::zero();
    for &x in points {
        let d2 = p.distance_sqr(x);
        if d2 == T::zero() {
            return T::neg_infinity();
        }
        prod = prod * d2;
        if prod < lo || prod > hi {
            acc = acc + prod.ln();
            prod = T::one();
        }
    }
    acc + prod.ln()
}

/// `log ∫ ∏_j |p - x_j|² dσ(p)` using a rule exact to degree `2N`.
pub fn sphere_integral<T: Real>(cfg: &Configuration<T>) -> LogMagnitude<T> {
    let rule = product_rule::<T>(2 * cfg.len());
    sphere_integral_with(&rule, cfg)
}

/// As [`sphere_integral`] with a caller-supplied rule; the rule must be exact
/// to at least degree `N` (the integrand's degree on the sphere).
pub fn sphere_integral_with<T: Real>(rule: &QuadratureRule<T>, cfg: &Configuration<T>) -> LogMagnitude<T> {
    assert!(
        rule.exact_degree >= cfg.len(),
        "quadrature rule of degree {} cannot integrate a degree-{} integrand",
        rule.exact_degree,
        cfg.len()
    );
    let points = cfg.points();
    LogMagnitude::from_log(rule.log_integrate(|p| log_product_sq_distances(p, points)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn sp(a: f64, b: f64, c: f64) -> SpherePoint<f64> {
        SpherePoint::new(a, b, c).unwrap()
    }

    #[test]
    fn gauss_legendre_small_orders() {
        let (x, w) = gauss_legendre::<f64>(2);
        assert!((x[0] - 1.0 / 3f64.sqrt()).abs() < 1e-15);
        assert!((w[0] - 1.0).abs() < 1e-15 && (w[1] - 1.0).abs() < 1e-15);
        let (x, w) = gauss_legendre::<f64>(3);
        assert!((x[0] - 0.6f64.sqrt()).abs() < 1e-15 && x[1] == 0.0);
        assert!((w[1] - 8.0 / 9.0).abs() < 1e-15);
    }

    #[test]
    fn weights_sum_to_one() {
        for d in [0, 1, 2, 7, 40, 401] {
            let rule = product_rule::<f64>(d);
            let s: f64 = rule.weights.iter().sum();
            assert!((s - 1.0).abs() < 1e-13, "degree {d}: {s}");
            assert!(rule.weights.iter().all(|&w| w > 0.0));
            assert_eq!(rule.len(), ((d + 2) / 2) * (d + 1));
        }
    }

    #[test]
    fn moment_examples() {
        assert!((product_rule::<f64>(0).integrate(|_| 1.0) - 1.0).abs() < 1e-15);
        let m2 = product_rule::<f64>(2).integrate(|p| p.c * p.c);
        assert!((m2 - 1.0 / 3.0).abs() < 1e-13);
        let m4 = product_rule::<f64>(4).integrate(|p| p.c.powi(4));
        assert!((m4 - 0.2).abs() < 1e-13);
    }

    #[test]
    fn integrates_spherical_harmonics_to_zero() {
        // A few real harmonics written as polynomials in (a, b, c).
        let rule = product_rule::<f64>(6);
        let harmonics: Vec<Box<dyn Fn(SpherePoint<f64>) -> f64>> = vec![
            Box::new(|p| p.a),
            Box::new(|p| p.a * p.b),
            Box::new(|p| 3.0 * p.c * p.c - 1.0),
            Box::new(|p| p.a * (p.a * p.a - 3.0 * p.b * p.b)),
            Box::new(|p| 35.0 * p.c.powi(4) - 30.0 * p.c * p.c + 3.0),
            Box::new(|p| p.b * p.c * (7.0 * p.c * p.c - 3.0)),
            Box::new(|p| 231.0 * p.c.powi(6) - 315.0 * p.c.powi(4) + 105.0 * p.c * p.c - 5.0),
        ];
        for h in &harmonics {
            assert!(rule.integrate(h).abs() < 1e-11);
        }
    }

    #[test]
    fn sphere_integral_examples() {
        let single = Configuration::new(vec![sp(0.0, 0.6, 0.8)]).unwrap();
        assert!((sphere_integral(&single).log() - 2f64.ln()).abs() < 1e-13);

        let antipodal = Configuration::new(vec![sp(0.0, 0.0, 1.0), sp(0.0, 0.0, -1.0)]).unwrap();
        assert!((sphere_integral(&antipodal).log() - (8.0f64 / 3.0).ln()).abs() < 1e-13);

        let x = sp(1.0, 0.0, 0.0);
        let coincident = Configuration::new(vec![x, x]).unwrap();
        assert!((sphere_integral(&coincident).log() - (16.0f64 / 3.0).ln()).abs() < 1e-13);
    }

    #[test]
    fn degree_n_rule_already_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let cfg = Configuration::<f64>::random(9, &mut rng);
        let a = sphere_integral(&cfg).log();
        let b = sphere_integral_with(&product_rule(9), &cfg).log();
        assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn log_product_handles_extremes() {
        let p = sp(0.0, 0.0, -1.0);
        assert_eq!(log_product_sq_distances(p, &[p]), f64::NEG_INFINITY);
        // 600 antipodal factors of 4: 4^600 overflows f64
        let far = vec![sp(0.0, 0.0, 1.0); 600];
        let v = log_product_sq_distances(p, &far);
        assert!((v - 600.0 * 4f64.ln()).abs() < 1e-9);
    }
}
