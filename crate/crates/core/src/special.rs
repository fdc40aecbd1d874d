// Copyright The fekete Authors
// SPDX-License-Identifier: Apache-2.0

//! Log-domain special functions: log-gamma, log-binomials and log-sum-exp.

use crate::scalar::{count, lit, max_of, Real};

const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Natural log of `|Γ(x)|` (Lanczos approximation, reflection below ½).
pub fn ln_gamma<T: Real>(x: T) -> T {
    let half = lit::<T>(0.5);
    if x < half {
        // Γ(x)Γ(1-x) = π / sin(πx)
        let pi = T::PI();
        return (pi / (pi * x).sin().abs()).ln() - ln_gamma(T::one() - x);
    }
    let t = x - T::one();
    let mut acc = lit::<T>(LANCZOS_COEFFS[0]);
    for (k, &c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        acc = acc + lit::<T>(c) / (t + count::<T>(k));
    }
    let tt = t + lit::<T>(LANCZOS_G) + half;
    half * (lit::<T>(2.0) * T::PI()).ln() + (t + half) * tt.ln() - tt + acc.ln()
}

/// `ln n!`
pub fn ln_factorial<T: Real>(n: usize) -> T {
    if n < 2 {
        T::zero()
    } else {
        ln_gamma(count::<T>(n) + T::one())
    }
}

/// `ln C(n, k)`, `-inf` when `k > n`.
pub fn ln_binomial<T: Real>(n: usize, k: usize) -> T {
    if k > n {
        return T::neg_infinity();
    }
    if k == 0 || k == n {
        return T::zero();
    }
    ln_factorial::<T>(n) - ln_factorial::<T>(k) - ln_factorial::<T>(n - k)
}

/// `ln Σ exp(v_i)` without overflow. Empty input or all `-inf` gives `-inf`.
pub fn logsumexp<T: Real>(values: &[T]) -> T {
    let max = values
        .iter()
        .copied()
        .fold(T::neg_infinity(), max_of);
    if max == T::neg_infinity() || max == T::infinity() {
        return max;
    }
    let sum = values
        .iter()
        .filter(|v| v.is_finite())
        .fold(T::zero(), |acc, &v| acc + (v - max).exp());
    max + sum.ln()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ln_factorial_by_sum(n: usize) -> f64 {
        (2..=n).map(|k| (k as f64).ln()).sum()
    }

    #[test]
    fn ln_gamma_matches_log_factorial_sums() {
        for n in [1usize, 2, 3, 10, 57, 170, 500, 1000, 4096, 10_000] {
            let exact = ln_factorial_by_sum(n);
            let got = ln_factorial::<f64>(n);
            let scale = exact.abs().max(1.0);
            assert!(
                (got - exact).abs() <= 1e-13 * scale,
                "n = {n}: {got} vs {exact}"
            );
        }
    }

    #[test]
    fn ln_gamma_half_integers() {
        let sqrt_pi_ln = 0.5 * std::f64::consts::PI.ln();
        assert!((ln_gamma(0.5f64) - sqrt_pi_ln).abs() < 1e-14);
        // Γ(3/2) = √π / 2
        assert!((ln_gamma(1.5f64) - (sqrt_pi_ln - 2f64.ln())).abs() < 1e-14);
        // Γ(1/4) via reflection branch stays finite and positive.
        assert!((ln_gamma(0.25f64) - 1.288_022_524_698_077_5).abs() < 1e-13);
    }

    #[test]
    fn binomials() {
        assert_eq!(ln_binomial::<f64>(5, 0), 0.0);
        assert!((ln_binomial::<f64>(5, 2) - 10f64.ln()).abs() < 1e-13);
        assert!((ln_binomial::<f64>(40, 20) - 137_846_528_820f64.ln()).abs() < 1e-12);
        assert_eq!(ln_binomial::<f64>(3, 4), f64::NEG_INFINITY);
        // C(2000, 1000) overflows f64 but its log does not.
        let v = ln_binomial::<f64>(2000, 1000);
        assert!(v.is_finite() && v > 1380.0 && v < 1390.0);
    }

    #[test]
    fn logsumexp_edge_cases() {
        assert_eq!(logsumexp::<f64>(&[]), f64::NEG_INFINITY);
        assert_eq!(
            logsumexp(&[f64::NEG_INFINITY, f64::NEG_INFINITY]),
            f64::NEG_INFINITY
        );
        let v = logsumexp(&[1000.0f64, 1000.0]);
        assert!((v - (1000.0 + 2f64.ln())).abs() < 1e-12);
        let w = logsumexp(&[0.0f64, f64::NEG_INFINITY, 0.0]);
        assert!((w - 2f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn works_for_double_double() {
        use twofloat::TwoFloat;
        // twofloat's own ln is only good to ~1e-12 relative, so no better than f64 here
        let v: TwoFloat = ln_factorial(100);
        assert!((v.hi() - ln_factorial_by_sum(100)).abs() < 1e-11);
    }
}
