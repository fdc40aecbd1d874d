// Copyright The fekete Authors
// SPDX-License-Identifier: Apache-2.0

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use twofloat::TwoFloat;

use fekete_core::condition::{energy_condition_identity_residual, find_roots, mu_norm_max, mu_norm_max_coeff, mu_norm_of_polynomial};
use fekete_core::energy::{log_energy, log_energy_riemann, riemann_energy_shift};
use fekete_core::formats::parse_polynomial;
use fekete_core::inequalities::{abs_identity_residual, miformula_residual};
use fekete_core::sampling::{random_kostlan, trial_rng};
use fekete_core::{Configuration, PlanePoint, Polynomial, SpherePoint};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[test]
fn integral_form_of_the_quotient_on_random_points() {
    for seed in 0..5 {
        let cfg = Configuration::<f64>::random(20, &mut rng(seed));
        assert!(miformula_residual(&cfg).unwrap() <= 1e-9);
    }
}

#[test]
fn energy_condition_quotient_identity_on_random_points() {
    for seed in 0..5 {
        let cfg = Configuration::<f64>::random(10, &mut rng(seed));
        assert!(abs_identity_residual(&cfg).unwrap() <= 1e-8);
        assert!(energy_condition_identity_residual(&cfg).unwrap() <= 1e-8);
    }
}

#[test]
fn riemann_sphere_energy_shift() {
    for n in [2, 7, 40] {
        let cfg = Configuration::<f64>::random(n, &mut rng(n as u64));
        let lhs = log_energy_riemann(&cfg.to_riemann()).unwrap();
        let rhs = log_energy(&cfg).unwrap() + riemann_energy_shift::<f64>(n);
        assert!((lhs - rhs).abs() <= 1e-9);
    }
}

#[test]
fn single_precision_pipeline() {
    let cfg = Configuration::<f64>::random(8, &mut rng(1));
    let e64 = log_energy(&cfg).unwrap();
    let e32 = log_energy(&cfg.cast::<f32>()).unwrap();
    assert!((e64 - e32 as f64).abs() < 1e-3);
    let m32 = mu_norm_max(&cfg.cast::<f32>()).mu_max.log();
    assert!((m32 as f64 - mu_norm_max(&cfg).mu_max.log()).abs() < 1e-3);
}

#[test]
fn double_double_coefficient_route_beats_f64_at_large_n() {
    let cfg = Configuration::<f64>::random(100, &mut rng(77));
    let spherical = mu_norm_max(&cfg);
    let dd = mu_norm_max_coeff(&cfg.cast::<TwoFloat>()).unwrap();
    let worst = spherical
        .per_root
        .iter()
        .zip(&dd.per_root)
        .map(|(s, c)| (s.mu.log() - c.mu.log().hi()).abs())
        .fold(0.0, f64::max);
    assert!(worst <= 1e-8, "{worst:e}");
}

#[test]
fn roots_of_random_polynomials_reproduce_them() {
    for t in 0..20 {
        let mut r = trial_rng(31, t);
        let p = random_kostlan(3 + t as usize, &mut r);
        let roots = find_roots(&p).unwrap();
        let q = Polynomial::from_roots(&roots).unwrap();
        let lead = p.leading();
        let scale = p.log_weyl_norm().unwrap().value();
        for (a, b) in p.coeffs().iter().zip(q.coeffs()) {
            assert!((a - b * lead).norm() <= 1e-8 * scale, "trial {t}");
        }
    }
}

#[test]
fn condition_numbers_from_coefficient_files() {
    let r = mu_norm_of_polynomial(&parse_polynomial("-1 0\n0 0\n1 0\n").unwrap()).unwrap();
    assert!(r.mu_max.log().abs() < 1e-12);
    // (x - i)² = x² - 2i x - 1
    let r = mu_norm_of_polynomial(&parse_polynomial("-1 0\n0 -2\n1 0\n").unwrap()).unwrap();
    assert!(r.mu_max.is_infinite());
    assert_eq!(r.to_json()["mu_max_log"], "inf");
}

#[test]
fn coincident_points_are_reported() {
    let x = SpherePoint::new(0.0, 1.0, 0.0).unwrap();
    let cfg = Configuration::new(vec![x, x, SpherePoint::south_pole()]).unwrap();
    assert!(log_energy(&cfg).is_err());
    assert!(mu_norm_max(&cfg).mu_max.is_infinite());
    let pole = Configuration::from_plane(&[PlanePoint::new(0.0, 0.0)]).unwrap();
    assert_eq!(pole.points()[0].c, -1.0);
}
