// Copyright The fekete Authors
// SPDX-License-Identifier: Apache-2.0

//! Seeded input distributions for fuzzing the identities and inequalities.
//!
//! Trial `k` of a run with root seed `s` draws from ChaCha8 seeded with `s` on
//! stream `k`, so any single trial can be replayed without the others.

use num_complex::Complex;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::poly::Polynomial;
use crate::special::ln_binomial;
use crate::sphere::{sphere_to_plane, Configuration, PlanePoint, SpherePoint};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Distribution {
    /// Stereographic images of sphere-uniform points.
    SphereUniform,
    /// Independent standard complex Gaussians.
    ComplexGaussian,
    /// One to three tight clusters with spreads from 1e-8 to 1e-2.
    Clustered,
}

impl Distribution {
    pub const ALL: [Distribution; 3] = [
        Distribution::SphereUniform,
        Distribution::ComplexGaussian,
        Distribution::Clustered,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Distribution::SphereUniform => "sphere_uniform",
            Distribution::ComplexGaussian => "complex_gaussian",
            Distribution::Clustered => "clustered",
        }
    }
}

pub fn trial_rng(root_seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(root_seed);
    rng.set_stream(trial);
    rng
}

fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex<f64> {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// A sphere-uniform point that projects to a finite plane point.
pub fn random_plane_point<R: Rng + ?Sized>(rng: &mut R) -> PlanePoint<f64> {
    loop {
        if let Ok(z) = sphere_to_plane(SpherePoint::random(rng)) {
            return z;
        }
    }
}

pub fn sample_roots<R: Rng + ?Sized>(dist: Distribution, n: usize, rng: &mut R) -> Vec<PlanePoint<f64>> {
    match dist {
        Distribution::SphereUniform => (0..n).map(|_| random_plane_point(rng)).collect(),
        Distribution::ComplexGaussian => (0..n).map(|_| complex_gaussian(rng).into()).collect(),
        Distribution::Clustered => {
            let clusters = rng.random_range(1..=3usize.min(n));
            let centres: Vec<_> = (0..clusters).map(|_| random_plane_point(rng)).collect();
            let spreads: Vec<f64> = (0..clusters).map(|_| 10f64.powf(rng.random_range(-8.0..-2.0))).collect();
            (0..n)
                .map(|i| {
                    let k = i % clusters;
                    let c = centres[k].to_complex();
                    // spread scaled to the chordal size of a neighbourhood of c
                    let z = c + complex_gaussian(rng) * spreads[k] * (1.0 + c.norm_sqr());
                    z.into()
                })
                .collect()
        }
    }
}

pub fn sample_configuration<R: Rng + ?Sized>(dist: Distribution, n: usize, rng: &mut R) -> Configuration<f64> {
    match dist {
        Distribution::SphereUniform => Configuration::random(n, rng),
        _ => Configuration::from_plane(&sample_roots(dist, n, rng)).expect("finite roots lift to the sphere"),
    }
}

/// Kostlan-random polynomial: coefficient `k` is complex Gaussian with
/// variance `C(N, k)`, so the distribution is unitarily invariant.
pub fn random_kostlan<R: Rng + ?Sized>(degree: usize, rng: &mut R) -> Polynomial<f64> {
    let coeffs = (0..=degree)
        .map(|k| complex_gaussian(rng) * (0.5 * ln_binomial::<f64>(degree, k)).exp())
        .collect();
    Polynomial::new(coeffs).expect("at least one coefficient")
}
