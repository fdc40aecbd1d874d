// Copyright The fekete Authors
// SPDX-License-Identifier: Apache-2.0

//! Randomized check suite behind `fekete verify`.
//!
//! Every check yields a signed log-slack: `log(tol / residual)` for identities
//! and the inequality's own log-domain slack (plus its tolerance) for bounds.
//! A record passes iff its slack is nonnegative.

use std::fmt::Write as _;
use std::str::FromStr;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;
use twofloat::TwoFloat;

use crate::condition::{energy_condition_identity_residual, mu_norm_max, mu_norm_max_coeff};
use crate::energy::{log_energy, log_energy_riemann, riemann_energy_shift, KAPPA};
use crate::error::{Error, Result};
use crate::inequalities::{abs_identity_residual, check_corollary_multi, check_thmain2, log_quotient, miformula_residual, LOG_TOL};
use crate::quadrature::sphere_integral;
use crate::sampling::{random_kostlan, sample_configuration, sample_roots, trial_rng, Distribution};
use crate::sphere::{Configuration, PlanePoint};
use crate::wire::json_f64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    All,
    Identities,
    Inequalities,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(Suite::All),
            "identities" => Ok(Suite::Identities),
            "inequalities" => Ok(Suite::Inequalities),
            other => Err(Error::InvalidInput(format!("unknown suite `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyOptions {
    pub suite: Suite,
    pub trials: usize,
    pub seed: u64,
    /// Sizes are drawn uniformly from `1..=n_max`.
    pub n_max: usize,
    /// Replaces every check's tolerance; only for exercising the harness.
    pub tolerance_override: Option<f64>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            suite: Suite::All,
            trials: 100,
            seed: 0,
            n_max: 60,
            tolerance_override: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRecord {
    pub check: &'static str,
    pub trial: usize,
    pub n: usize,
    pub log_slack: f64,
    pub pass: bool,
}

impl CheckRecord {
    pub fn to_json(&self) -> serde_json::Value {
        json!({ "check": self.check, "n": self.n, "log_slack": json_f64(self.log_slack), "pass": self.pass })
    }
}

struct Check {
    name: &'static str,
    suite: Suite,
    tol: f64,
    /// Returns `(n, log_slack)` for a tolerance.
    run: fn(&mut rand_chacha::ChaCha8Rng, usize, f64) -> Result<(usize, f64)>,
}

fn identity_slack(tol: f64, residual: f64) -> f64 {
    if residual.is_nan() {
        return f64::NEG_INFINITY;
    }
    (tol / residual.max(f64::MIN_POSITIVE)).ln()
}

fn random_n<R: Rng + ?Sized>(rng: &mut R, lo: usize, hi: usize) -> usize {
    rng.random_range(lo..=hi.max(lo))
}

fn miformula(rng: &mut rand_chacha::ChaCha8Rng, n_max: usize, tol: f64) -> Result<(usize, f64)> {
    let n = random_n(rng, 1, n_max);
    let cfg = sample_configuration(Distribution::SphereUniform, n, rng);
    Ok((n, identity_slack(tol, miformula_residual(&cfg)?)))
}

fn abs_identity(rng: &mut rand_chacha::ChaCha8Rng, n_max: usize, tol: f64) -> Result<(usize, f64)> {
    let n = random_n(rng, 2, n_max);
    let cfg = sample_configuration(Distribution::SphereUniform, n, rng);
    Ok((n, identity_slack(tol, abs_identity_residual(&cfg)?)))
}

fn energy_condition(rng: &mut rand_chacha::ChaCha8Rng, n_max: usize, tol: f64) -> Result<(usize, f64)> {
    let n = random_n(rng, 2, n_max);
    let cfg = sample_configuration(Distribution::SphereUniform, n, rng);
    Ok((n, identity_slack(tol, energy_condition_identity_residual(&cfg)?)))
}

fn riemann_shift(rng: &mut rand_chacha::ChaCha8Rng, n_max: usize, tol: f64) -> Result<(usize, f64)> {
    let n = random_n(rng, 2, n_max);
    let cfg = sample_configuration(Distribution::SphereUniform, n, rng);
    let residual = (log_energy_riemann(&cfg.to_riemann())? - log_energy(&cfg)? - riemann_energy_shift::<f64>(n)).abs();
    Ok((n, identity_slack(tol, residual)))
}

/// Coefficient route in double-double against the spherical route in `f64`.
fn mu_routes(rng: &mut rand_chacha::ChaCha8Rng, n_max: usize, tol: f64) -> Result<(usize, f64)> {
    let n = random_n(rng, 1, n_max);
    let cfg = sample_configuration(Distribution::SphereUniform, n, rng);
    let spherical = mu_norm_max(&cfg);
    let coeff = mu_norm_max_coeff(&cfg.cast::<TwoFloat>())?;
    let worst = spherical
        .per_root
        .iter()
        .zip(&coeff.per_root)
        .map(|(s, c)| (s.mu.log() - c.mu.log().hi()).abs())
        .fold(0.0, f64::max);
    Ok((n, identity_slack(tol, worst)))
}

/// `μ ≥ 1` at every root.
fn mu_at_least_one(rng: &mut rand_chacha::ChaCha8Rng, n_max: usize, tol: f64) -> Result<(usize, f64)> {
    let n = random_n(rng, 1, n_max);
    let cfg = sample_configuration(Distribution::SphereUniform, n, rng);
    let min_log = mu_norm_max(&cfg)
        .per_root
        .iter()
        .map(|r| r.mu.log())
        .fold(f64::INFINITY, f64::min);
    Ok((n, min_log + tol))
}

fn thmain2(rng: &mut rand_chacha::ChaCha8Rng, n_max: usize, tol: f64) -> Result<(usize, f64)> {
    let n = random_n(rng, 1, n_max);
    let dist = Distribution::ALL[rng.random_range(0..3)];
    let r = check_thmain2(&sample_roots(dist, n, rng))?;
    Ok((n, r.log_slack + tol))
}

/// An `N`-fold root has quotient exactly 1.
fn repeated_root(rng: &mut rand_chacha::ChaCha8Rng, n_max: usize, tol: f64) -> Result<(usize, f64)> {
    let n = random_n(rng, 1, n_max);
    let z = sample_roots(Distribution::SphereUniform, 1, rng)[0];
    let lq = log_quotient(&vec![z; n])?;
    Ok((n, identity_slack(tol, lq.abs())))
}

fn bombieri_pair(rng: &mut rand_chacha::ChaCha8Rng, n_max: usize, tol: f64) -> Result<(usize, f64)> {
    let m = random_n(rng, 1, n_max.min(20));
    let k = random_n(rng, 1, n_max.min(20));
    let p = random_kostlan(m, rng);
    let q = random_kostlan(k, rng);
    let c = crate::inequalities::check_bombieri_pair(&p, &q)?;
    Ok((m + k, c.log_slack + tol))
}

fn bombieri_multi(rng: &mut rand_chacha::ChaCha8Rng, n_max: usize, tol: f64) -> Result<(usize, f64)> {
    let parts = random_n(rng, 2, 5);
    let factors: Vec<_> = (0..parts)
        .map(|_| {
            let d = random_n(rng, 1, n_max.min(8));
            random_kostlan(d, rng)
        })
        .collect();
    let n = factors.iter().map(|f| f.degree()).sum();
    Ok((n, check_corollary_multi(&factors)?.log_slack + tol))
}

/// `½ log ∫ ≥ -κN`.
fn jensen(rng: &mut rand_chacha::ChaCha8Rng, n_max: usize, tol: f64) -> Result<(usize, f64)> {
    let n = random_n(rng, 1, n_max);
    let dist = Distribution::ALL[rng.random_range(0..3)];
    let cfg = sample_configuration(dist, n, rng);
    Ok((n, 0.5 * sphere_integral(&cfg).log() + KAPPA * n as f64 + tol))
}

const CHECKS: &[Check] = &[
    Check { name: "miformula_identity", suite: Suite::Identities, tol: 1e-9, run: miformula },
    Check { name: "abs_identity", suite: Suite::Identities, tol: 1e-8, run: abs_identity },
    Check { name: "energy_condition_identity", suite: Suite::Identities, tol: 1e-8, run: energy_condition },
    Check { name: "riemann_energy_shift", suite: Suite::Identities, tol: 1e-9, run: riemann_shift },
    Check { name: "mu_route_agreement", suite: Suite::Identities, tol: 1e-8, run: mu_routes },
    Check { name: "repeated_root_quotient", suite: Suite::Identities, tol: 1e-10, run: repeated_root },
    Check { name: "mu_at_least_one", suite: Suite::Inequalities, tol: 1e-12, run: mu_at_least_one },
    Check { name: "quotient_bound", suite: Suite::Inequalities, tol: LOG_TOL, run: thmain2 },
    Check { name: "bombieri_pair", suite: Suite::Inequalities, tol: LOG_TOL, run: bombieri_pair },
    Check { name: "bombieri_product", suite: Suite::Inequalities, tol: LOG_TOL, run: bombieri_multi },
    Check { name: "jensen_integral_bound", suite: Suite::Inequalities, tol: LOG_TOL, run: jensen },
];

pub fn check_names(suite: Suite) -> Vec<&'static str> {
    CHECKS
        .iter()
        .filter(|c| suite == Suite::All || c.suite == suite)
        .map(|c| c.name)
        .collect()
}

/// Runs the selected checks; records come back ordered by check, then trial.
/// Trial `t` of check `c` uses stream `c · 2³² + t` of the root seed.
pub fn run_suite(opts: &VerifyOptions) -> Result<Vec<CheckRecord>> {
    if opts.n_max < 2 {
        return Err(Error::InvalidInput("n_max must be at least 2".into()));
    }
    let mut records = Vec::new();
    for (ci, check) in CHECKS.iter().enumerate() {
        if opts.suite != Suite::All && check.suite != opts.suite {
            continue;
        }
        let tol = opts.tolerance_override.unwrap_or(check.tol);
        let batch = (0..opts.trials)
            .into_par_iter()
            .map(|t| {
                let mut rng = trial_rng(opts.seed, ((ci as u64) << 32) | t as u64);
                let (n, log_slack) = (check.run)(&mut rng, opts.n_max, tol)?;
                Ok(CheckRecord {
                    check: check.name,
                    trial: t,
                    n,
                    log_slack,
                    pass: log_slack >= 0.0,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        records.extend(batch);
    }
    Ok(records)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SummaryRow {
    pub check: &'static str,
    pub trials: usize,
    pub passed: usize,
    pub failed: usize,
    pub min_log_slack: f64,
}

pub fn summarize(records: &[CheckRecord]) -> Vec<SummaryRow> {
    let mut rows: Vec<SummaryRow> = Vec::new();
    for r in records {
        let row = match rows.iter_mut().find(|row| row.check == r.check) {
            Some(row) => row,
            None => {
                rows.push(SummaryRow {
                    check: r.check,
                    trials: 0,
                    passed: 0,
                    failed: 0,
                    min_log_slack: f64::INFINITY,
                });
                rows.last_mut().expect("just pushed")
            }
        };
        row.trials += 1;
        if r.pass {
            row.passed += 1;
        } else {
            row.failed += 1;
        }
        row.min_log_slack = row.min_log_slack.min(r.log_slack);
    }
    rows
}

pub fn summary_csv(rows: &[SummaryRow]) -> String {
    let mut s = String::from("check,trials,passed,failed,min_log_slack\n");
    for r in rows {
        let _ = writeln!(s, "{},{},{},{},{:e}", r.check, r.trials, r.passed, r.failed, r.min_log_slack);
    }
    s
}

/// Convenience for the repeated-root identity outside the suite.
pub fn repeated_root_log_quotient(z: PlanePoint<f64>, n: usize) -> Result<f64> {
    log_quotient(&vec![z; n])
}

/// Sphere-uniform configuration for trial `t` of a run seeded with `seed`.
pub fn trial_configuration(seed: u64, t: u64, n: usize) -> Configuration<f64> {
    sample_configuration(Distribution::SphereUniform, n, &mut trial_rng(seed, t))
}
