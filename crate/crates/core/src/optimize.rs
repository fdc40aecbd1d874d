// Copyright The fekete Authors
// SPDX-License-Identifier: Apache-2.0

//! Extremal configurations: minimal logarithmic energy and maximal norm
//! quotient, by Riemannian gradient descent on the product of spheres.
//!
//! Each step moves every point along minus its tangent gradient and
//! renormalizes. The step size comes from a backtracking (halving) line search
//! with an Armijo condition; the first trial step of an iteration is twice the
//! last accepted one, starting from `1/N`. Trial configurations with coincident
//! points (energy `+∞`) or, for the quotient, a point at the north pole are
//! simply rejected.

use std::io::Write;

use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::condition::{energy_condition_identity_residual, energy_ceiling_from_mu};
use crate::energy::{energy_gradient, log_energy, KAPPA};
use crate::error::{Error, Result};
use crate::inequalities::{log_quotient, log_quotient_bound};
use crate::quadrature::sphere_integral;
use crate::sampling::trial_rng;
use crate::sphere::{Configuration, Rotation, SpherePoint};
use crate::wire::json_f64;

/// Points with `c` above this are rotated away before a quotient step, keeping
/// the projected roots moderate.
const POLE_GUARD: f64 = 0.999;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Objective {
    MinEnergy,
    MaxQuotient,
}

impl Objective {
    pub fn as_str(self) -> &'static str {
        match self {
            Objective::MinEnergy => "min_energy",
            Objective::MaxQuotient => "max_quotient",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OptimizerConfig {
    pub n: usize,
    pub objective: Objective,
    pub seed: u64,
    pub restarts: usize,
    pub max_iters: usize,
    /// Stop once the Riemannian gradient norm (over all points) is below this.
    pub grad_tol: f64,
    /// First trial step; `None` means `1/N`.
    pub initial_step: Option<f64>,
    pub max_step: f64,
    pub min_step: f64,
    pub armijo: f64,
    pub shrink: f64,
    pub growth: f64,
    /// Central-difference step for quotient gradients.
    pub fd_step: f64,
}

impl OptimizerConfig {
    pub fn new(n: usize, objective: Objective) -> Self {
        Self {
            n,
            objective,
            seed: 0,
            restarts: 1,
            max_iters: 20_000,
            grad_tol: match objective {
                Objective::MinEnergy => 1e-7,
                Objective::MaxQuotient => 1e-6,
            },
            initial_step: None,
            max_step: 1.0,
            min_step: 1e-14,
            armijo: 1e-4,
            shrink: 0.5,
            growth: 2.0,
            fd_step: 1e-6,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidInput(m.into()));
        if self.n < 2 {
            return bad("the optimizer needs n ≥ 2");
        }
        if self.restarts < 1 {
            return bad("restarts must be at least 1");
        }
        if !(self.grad_tol > 0.0) || !(self.fd_step > 0.0) || !(self.min_step > 0.0) {
            return bad("tolerances and steps must be positive");
        }
        if !(0.0 < self.shrink && self.shrink < 1.0) || !(self.growth >= 1.0) {
            return bad("need 0 < shrink < 1 and growth ≥ 1");
        }
        if !(0.0 < self.armijo && self.armijo < 1.0) {
            return bad("the Armijo constant must lie in (0, 1)");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Termination {
    GradientTolerance,
    /// No step above `min_step` gave sufficient decrease: the numerical floor.
    LineSearchStall,
    MaxIterations,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IterationRecord {
    pub iter: usize,
    /// Energy, or log-quotient for the maximization.
    pub objective: f64,
    pub grad_norm: f64,
    /// Accepted step; 0 for the starting point.
    pub step: f64,
}

#[derive(Debug, Clone)]
pub struct OptimizerTrace {
    pub objective: Objective,
    pub restart: usize,
    pub iterations: Vec<IterationRecord>,
    pub final_config: Configuration<f64>,
    pub final_value: f64,
    pub termination: Termination,
}

impl OptimizerTrace {
    pub fn converged(&self) -> bool {
        self.termination != Termination::MaxIterations
    }

    /// `exp(log_quotient - ½(N - log(N+1)))` for quotient runs.
    pub fn k_value(&self) -> Option<f64> {
        (self.objective == Objective::MaxQuotient)
            .then(|| (self.final_value - log_quotient_bound(self.final_config.len())).exp())
    }

    /// One JSON object per iteration.
    pub fn write_jsonl<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        for r in &self.iterations {
            let line = json!({
                "restart": self.restart,
                "iter": r.iter,
                "objective": json_f64(r.objective),
                "grad_norm": json_f64(r.grad_norm),
                "step": json_f64(r.step),
            });
            writeln!(out, "{line}")?;
        }
        Ok(())
    }
}

/// Generalized spiral: heights `-1 + 2k/(n-1)`, azimuth increments
/// `3.6/√(n(1-h²))`, tilted by a fixed rotation so no point is a pole.
pub fn spiral_points(n: usize) -> Configuration<f64> {
    assert!(n >= 1, "spiral needs at least one point");
    let tilt = Rotation::about_axis([1.0, 0.0, 0.0], 0.3);
    if n == 1 {
        return Configuration::new(vec![tilt.apply(SpherePoint::south_pole())]).expect("one point");
    }
    let nf = n as f64;
    let mut phi = 0.0f64;
    let points = (0..n)
        .map(|k| {
            let h = -1.0 + 2.0 * k as f64 / (nf - 1.0);
            let r = (1.0 - h * h).max(0.0).sqrt();
            if k == 0 || k == n - 1 {
                phi = 0.0;
            } else {
                phi = (phi + 3.6 / (nf * (1.0 - h * h)).sqrt()) % std::f64::consts::TAU;
            }
            let p = SpherePoint::normalized(r * phi.cos(), r * phi.sin(), h).expect("unit vector");
            tilt.apply(p)
        })
        .collect();
    Configuration::new(points).expect("spiral points are on the sphere")
}

fn norm_sqr(v: [f64; 3]) -> f64 {
    v[0] * v[0] + v[1] * v[1] + v[2] * v[2]
}

fn retract(cfg: &Configuration<f64>, dir: &[[f64; 3]], t: f64) -> Result<Configuration<f64>> {
    let pts = cfg
        .points()
        .iter()
        .zip(dir)
        .map(|(p, d)| SpherePoint::normalized(p.a + t * d[0], p.b + t * d[1], p.c + t * d[2]))
        .collect::<Result<Vec<_>>>()?;
    Configuration::new(pts)
}

/// Orthonormal tangent basis at `x`.
fn tangent_basis(x: SpherePoint<f64>) -> [[f64; 3]; 2] {
    let v = x.to_array();
    let axis = if v[0].abs() <= v[1].abs() && v[0].abs() <= v[2].abs() {
        [1.0, 0.0, 0.0]
    } else if v[1].abs() <= v[2].abs() {
        [0.0, 1.0, 0.0]
    } else {
        [0.0, 0.0, 1.0]
    };
    let cross = |a: [f64; 3], b: [f64; 3]| [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]];
    let e1 = cross(v, axis);
    let n1 = norm_sqr(e1).sqrt();
    let e1 = [e1[0] / n1, e1[1] / n1, e1[2] / n1];
    [e1, cross(v, e1)]
}

/// Descent problem: `value` is minimized; the reported objective is `sign · value`.
trait Problem {
    fn value(&self, cfg: &Configuration<f64>) -> Result<f64>;
    fn gradient(&self, cfg: &Configuration<f64>, value: f64) -> Result<Vec<[f64; 3]>>;
    fn sign(&self) -> f64;
    /// Hook to move the iterate to an equivalent, better-posed position.
    fn recenter(&self, cfg: Configuration<f64>, _rng: &mut ChaCha8Rng) -> Configuration<f64> {
        cfg
    }
}

struct EnergyProblem;

impl Problem for EnergyProblem {
    fn value(&self, cfg: &Configuration<f64>) -> Result<f64> {
        log_energy(cfg)
    }

    fn gradient(&self, cfg: &Configuration<f64>, _value: f64) -> Result<Vec<[f64; 3]>> {
        energy_gradient(cfg)
    }

    fn sign(&self) -> f64 {
        1.0
    }
}

struct QuotientProblem {
    fd_step: f64,
}

impl Problem for QuotientProblem {
    fn value(&self, cfg: &Configuration<f64>) -> Result<f64> {
        Ok(-log_quotient(&cfg.to_plane()?)?)
    }

    fn gradient(&self, cfg: &Configuration<f64>, _value: f64) -> Result<Vec<[f64; 3]>> {
        let h = self.fd_step;
        let pts = cfg.points();
        (0..pts.len())
            .into_par_iter()
            .map(|i| {
                let mut g = [0.0; 3];
                for e in tangent_basis(pts[i]) {
                    let shifted = |t: f64| -> Result<f64> {
                        let mut moved = pts.to_vec();
                        moved[i] = SpherePoint::normalized(pts[i].a + t * e[0], pts[i].b + t * e[1], pts[i].c + t * e[2])?;
                        self.value(&Configuration::new(moved)?)
                    };
                    let d = (shifted(h)? - shifted(-h)?) / (2.0 * h);
                    for k in 0..3 {
                        g[k] += d * e[k];
                    }
                }
                Ok(g)
            })
            .collect()
    }

    fn sign(&self) -> f64 {
        -1.0
    }

    /// The quotient is invariant under rotations of the sphere, so a point
    /// drifting to the north pole is handled by a random global rotation.
    fn recenter(&self, mut cfg: Configuration<f64>, rng: &mut ChaCha8Rng) -> Configuration<f64> {
        for _ in 0..64 {
            if cfg.points().iter().all(|p| p.c <= POLE_GUARD) {
                break;
            }
            cfg = cfg.rotated(&Rotation::random(rng));
        }
        cfg
    }
}

fn descend<P: Problem>(
    problem: &P,
    cfg0: Configuration<f64>,
    opts: &OptimizerConfig,
    restart: usize,
    rng: &mut ChaCha8Rng,
) -> Result<OptimizerTrace> {
    let n = cfg0.len();
    let mut cfg = problem.recenter(cfg0, rng);
    let mut f = problem.value(&cfg)?;
    let mut step = opts.initial_step.unwrap_or(1.0 / n as f64).min(opts.max_step);
    let mut iterations = Vec::new();
    let mut termination = Termination::MaxIterations;
    for iter in 0..=opts.max_iters {
        let g = problem.gradient(&cfg, f)?;
        let g2: f64 = g.iter().map(|&v| norm_sqr(v)).sum();
        let grad_norm = g2.sqrt();
        if iter == 0 {
            iterations.push(IterationRecord {
                iter,
                objective: problem.sign() * f,
                grad_norm,
                step: 0.0,
            });
        } else {
            iterations.last_mut().expect("iteration recorded").grad_norm = grad_norm;
        }
        if grad_norm <= opts.grad_tol {
            termination = Termination::GradientTolerance;
            break;
        }
        if iter == opts.max_iters {
            break;
        }
        let dir: Vec<[f64; 3]> = g.iter().map(|v| [-v[0], -v[1], -v[2]]).collect();
        let mut t = step;
        let accepted = loop {
            if t < opts.min_step {
                break None;
            }
            if let Ok(trial) = retract(&cfg, &dir, t) {
                if let Ok(ft) = problem.value(&trial) {
                    if ft <= f - opts.armijo * t * g2 {
                        break Some((trial, ft));
                    }
                }
            }
            t *= opts.shrink;
        };
        let Some((next, fnext)) = accepted else {
            termination = Termination::LineSearchStall;
            break;
        };
        cfg = problem.recenter(next, rng);
        f = fnext;
        iterations.push(IterationRecord {
            iter: iter + 1,
            objective: problem.sign() * f,
            grad_norm: f64::NAN,
            step: t,
        });
        step = (t * opts.growth).min(opts.max_step);
    }
    Ok(OptimizerTrace {
        objective: opts.objective,
        restart,
        final_value: problem.sign() * f,
        final_config: cfg,
        iterations,
        termination,
    })
}

fn restart_rng(seed: u64, restart: usize) -> ChaCha8Rng {
    trial_rng(seed, restart as u64)
}

pub fn minimize_energy(cfg0: Configuration<f64>, opts: &OptimizerConfig) -> Result<OptimizerTrace> {
    descend(&EnergyProblem, cfg0, opts, 0, &mut restart_rng(opts.seed, 0))
}

pub fn maximize_quotient(cfg0: Configuration<f64>, opts: &OptimizerConfig) -> Result<OptimizerTrace> {
    let problem = QuotientProblem { fd_step: opts.fd_step };
    descend(&problem, cfg0, opts, 0, &mut restart_rng(opts.seed, 0))
}

fn run_from(cfg0: Configuration<f64>, opts: &OptimizerConfig, restart: usize, rng: &mut ChaCha8Rng) -> Result<OptimizerTrace> {
    match opts.objective {
        Objective::MinEnergy => descend(&EnergyProblem, cfg0, opts, restart, rng),
        Objective::MaxQuotient => descend(&QuotientProblem { fd_step: opts.fd_step }, cfg0, opts, restart, rng),
    }
}

#[derive(Debug, Clone)]
pub struct MultiStart {
    pub best_index: usize,
    pub traces: Vec<OptimizerTrace>,
}

impl MultiStart {
    pub fn best(&self) -> &OptimizerTrace {
        &self.traces[self.best_index]
    }

    /// Final objective of every restart, in restart order.
    pub fn finals(&self) -> Vec<f64> {
        self.traces.iter().map(|t| t.final_value).collect()
    }
}

/// Restart 0 starts from [`spiral_points`], the others from seeded uniform
/// random points (or, with `start`, restart 0 resumes from that configuration).
/// Restarts run in parallel; the best objective wins, ties to the lower index.
pub fn optimize(opts: &OptimizerConfig, start: Option<&Configuration<f64>>) -> Result<MultiStart> {
    opts.validate()?;
    if let Some(s) = start {
        if s.len() != opts.n {
            return Err(Error::InvalidInput(format!(
                "resume configuration has {} points, expected {}",
                s.len(),
                opts.n
            )));
        }
    }
    let traces = (0..opts.restarts)
        .into_par_iter()
        .map(|r| {
            let mut rng = restart_rng(opts.seed, r);
            let cfg0 = match (r, start) {
                (0, Some(s)) => s.clone(),
                (0, None) => spiral_points(opts.n),
                _ => Configuration::random(opts.n, &mut rng),
            };
            run_from(cfg0, opts, r, &mut rng)
        })
        .collect::<Result<Vec<_>>>()?;
    let sign = match opts.objective {
        Objective::MinEnergy => 1.0,
        Objective::MaxQuotient => -1.0,
    };
    let mut best_index = 0;
    for (i, t) in traces.iter().enumerate() {
        if sign * t.final_value < sign * traces[best_index].final_value {
            best_index = i;
        }
    }
    Ok(MultiStart { best_index, traces })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KnEstimate {
    pub n: usize,
    pub k_value: f64,
    pub restarts: usize,
    /// Best minus worst restart `k`.
    pub spread: f64,
    /// Standard deviation of the restart `k` values.
    pub std_dev: f64,
    /// Restarts whose `k` is within 1e-6 of the best.
    pub agreeing: usize,
}

/// Best `k_value` over the restarts of a quotient maximization.
pub fn kn_estimate(n: usize, opts: &OptimizerConfig) -> Result<KnEstimate> {
    if !(2..=16).contains(&n) {
        return Err(Error::InvalidInput(format!("K_N estimates need 2 ≤ n ≤ 16, got {n}")));
    }
    let mut o = opts.clone();
    o.n = n;
    o.objective = Objective::MaxQuotient;
    let run = optimize(&o, None)?;
    let bound = log_quotient_bound(n);
    let ks: Vec<f64> = run.finals().iter().map(|lq| (lq - bound).exp()).collect();
    let best = ks.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let worst = ks.iter().copied().fold(f64::INFINITY, f64::min);
    let mean = ks.iter().sum::<f64>() / ks.len() as f64;
    let var = ks.iter().map(|k| (k - mean).powi(2)).sum::<f64>() / ks.len() as f64;
    Ok(KnEstimate {
        n,
        k_value: best,
        restarts: ks.len(),
        spread: best - worst,
        std_dev: var.sqrt(),
        agreeing: ks.iter().filter(|&&k| best - k <= 1e-6).count(),
    })
}

/// Energy ceiling from the measured condition number:
/// `E ≤ κN² - N log(½√(N(N+1))) + N log μ_max`, which holds for every `N`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Thmain1Report {
    pub n: usize,
    pub energy: f64,
    pub log_mu_max: f64,
    pub ceiling: f64,
    /// `ceiling - energy`.
    pub slack: f64,
    /// Residual of the exact energy–condition identity.
    pub identity_residual: f64,
    /// `½ log ∫ + κN`, nonnegative by Jensen.
    pub jensen_slack: f64,
    pub holds: bool,
}

pub fn thmain1_check(cfg: &Configuration<f64>, log_mu_max: f64) -> Result<Thmain1Report> {
    let n = cfg.len();
    let energy = log_energy(cfg)?;
    let ceiling = energy_ceiling_from_mu(n, log_mu_max);
    let jensen_slack = 0.5 * sphere_integral(cfg).log() + KAPPA * n as f64;
    Ok(Thmain1Report {
        n,
        energy,
        log_mu_max,
        ceiling,
        slack: ceiling - energy,
        identity_residual: energy_condition_identity_residual(cfg)?,
        jensen_slack,
        holds: energy <= ceiling + 1e-8,
    })
}

/// Random start used by restarts `≥ 1`; exposed for tests and resumption.
pub fn random_start(n: usize, seed: u64, restart: usize) -> Configuration<f64> {
    let mut rng = restart_rng(seed, restart);
    Configuration::random(n, &mut rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::condition::mu_norm_max;
    use crate::inequalities::{k2, k3, k4};

    fn assert_monotone(trace: &OptimizerTrace, maximize: bool) {
        for w in trace.iterations.windows(2) {
            if maximize {
                assert!(w[1].objective >= w[0].objective);
            } else {
                assert!(w[1].objective <= w[0].objective);
            }
        }
    }

    #[test]
    fn spiral_examples() {
        assert_eq!(spiral_points(1).len(), 1);
        let two = spiral_points(2);
        assert!(two.min_distance().unwrap().2 >= 1.9);
        for n in [3, 10, 100, 500] {
            let cfg = spiral_points(n);
            let (_, _, d) = cfg.min_distance().unwrap();
            assert!(d >= 1.0 / (n as f64).sqrt(), "n={n} d={d}");
            assert!(cfg.points().iter().all(|p| p.c < 1.0 - 1e-3));
        }
    }

    #[test]
    fn energy_small_n() {
        let mut opts = OptimizerConfig::new(2, Objective::MinEnergy);
        let t = minimize_energy(random_start(2, 5, 1), &opts).unwrap();
        assert!((t.final_value + 2.0 * 2f64.ln()).abs() < 1e-8);
        assert_monotone(&t, false);
        opts.n = 4;
        let t = minimize_energy(random_start(4, 5, 1), &opts).unwrap();
        assert!((t.final_value + 6.0 * (8.0f64 / 3.0).ln()).abs() < 1e-7);
        assert!(t.final_value <= t.iterations[0].objective);
    }

    #[test]
    fn quotient_small_n() {
        for (n, k) in [(2, k2()), (3, k3()), (4, k4())] {
            let opts = OptimizerConfig::new(n, Objective::MaxQuotient);
            let t = maximize_quotient(random_start(n, 9, 1), &opts).unwrap();
            assert_monotone(&t, true);
            assert!((t.k_value().unwrap() - k).abs() < 1e-6, "n={n} k={:?}", t.k_value());
        }
    }

    #[test]
    fn multistart_is_deterministic() {
        let mut opts = OptimizerConfig::new(5, Objective::MinEnergy);
        opts.restarts = 3;
        opts.seed = 11;
        let a = optimize(&opts, None).unwrap();
        let b = optimize(&opts, None).unwrap();
        assert_eq!(a.best_index, b.best_index);
        assert_eq!(a.finals(), b.finals());
    }

    #[test]
    fn kn_range_is_enforced() {
        let opts = OptimizerConfig::new(2, Objective::MaxQuotient);
        assert!(kn_estimate(1, &opts).is_err());
        assert!(kn_estimate(17, &opts).is_err());
    }

    #[test]
    fn thmain1_examples() {
        let x = SpherePoint::new(1.0, 0.0, 0.0).unwrap();
        let y = SpherePoint::new(-1.0, 0.0, 0.0).unwrap();
        let cfg = Configuration::new(vec![x, y]).unwrap();
        let r = thmain1_check(&cfg, 0.0).unwrap();
        assert!(r.holds);
        assert!((r.slack - 0.2082).abs() < 1e-3, "{}", r.slack);
        assert!(r.jensen_slack >= 0.0 && r.identity_residual < 1e-12);

        let opts = OptimizerConfig::new(4, Objective::MinEnergy);
        let t = minimize_energy(spiral_points(4), &opts).unwrap();
        let mu = mu_norm_max(&t.final_config);
        assert!(thmain1_check(&t.final_config, mu.mu_max.log()).unwrap().holds);
    }

    #[test]
    fn invalid_configs_are_rejected() {
        let mut o = OptimizerConfig::new(1, Objective::MinEnergy);
        assert!(optimize(&o, None).is_err());
        o.n = 3;
        o.restarts = 0;
        assert!(optimize(&o, None).is_err());
    }
}
