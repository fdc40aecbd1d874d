// Copyright The fekete Authors
// SPDX-License-Identifier: Apache-2.0

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Logarithmic energy, Bombieri-Weyl norm quotients and condition numbers of
/// points on the sphere.
#[derive(Debug, Parser)]
#[command(name = "fekete", version, propagate_version = true)]
#[command(after_help = "Environment:\n  FEKETE_THREADS  maximum number of worker threads")]
pub struct Cli {
    /// Defaults file with `key = value` lines; flags override it.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Logarithmic energy of a point set, next to the minimal-energy expansion.
    Energy(EnergyArgs),
    /// Condition numbers of a polynomial's roots or of a point set.
    Mu(MuArgs),
    /// Randomized checks of the identities and inequalities.
    Verify(VerifyArgs),
    /// Minimize energy or maximize the norm quotient.
    Optimize(OptimizeArgs),
    /// Estimate the sharp quotient constants K_N.
    Kn(KnArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct EnergyArgs {
    /// Point-set file: `re im` or `x y z` per line.
    pub points: PathBuf,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RouteArg {
    #[value(alias = "coefficient")]
    Coeff,
    Spherical,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Precision {
    Double,
    #[value(alias = "dd")]
    DoubleDouble,
}

#[derive(Debug, Args)]
pub struct MuArgs {
    /// Polynomial file: `re im` per coefficient, ascending, or JSON.
    #[arg(long, value_name = "FILE", conflicts_with = "points", required_unless_present = "points")]
    pub poly: Option<PathBuf>,
    /// Point-set file.
    #[arg(long, value_name = "FILE")]
    pub points: Option<PathBuf>,
    /// Defaults to `coeff` for polynomials and `spherical` for points.
    #[arg(long, value_enum)]
    pub route: Option<RouteArg>,
    /// Arithmetic for the coefficient route.
    #[arg(long, value_enum)]
    pub precision: Option<Precision>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    All,
    Identities,
    Inequalities,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub suite: Option<SuiteArg>,
    /// Trials per check.
    #[arg(long)]
    pub trials: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Largest configuration size drawn.
    #[arg(long)]
    pub n_max: Option<usize>,
    /// Write the CSV summary here instead of stderr.
    #[arg(long, value_name = "FILE")]
    pub summary: Option<PathBuf>,
    /// Replace every check tolerance (harness self-test).
    #[arg(long, hide = true)]
    pub inject_tolerance: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ObjectiveArg {
    /// Minimal logarithmic energy.
    #[value(alias = "energy")]
    E,
    /// Maximal norm quotient.
    #[value(alias = "quotient")]
    Q,
}

#[derive(Debug, Args)]
pub struct OptimizeArgs {
    /// Number of points; taken from `--resume` when omitted.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, value_enum)]
    pub objective: Option<ObjectiveArg>,
    #[arg(long)]
    pub restarts: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub max_iters: Option<usize>,
    #[arg(long)]
    pub grad_tol: Option<f64>,
    /// Final configuration, in the point-set format.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
    /// Per-iteration JSON lines for every restart.
    #[arg(long, value_name = "FILE")]
    pub trace: Option<PathBuf>,
    /// Start restart 0 from this point set.
    #[arg(long, value_name = "FILE")]
    pub resume: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct KnArgs {
    #[arg(long)]
    pub n_max: Option<usize>,
    #[arg(long)]
    pub n_min: Option<usize>,
    #[arg(long)]
    pub restarts: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Plot K_N against N.
    #[arg(long, value_name = "FILE")]
    pub svg: Option<PathBuf>,
}
