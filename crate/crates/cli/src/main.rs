// Copyright The fekete Authors
// SPDX-License-Identifier: Apache-2.0

mod args;
mod commands;
mod config;
mod error;
mod manifest;
mod svg;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use commands::Status;
use config::Defaults;
use error::{CliError, CliResult};

/// Sizes the global pool from `FEKETE_THREADS`, if set.
fn init_threads() -> CliResult<()> {
    let Ok(raw) = std::env::var("FEKETE_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Input(format!("FEKETE_THREADS must be a positive integer, got `{raw}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Input(format!("cannot size the thread pool: {e}")))
}

fn run(cli: Cli) -> CliResult<Status> {
    init_threads()?;
    let defaults = match &cli.config {
        Some(path) => Defaults::load(path)?,
        None => Defaults::default(),
    };
    match &cli.command {
        Command::Energy(a) => commands::energy(a, &defaults),
        Command::Mu(a) => commands::mu(a, &defaults),
        Command::Verify(a) => commands::verify(a, &defaults),
        Command::Optimize(a) => commands::optimize_cmd(a, &defaults),
        Command::Kn(a) => commands::kn(a, &defaults),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(Status::Success) => ExitCode::SUCCESS,
        Ok(Status::CheckFailed) => ExitCode::from(1),
        Ok(Status::NoConvergence) => ExitCode::from(3),
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
