// Copyright The fekete Authors
// SPDX-License-Identifier: Apache-2.0

use std::process::ExitCode;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{path}: {source}")]
    File {
        path: String,
        #[source]
        source: fekete_core::Error,
    },
    #[error(transparent)]
    Core(#[from] fekete_core::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        let core = match self {
            CliError::File { source, .. } => Some(source),
            CliError::Core(e) => Some(e),
            _ => None,
        };
        match core {
            Some(fekete_core::Error::NoConvergence { .. }) => ExitCode::from(3),
            _ => ExitCode::from(2),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
