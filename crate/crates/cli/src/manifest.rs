// Copyright The fekete Authors
// SPDX-License-Identifier: Apache-2.0

use std::path::Path;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Serialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

/// Provenance of a run, embedded in everything the CLI writes.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub arguments: Vec<String>,
    pub seed: Option<u64>,
    pub tool_version: String,
    pub threads: usize,
    pub started_at: String,
    pub finished_at: Option<String>,
    pub inputs: Vec<InputDigest>,
}

fn now() -> String {
    chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Millis, true)
}

impl RunManifest {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.to_string(),
            arguments: std::env::args().skip(1).collect(),
            seed: None,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            threads: rayon::current_num_threads(),
            started_at: now(),
            finished_at: None,
            inputs: Vec::new(),
        }
    }

    /// Reads an input file, recording its digest.
    pub fn read_input(&mut self, path: &Path) -> CliResult<String> {
        let bytes = std::fs::read(path).map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
        self.inputs.push(InputDigest {
            path: path.display().to_string(),
            sha256: format!("{:x}", Sha256::digest(&bytes)),
        });
        String::from_utf8(bytes).map_err(|_| CliError::Input(format!("{} is not UTF-8", path.display())))
    }

    pub fn finish(&mut self) -> serde_json::Value {
        self.finished_at = Some(now());
        serde_json::to_value(&*self).expect("manifest serializes")
    }
}
