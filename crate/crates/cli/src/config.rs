// Copyright The fekete Authors
// SPDX-License-Identifier: Apache-2.0

//! Defaults file: `key = value` lines, `#` comments, values unquoted or in
//! double quotes. Command-line flags take precedence.

use std::collections::BTreeMap;
use std::str::FromStr;

use crate::error::{CliError, CliResult};

const KEYS: &[&str] = &[
    "seed",
    "restarts",
    "trials",
    "n_max",
    "n_min",
    "suite",
    "route",
    "precision",
    "objective",
    "max_iters",
    "grad_tol",
    "format",
];

#[derive(Debug, Default, Clone)]
pub struct Defaults {
    values: BTreeMap<String, String>,
}

impl Defaults {
    pub fn parse(text: &str) -> CliResult<Self> {
        let mut values = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = |m: String| CliError::Input(format!("config line {}: {m}", i + 1));
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| bad(format!("expected `key = value`, got `{line}`")))?;
            let key = key.trim().replace('-', "_");
            if !KEYS.contains(&key.as_str()) {
                return Err(bad(format!("unknown key `{key}`")));
            }
            let value = value.trim().trim_matches('"').to_string();
            values.insert(key, value);
        }
        Ok(Self { values })
    }

    pub fn load(path: &std::path::Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn raw(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    /// `flag`, else the config value, else `default`.
    pub fn pick<T: FromStr>(&self, flag: Option<T>, key: &str, default: T) -> CliResult<T> {
        if let Some(v) = flag {
            return Ok(v);
        }
        match self.raw(key) {
            Some(s) => s
                .parse()
                .map_err(|_| CliError::Input(format!("config value `{s}` is not valid for `{key}`"))),
            None => Ok(default),
        }
    }

    /// Like [`Defaults::pick`] for clap value enums.
    pub fn pick_enum<T: clap::ValueEnum>(&self, flag: Option<T>, key: &str, default: T) -> CliResult<T> {
        if let Some(v) = flag {
            return Ok(v);
        }
        match self.raw(key) {
            Some(s) => T::from_str(s, true).map_err(|e| CliError::Input(format!("config `{key}`: {e}"))),
            None => Ok(default),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_prefers_flags() {
        let d = Defaults::parse("# defaults\nseed = 7\nrestarts=3  # more\nobjective = \"q\"\n").unwrap();
        assert_eq!(d.pick(None, "seed", 0u64).unwrap(), 7);
        assert_eq!(d.pick(Some(9u64), "seed", 0).unwrap(), 9);
        assert_eq!(d.pick(None, "trials", 100usize).unwrap(), 100);
        assert_eq!(d.raw("objective"), Some("q"));
    }

    #[test]
    fn rejects_unknown_keys_and_bad_values() {
        assert!(Defaults::parse("colour = red\n").is_err());
        assert!(Defaults::parse("seed 7\n").is_err());
        let d = Defaults::parse("seed = seven\n").unwrap();
        assert!(d.pick(None, "seed", 0u64).is_err());
    }
}
