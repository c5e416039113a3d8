//! Flat `key=value` settings merged from a config file and command-line flags.
//!
//! Keys are the long flag names without the leading dashes. Flags win over the file.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use crate::error::{CliError, Result};

/// Every key accepted in a config file.
pub const KEYS: &[&str] = &[
    "sphere",
    "substrate",
    "ambient-eps",
    "radius-nm",
    "z-nm",
    "z-over-r",
    "quad-tol",
    "omega-max",
    "tail-correction",
    "max-subdivisions",
    "normalization",
    "force-method",
    "coupling",
    "out",
    "variable",
    "from",
    "to",
    "points",
    "spacing",
    "omega-min-eV",
    "omega-max-eV",
    "omega-points",
];

/// Environment variable naming a default config file.
pub const CONFIG_ENV: &str = "CASIMIR_CONFIG";

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Settings {
    values: BTreeMap<String, String>,
}

impl Settings {
    pub fn parse_file_contents(text: &str) -> Result<Self> {
        let mut values = BTreeMap::new();
        for (index, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::invalid(format!("line {}", index + 1), "expected key=value")
            })?;
            let key = key.trim();
            if !KEYS.contains(&key) {
                return Err(CliError::invalid(key, "unknown setting"));
            }
            values.insert(key.to_owned(), value.trim().to_owned());
        }
        Ok(Self { values })
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| {
            CliError::invalid("config", format!("cannot read {}: {e}", path.display()))
        })?;
        Self::parse_file_contents(&text)
    }

    pub fn set(&mut self, key: &str, value: impl Into<String>) {
        debug_assert!(KEYS.contains(&key), "unregistered key {key}");
        self.values.insert(key.to_owned(), value.into());
    }

    /// Overlays `other` on top of `self`.
    pub fn merge(mut self, other: Settings) -> Self {
        self.values.extend(other.values);
        self
    }

    pub fn raw(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    pub fn contains(&self, key: &str) -> bool {
        self.values.contains_key(key)
    }

    pub fn get<T: FromStr>(&self, key: &'static str) -> Result<Option<T>> {
        self.raw(key)
            .map(|text| {
                text.parse::<T>()
                    .map_err(|_| CliError::invalid(key, format!("cannot parse `{text}`")))
            })
            .transpose()
    }

    pub fn require<T: FromStr>(&self, key: &'static str) -> Result<T> {
        self.get(key)?.ok_or(CliError::Missing(key))
    }

    /// Finite float, optionally defaulted.
    pub fn float(&self, key: &'static str) -> Result<Option<f64>> {
        match self.get::<f64>(key)? {
            Some(v) if !v.is_finite() => Err(CliError::invalid(key, "must be finite")),
            other => Ok(other),
        }
    }

    pub fn positive(&self, key: &'static str) -> Result<Option<f64>> {
        match self.float(key)? {
            Some(v) if v <= 0.0 => Err(CliError::invalid(key, format!("must be > 0, got {v}"))),
            other => Ok(other),
        }
    }

    pub fn non_negative(&self, key: &'static str) -> Result<Option<f64>> {
        match self.float(key)? {
            Some(v) if v < 0.0 => Err(CliError::invalid(key, format!("must be >= 0, got {v}"))),
            other => Ok(other),
        }
    }
}
