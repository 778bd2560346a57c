//! Flat `key=value` configuration files.
//!
//! Keys are the long flag names without dashes prefix, e.g. `field=complex`
//! or `abs-tol=1e-9`. Blank lines and lines starting with `#` are skipped.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::path::Path;
use std::str::FromStr;

pub const KEYS: &[&str] = &[
    "format", "output", "abs-tol", "rel-tol", "field", "a", "t", "mc-samples", "suite", "n", "samples", "seed", "p",
    "range", "emit", "special", "root", "n-min", "n-max", "grid", "multistarts",
];

#[derive(Debug, Default, Clone)]
pub struct Config {
    values: BTreeMap<String, String>,
}

impl Config {
    pub fn load(path: &Path) -> Result<Config, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
        Config::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Config, String> {
        let mut values = BTreeMap::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| format!("config line {}: expected key=value", i + 1))?;
            let k = k.trim();
            if !KEYS.contains(&k) {
                return Err(format!("config line {}: unknown key '{k}'", i + 1));
            }
            values.insert(k.to_string(), v.trim().to_string());
        }
        Ok(Config { values })
    }

    /// `flag` if given (clap already folded in the environment), else the
    /// config value, else `default`.
    pub fn pick<T>(&self, flag: Option<T>, key: &str, default: T) -> Result<T, String>
    where
        T: FromStr,
        T::Err: Display,
    {
        Ok(self.pick_opt(flag, key)?.unwrap_or(default))
    }

    pub fn pick_opt<T>(&self, flag: Option<T>, key: &str) -> Result<Option<T>, String>
    where
        T: FromStr,
        T::Err: Display,
    {
        if flag.is_some() {
            return Ok(flag);
        }
        match self.values.get(key) {
            Some(v) => v.parse().map(Some).map_err(|e| format!("config key '{key}': {e}")),
            None => Ok(None),
        }
    }
}
