//! Flat `key=value` configuration.

use std::collections::BTreeMap;
use std::path::Path;

use charsum_core::bounds::BoundProfile;
use charsum_core::multfunc::Epsilon;

use crate::{LabError, Result};

/// Keys are normalized to lowercase with `-` read as `_`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Config {
    values: BTreeMap<String, String>,
}

fn normalize(key: &str) -> String {
    key.trim().to_ascii_lowercase().replace('-', "_")
}

impl Config {
    pub fn new() -> Self {
        Self::default()
    }

    /// One `key = value` per line; `#` starts a comment.
    pub fn parse_str(text: &str) -> Result<Self> {
        let mut config = Config::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| LabError::Usage(format!("config line {}: expected key=value", lineno + 1)))?;
            config.set(k, v.trim());
        }
        Ok(config)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| LabError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse_str(&text)
    }

    pub fn set(&mut self, key: &str, value: &str) {
        self.values.insert(normalize(key), value.to_string());
    }

    /// Parses `key=value` and sets it.
    pub fn set_pair(&mut self, pair: &str) -> Result<()> {
        let (k, v) = pair
            .split_once('=')
            .ok_or_else(|| LabError::Usage(format!("`{pair}`: expected key=value")))?;
        self.set(k, v);
        Ok(())
    }

    /// Overrides every key of `self` with those of `other`.
    pub fn merge(&mut self, other: &Config) {
        for (k, v) in &other.values {
            self.values.insert(k.clone(), v.clone());
        }
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(&normalize(key)).map(String::as_str)
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.values.keys().map(String::as_str)
    }

    fn bad(key: &str, value: &str, what: &str) -> LabError {
        LabError::Usage(format!("{key} = `{value}`: expected {what}"))
    }

    /// Accepts integers and exact scientific forms like `1e4`.
    pub fn u64_or(&self, key: &str, default: u64) -> Result<u64> {
        match self.get(key) {
            None => Ok(default),
            Some(v) => parse_u64(v).ok_or_else(|| Self::bad(key, v, "a nonnegative integer")),
        }
    }

    pub fn f64_or(&self, key: &str, default: f64) -> Result<f64> {
        match self.get(key) {
            None => Ok(default),
            Some(v) => v
                .trim()
                .parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| Self::bad(key, v, "a finite number")),
        }
    }

    pub fn bool_or(&self, key: &str, default: bool) -> Result<bool> {
        match self.get(key).map(str::trim) {
            None => Ok(default),
            Some("true" | "1" | "yes") => Ok(true),
            Some("false" | "0" | "no") => Ok(false),
            Some(v) => Err(Self::bad(key, v, "true or false")),
        }
    }

    pub fn str_or<'a>(&'a self, key: &str, default: &'a str) -> &'a str {
        self.get(key).unwrap_or(default)
    }

    pub fn f64_list_or(&self, key: &str, default: &[f64]) -> Result<Vec<f64>> {
        match self.get(key) {
            None => Ok(default.to_vec()),
            Some(v) => v
                .split(',')
                .map(|t| t.trim().parse::<f64>().ok().filter(|x| x.is_finite()))
                .collect::<Option<Vec<_>>>()
                .filter(|l| !l.is_empty())
                .ok_or_else(|| Self::bad(key, v, "a comma-separated list of numbers")),
        }
    }

    pub fn eps_list_or(&self, key: &str, default: &str) -> Result<Vec<Epsilon>> {
        let text = self.get(key).unwrap_or(default);
        text.split(',').map(|t| Ok(t.parse::<Epsilon>()?)).collect()
    }

    /// The profile under `profile`, or `default` when unset.
    pub fn profile_or(&self, default: BoundProfile) -> Result<BoundProfile> {
        match self.get("profile") {
            None => Ok(default),
            Some(v) => Ok(v.parse()?),
        }
    }
}

fn parse_u64(v: &str) -> Option<u64> {
    let v = v.trim();
    if let Ok(n) = v.parse::<u64>() {
        return Some(n);
    }
    let x: f64 = v.parse().ok()?;
    (x >= 0.0 && x.fract() == 0.0 && x < 1.8e19).then_some(x as u64)
}
