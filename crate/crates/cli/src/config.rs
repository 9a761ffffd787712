//! Flat `key = value` configuration files.
//!
//! Blank lines and lines starting with `#` are ignored. Every key must be
//! read by the consumer; leftovers are reported as unknown.

use std::cell::RefCell;
use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;
use std::str::FromStr;

use anyhow::{Context, Result};
use relaxwave::Error;

#[derive(Debug, Default)]
pub struct Config {
    entries: BTreeMap<String, String>,
    used: RefCell<BTreeSet<String>>,
}

fn invalid(msg: String) -> anyhow::Error {
    Error::InvalidParameter(msg).into()
}

impl Config {
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| invalid(format!("line {}: expected `key = value`, got `{line}`", lineno + 1)))?;
            let key = k.trim().to_string();
            if key.is_empty() {
                return Err(invalid(format!("line {}: empty key", lineno + 1)));
            }
            if entries.insert(key.clone(), v.trim().to_string()).is_some() {
                return Err(invalid(format!("line {}: duplicate key `{key}`", lineno + 1)));
            }
        }
        Ok(Self { entries, used: RefCell::default() })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
        Self::parse(&text).with_context(|| format!("in config {}", path.display()))
    }

    pub fn raw(&self, key: &str) -> Option<&str> {
        self.used.borrow_mut().insert(key.to_string());
        self.entries.get(key).map(String::as_str)
    }

    pub fn get<T: FromStr>(&self, key: &str, default: T) -> Result<T> {
        match self.raw(key) {
            None => Ok(default),
            Some(v) => v.parse().map_err(|_| invalid(format!("`{key}`: cannot parse `{v}`"))),
        }
    }

    /// Comma-separated list; an empty value gives an empty list.
    pub fn list(&self, key: &str) -> Option<Vec<String>> {
        self.raw(key).map(|v| v.split(',').map(str::trim).filter(|s| !s.is_empty()).map(String::from).collect())
    }

    /// Fails on keys nobody asked for.
    pub fn finish(&self) -> Result<()> {
        let used = self.used.borrow();
        let unknown: Vec<&str> = self.entries.keys().filter(|k| !used.contains(*k)).map(String::as_str).collect();
        if unknown.is_empty() {
            Ok(())
        } else {
            Err(invalid(format!("unknown config keys: {}", unknown.join(", "))))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_tracks_keys() {
        let c = Config::parse("# medium\ntau = 2\n\nv_f=3.5\nalphas = critical, 0.1\n").unwrap();
        assert_eq!(c.get("tau", 1.0).unwrap(), 2.0);
        assert_eq!(c.get("v_e", 1.0).unwrap(), 1.0);
        assert!(c.finish().is_err());
        assert_eq!(c.list("alphas").unwrap(), vec!["critical", "0.1"]);
        assert_eq!(c.get("v_f", 0.0).unwrap(), 3.5);
        c.finish().unwrap();
    }

    #[test]
    fn rejects_garbage() {
        assert!(Config::parse("tau 2").is_err());
        assert!(Config::parse("a = 1\na = 2").is_err());
        let c = Config::parse("n = ten").unwrap();
        assert!(c.get::<usize>("n", 3).is_err());
        assert!(Config::parse("alphas =").unwrap().list("alphas").unwrap().is_empty());
    }
}
