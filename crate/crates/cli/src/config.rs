//! Flat `key = value` configuration files.
//!
//! Blank lines and lines starting with `#` are ignored. Keys are unique; every key in the
//! file must be consumed by the command, so that typos surface as errors.

use std::cell::RefCell;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

pub type ConfigResult<T> = Result<T, ConfigError>;

fn err<T>(msg: impl Into<String>) -> ConfigResult<T> {
    Err(ConfigError(msg.into()))
}

#[derive(Debug, Default)]
pub struct Config {
    entries: BTreeMap<String, (usize, String)>,
    used: RefCell<BTreeSet<String>>,
}

impl Config {
    pub fn parse(text: &str) -> ConfigResult<Self> {
        let mut entries = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((k, v)) = line.split_once('=') else {
                return err(format!("line {}: expected key = value", i + 1));
            };
            let key = k.trim();
            if key.is_empty() || !key.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return err(format!("line {}: invalid key {key:?}", i + 1));
            }
            if entries.insert(key.to_string(), (i + 1, v.trim().to_string())).is_some() {
                return err(format!("line {}: duplicate key {key}", i + 1));
            }
        }
        Ok(Config { entries, used: RefCell::default() })
    }

    pub fn load(path: &str) -> ConfigResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError(format!("{path}: {e}")))?;
        Self::parse(&text)
    }

    fn raw(&self, key: &str) -> Option<&(usize, String)> {
        let found = self.entries.get(key);
        if found.is_some() {
            self.used.borrow_mut().insert(key.to_string());
        }
        found
    }

    pub fn str_or<'a>(&'a self, key: &str, default: &'a str) -> &'a str {
        self.raw(key).map_or(default, |(_, v)| v.as_str())
    }

    pub fn get<T: FromStr>(&self, key: &str) -> ConfigResult<Option<T>> {
        match self.raw(key) {
            None => Ok(None),
            Some((line, v)) => v
                .parse()
                .map(Some)
                .map_err(|_| ConfigError(format!("line {line}: cannot parse {key} = {v:?}"))),
        }
    }

    pub fn or<T: FromStr>(&self, key: &str, default: T) -> ConfigResult<T> {
        Ok(self.get(key)?.unwrap_or(default))
    }

    /// Finite float, optionally required to be positive.
    pub fn float(&self, key: &str, default: f64, positive: bool) -> ConfigResult<f64> {
        let v: f64 = self.or(key, default)?;
        if !v.is_finite() || (positive && v <= 0.0) {
            let what = if positive { "a positive finite number" } else { "finite" };
            return err(format!("{key} must be {what}, got {v}"));
        }
        Ok(v)
    }

    /// Comma-separated floats.
    pub fn floats(&self, key: &str) -> ConfigResult<Option<Vec<f64>>> {
        let Some((line, v)) = self.raw(key) else {
            return Ok(None);
        };
        if v.is_empty() {
            return Ok(Some(Vec::new()));
        }
        v.split(',')
            .map(|s| {
                s.trim()
                    .parse::<f64>()
                    .ok()
                    .filter(|x| x.is_finite())
                    .ok_or_else(|| ConfigError(format!("line {line}: {key}: bad number {:?}", s.trim())))
            })
            .collect::<ConfigResult<Vec<_>>>()
            .map(Some)
    }

    pub fn vec3(&self, key: &str, default: Option<[f64; 3]>) -> ConfigResult<[f64; 3]> {
        match self.floats(key)? {
            Some(v) if v.len() == 3 => Ok([v[0], v[1], v[2]]),
            Some(v) => err(format!("{key} needs three components, got {}", v.len())),
            None => default.map_or_else(|| err(format!("missing required key {key}")), Ok),
        }
    }

    pub fn finish(&self) -> ConfigResult<()> {
        let used = self.used.borrow();
        let unknown: Vec<&str> = self.entries.keys().filter(|k| !used.contains(*k)).map(String::as_str).collect();
        if unknown.is_empty() {
            Ok(())
        } else {
            err(format!("unknown keys: {}", unknown.join(", ")))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_and_whitespace() {
        let c = Config::parse("# header\n\n a = 1.5 \nname=coulomb\nx = 1, 2,3\n").unwrap();
        assert_eq!(c.float("a", 0.0, true).unwrap(), 1.5);
        assert_eq!(c.str_or("name", "free"), "coulomb");
        assert_eq!(c.vec3("x", None).unwrap(), [1.0, 2.0, 3.0]);
        assert!(c.finish().is_ok());
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(Config::parse("a 1").is_err());
        assert!(Config::parse("a = 1\na = 2").is_err());
        assert!(Config::parse("a-b = 1").is_err());
        let c = Config::parse("a = x\nb = -1\nv = 1,2").unwrap();
        assert!(c.float("a", 0.0, false).is_err());
        assert!(c.float("b", 0.0, true).is_err());
        assert!(c.vec3("v", None).is_err());
        assert!(c.vec3("w", None).is_err());
    }

    #[test]
    fn unused_keys_are_reported() {
        let c = Config::parse("a = 1\ntypo = 2").unwrap();
        c.float("a", 0.0, false).unwrap();
        assert_eq!(c.finish().unwrap_err().0, "unknown keys: typo");
    }

    #[test]
    fn defaults_apply_when_absent() {
        let c = Config::parse("").unwrap();
        assert_eq!(c.float("m", 1.0, true).unwrap(), 1.0);
        assert_eq!(c.vec3("n", Some([0.0, 0.0, 1.0])).unwrap(), [0.0, 0.0, 1.0]);
        assert_eq!(c.or::<usize>("count", 7).unwrap(), 7);
    }
}
