//! Flat `key=value` config files and the moduli-set file format.

use std::collections::BTreeMap;
use std::str::FromStr;

use crate::qfield::OKElt;

/// Keys accepted in a config file; they mirror the long flags.
pub const KEYS: [&str; 17] = [
    "d",
    "family",
    "k",
    "q",
    "n",
    "epsilon",
    "delta",
    "tol",
    "seed",
    "max-iter",
    "z-samples",
    "format",
    "dyadic",
    "s-file",
    "theorem",
    "out",
    "suite",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

/// Parsed config file; lookups consume keys so leftovers can be reported.
#[derive(Debug, Default)]
pub struct ConfigFile {
    entries: BTreeMap<String, String>,
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self, UsageError> {
        let mut entries = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| UsageError(format!("config line {}: expected key=value, got '{line}'", i + 1)))?;
            let key = key.trim().replace('_', "-");
            if !KEYS.contains(&key.as_str()) {
                return Err(UsageError(format!("config line {}: unknown key '{key}'", i + 1)));
            }
            entries.insert(key, value.trim().to_string());
        }
        Ok(ConfigFile { entries })
    }

    pub fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>, UsageError> {
        match self.entries.get(key) {
            None => Ok(None),
            Some(v) => v.parse().map(Some).map_err(|_| UsageError(format!("config key '{key}': cannot parse '{v}'"))),
        }
    }

    pub fn get_list<T: FromStr>(&self, key: &str) -> Result<Option<Vec<T>>, UsageError> {
        match self.entries.get(key) {
            None => Ok(None),
            Some(v) => {
                parse_list(v).map(Some).map_err(|_| UsageError(format!("config key '{key}': cannot parse list '{v}'")))
            }
        }
    }

    pub fn get_bool(&self, key: &str) -> Result<Option<bool>, UsageError> {
        match self.entries.get(key).map(|s| s.as_str()) {
            None => Ok(None),
            Some("true" | "1" | "yes") => Ok(Some(true)),
            Some("false" | "0" | "no") => Ok(Some(false)),
            Some(v) => Err(UsageError(format!("config key '{key}': expected a boolean, got '{v}'"))),
        }
    }
}

fn parse_list<T: FromStr>(s: &str) -> Result<Vec<T>, ()> {
    s.split(',').map(|x| x.trim().parse().map_err(|_| ())).collect()
}

/// Moduli file: one `a b` pair per line (coordinates in the basis `1, ω`),
/// `#` starts a comment.
pub fn parse_moduli(text: &str) -> Result<Vec<OKElt>, UsageError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let parts: Vec<&str> = line.split_whitespace().collect();
        let bad = || UsageError(format!("moduli file line {}: expected two integers 'a b', got '{line}'", i + 1));
        if parts.len() != 2 {
            return Err(bad());
        }
        let a: i64 = parts[0].parse().map_err(|_| bad())?;
        let b: i64 = parts[1].parse().map_err(|_| bad())?;
        out.push(OKElt::new(a, b));
    }
    Ok(out)
}
