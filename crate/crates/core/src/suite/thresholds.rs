//! Frozen thresholds, read from a flat `key = value` file.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

pub const FROZEN_SOURCE: &str = include_str!("../../config/thresholds.conf");

/// Parses flat `key = value` text; `#` starts a comment.
pub fn parse_key_values(text: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::InvalidParameter(format!("line {}: expected key = value", lineno + 1)))?;
        let (k, v) = (k.trim(), v.trim());
        if k.is_empty() {
            return Err(Error::InvalidParameter(format!("line {}: empty key", lineno + 1)));
        }
        out.insert(k.to_string(), v.to_string());
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Thresholds {
    values: BTreeMap<String, f64>,
}

impl Thresholds {
    pub fn parse(text: &str) -> Result<Self> {
        let values = parse_key_values(text)?
            .into_iter()
            .map(|(k, v)| {
                v.parse::<f64>()
                    .map(|x| (k.clone(), x))
                    .map_err(|_| Error::InvalidParameter(format!("threshold {k}: not a number: {v}")))
            })
            .collect::<Result<_>>()?;
        Ok(Self { values })
    }

    pub fn frozen() -> Self {
        Self::parse(FROZEN_SOURCE).expect("bundled threshold file parses")
    }

    pub fn from_map(values: BTreeMap<String, f64>) -> Self {
        Self { values }
    }

    pub fn get(&self, key: &str) -> Result<f64> {
        self.values
            .get(key)
            .copied()
            .ok_or_else(|| Error::InvalidParameter(format!("unknown threshold {key}")))
    }

    pub fn as_map(&self) -> &BTreeMap<String, f64> {
        &self.values
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frozen_file_has_slope_thresholds() {
        let t = Thresholds::frozen();
        assert_eq!(t.get("slope_pass").unwrap(), 0.05);
        assert_eq!(t.get("slope_fail").unwrap(), 0.1);
        assert!(t.get("nonexistent").is_err());
    }

    #[test]
    fn comments_and_blank_lines() {
        let kv = parse_key_values("# c\n\n a = 1 # trailing\nb=x\n").unwrap();
        assert_eq!(kv.len(), 2);
        assert_eq!(kv["a"], "1");
        assert!(parse_key_values("novalue\n").is_err());
        assert!(Thresholds::parse("a = x").is_err());
    }
}
