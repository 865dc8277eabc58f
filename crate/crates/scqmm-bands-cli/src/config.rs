//! Flat key=value config files with `#` comments. Command-line flags always
//! override file values.

use anyhow::{bail, Context, Result};
use std::collections::BTreeMap;
use std::path::Path;

pub const KNOWN_KEYS: &[&str] = &[
    "beta", "gamma", "k_points", "tol", "oracle_n", "out", "format",
];

#[derive(Debug, Clone, Default)]
pub struct ConfigFile {
    values: BTreeMap<String, String>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut values = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                bail!("config line {}: expected key=value, got {raw:?}", lineno + 1);
            };
            let key = key.trim();
            if !KNOWN_KEYS.contains(&key) {
                bail!(
                    "config line {}: unknown key {key:?} (known: {})",
                    lineno + 1,
                    KNOWN_KEYS.join(", ")
                );
            }
            values.insert(key.to_string(), value.trim().to_string());
        }
        Ok(Self { values })
    }

    pub fn get_f64(&self, key: &str) -> Result<Option<f64>> {
        match self.values.get(key) {
            None => Ok(None),
            Some(v) => Ok(Some(
                v.parse()
                    .with_context(|| format!("config key {key}: bad number {v:?}"))?,
            )),
        }
    }

    pub fn get_usize(&self, key: &str) -> Result<Option<usize>> {
        match self.values.get(key) {
            None => Ok(None),
            Some(v) => Ok(Some(
                v.parse()
                    .with_context(|| format!("config key {key}: bad integer {v:?}"))?,
            )),
        }
    }

    pub fn get_str(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_values_and_comments() {
        let cfg = ConfigFile::parse(
            "# a scan\nbeta = 0.1\ngamma=1 # charging regime\n\nk_points = 401\nformat=json\n",
        )
        .unwrap();
        assert_eq!(cfg.get_f64("beta").unwrap(), Some(0.1));
        assert_eq!(cfg.get_f64("gamma").unwrap(), Some(1.0));
        assert_eq!(cfg.get_usize("k_points").unwrap(), Some(401));
        assert_eq!(cfg.get_str("format"), Some("json"));
        assert_eq!(cfg.get_f64("tol").unwrap(), None);
    }

    #[test]
    fn rejects_unknown_keys_and_garbage() {
        assert!(ConfigFile::parse("betta = 0.1\n").is_err());
        assert!(ConfigFile::parse("just words\n").is_err());
        let cfg = ConfigFile::parse("beta = abc\n").unwrap();
        assert!(cfg.get_f64("beta").is_err());
    }
}
