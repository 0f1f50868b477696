//! Flat key-value run configuration.
//!
//! One `key = value` pair per line, grouped by dotted prefixes
//! (`section.key = value`); `#` starts a full-line comment; blank lines are
//! ignored.  No nesting, no quoting — values run to the end of the line, so
//! paths and number lists need no escaping.

use std::fs;
use std::path::Path;

use super::ConfigError;
use crate::core::Vec3;

/// Parsed configuration: the pairs in file order (for verbatim echo into
/// reports) plus typed lookup helpers.
#[derive(Debug, Clone, Default)]
pub struct KeyValues {
    pairs: Vec<(String, String)>,
}

impl KeyValues {
    /// Parses configuration text.
    ///
    /// # Errors
    ///
    /// [`ConfigError::Syntax`] for a non-comment line without `=`, and
    /// [`ConfigError::DuplicateKey`] when a key repeats.
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut pairs: Vec<(String, String)> = Vec::new();
        for (index, line) in text.lines().enumerate() {
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let Some((key, value)) = trimmed.split_once('=') else {
                return Err(ConfigError::Syntax { line: index + 1, content: trimmed.to_string() });
            };
            let key = key.trim();
            let value = value.trim();
            if key.is_empty() {
                return Err(ConfigError::Syntax { line: index + 1, content: trimmed.to_string() });
            }
            if pairs.iter().any(|(k, _)| k == key) {
                return Err(ConfigError::DuplicateKey(key.to_string()));
            }
            pairs.push((key.to_string(), value.to_string()));
        }
        Ok(KeyValues { pairs })
    }

    /// Reads and parses a configuration file.
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text)
    }

    /// All pairs in file order.
    pub fn pairs(&self) -> &[(String, String)] {
        &self.pairs
    }

    /// Appends a pair programmatically, under the same no-duplicates rule as
    /// parsing.
    pub fn push(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        if self.get(key).is_some() {
            return Err(ConfigError::DuplicateKey(key.to_string()));
        }
        self.pairs.push((key.to_string(), value.to_string()));
        Ok(())
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.pairs.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    /// The value for `key`, or [`ConfigError::MissingKey`] naming it.
    pub fn require(&self, key: &str) -> Result<&str, ConfigError> {
        self.get(key).ok_or_else(|| ConfigError::MissingKey(key.to_string()))
    }

    fn bad(&self, key: &str, expected: &'static str) -> ConfigError {
        ConfigError::BadValue {
            key: key.to_string(),
            value: self.get(key).unwrap_or_default().to_string(),
            expected,
        }
    }

    pub fn require_f64(&self, key: &str) -> Result<f64, ConfigError> {
        self.require(key)?.parse().map_err(|_| self.bad(key, "a real number"))
    }

    pub fn require_usize(&self, key: &str) -> Result<usize, ConfigError> {
        self.require(key)?.parse().map_err(|_| self.bad(key, "a non-negative integer"))
    }

    /// Optional real value with a default.
    pub fn f64_or(&self, key: &str, default: f64) -> Result<f64, ConfigError> {
        match self.get(key) {
            None => Ok(default),
            Some(raw) => raw.parse().map_err(|_| self.bad(key, "a real number")),
        }
    }

    /// Optional whitespace-separated list of reals (empty when absent).
    pub fn f64_list(&self, key: &str) -> Result<Vec<f64>, ConfigError> {
        let Some(raw) = self.get(key) else {
            return Ok(Vec::new());
        };
        raw.split_whitespace()
            .map(|tok| tok.parse().map_err(|_| self.bad(key, "whitespace-separated reals")))
            .collect()
    }

    /// A vector value written as three whitespace-separated reals.
    pub fn require_vec3(&self, key: &str) -> Result<Vec3, ConfigError> {
        let parts = self.f64_list(key)?;
        if self.get(key).is_none() {
            return Err(ConfigError::MissingKey(key.to_string()));
        }
        if parts.len() != 3 {
            return Err(self.bad(key, "three whitespace-separated reals"));
        }
        Ok(Vec3::new(parts[0], parts[1], parts[2]))
    }

    /// Pairs in a dotted section, with the prefix stripped: `section("assert")`
    /// yields `("max_error", "1e-3")` for a key `assert.max_error`.
    pub fn section<'a>(&'a self, prefix: &'a str) -> impl Iterator<Item = (&'a str, &'a str)> {
        self.pairs.iter().filter_map(move |(k, v)| {
            k.strip_prefix(prefix)
                .and_then(|rest| rest.strip_prefix('.'))
                .map(|suffix| (suffix, v.as_str()))
        })
    }

    /// Rejects keys that are neither in `known` nor under one of the
    /// `open_sections` prefixes — a typo'd key must fail loudly rather than
    /// silently falling back to a default.
    pub fn ensure_known(
        &self,
        known: &[&str],
        open_sections: &[&str],
    ) -> Result<(), ConfigError> {
        for (key, _) in &self.pairs {
            let listed = known.contains(&key.as_str());
            let open = open_sections
                .iter()
                .any(|prefix| key.strip_prefix(prefix).is_some_and(|r| r.starts_with('.')));
            if !(listed || open) {
                return Err(ConfigError::UnknownKey(key.clone()));
            }
        }
        Ok(())
    }
}

// --- tests -------------------------------------------------------------------
