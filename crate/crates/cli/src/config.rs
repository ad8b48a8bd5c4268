//! Key-value config files and flag/file merging.
//!
//! A config file holds `key = value` lines (`#` comments allowed) with
//! keys named exactly like the long flags. Flags win on conflict; keys a
//! command does not know are rejected.

use crate::CliError;
use std::collections::BTreeMap;
use std::path::Path;

#[derive(Debug, Default, Clone)]
pub struct ConfigFile {
    entries: BTreeMap<String, String>,
}

impl ConfigFile {
    pub fn load(path: &Path, known_keys: &[&str]) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        let mut entries = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::Config(format!(
                    "{}:{}: expected 'key = value', got '{raw}'",
                    path.display(),
                    idx + 1
                ))
            })?;
            let key = key.trim().to_string();
            if !known_keys.contains(&key.as_str()) {
                return Err(CliError::Config(format!(
                    "{}:{}: unknown key '{key}'",
                    path.display(),
                    idx + 1
                )));
            }
            entries.insert(key, value.trim().to_string());
        }
        Ok(Self { entries })
    }

    /// Fill `slot` from the file when the flag was not given.
    pub fn fill<T: std::str::FromStr>(
        &self,
        slot: &mut Option<T>,
        key: &str,
    ) -> Result<(), CliError>
    where
        T::Err: std::fmt::Display,
    {
        if slot.is_none() {
            if let Some(raw) = self.entries.get(key) {
                let value = raw
                    .parse()
                    .map_err(|e| CliError::Config(format!("key '{key}': {e}")))?;
                *slot = Some(value);
            }
        }
        Ok(())
    }
}

/// Parse a comma-separated list.
pub fn parse_list<T: std::str::FromStr>(raw: &str, what: &str) -> Result<Vec<T>, CliError>
where
    T::Err: std::fmt::Display,
{
    raw.split(',')
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|e| CliError::Config(format!("bad {what} entry '{s}': {e}")))
        })
        .collect()
}
