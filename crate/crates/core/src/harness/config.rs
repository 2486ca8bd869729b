//! Flat key-value config files mirroring the CLI flags.
//!
//! Format: one `key = value` per line, `#` comments and blank lines ignored.
//! Keys use the long flag names (for example `iterations = 500`). Explicit
//! flags always override file values.

use std::collections::HashMap;
use std::path::Path;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("{path}:{line}: expected `key = value`")]
    BadLine { path: String, line: usize },
    #[error("config key {key:?}: cannot parse {value:?}")]
    BadValue { key: String, value: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Parse a config file into a key-value map.
pub fn load_config_file(path: &Path) -> Result<HashMap<String, String>, ConfigError> {
    let text = std::fs::read_to_string(path)?;
    let mut map = HashMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(ConfigError::BadLine {
                path: path.display().to_string(),
                line: idx + 1,
            });
        };
        map.insert(key.trim().to_string(), value.trim().to_string());
    }
    Ok(map)
}

/// Typed lookup of a config key; `Ok(None)` when the key is absent.
pub fn lookup<T: std::str::FromStr>(
    map: &HashMap<String, String>,
    key: &str,
) -> Result<Option<T>, ConfigError> {
    match map.get(key) {
        None => Ok(None),
        Some(v) => v.parse::<T>().map(Some).map_err(|_| ConfigError::BadValue {
            key: key.to_string(),
            value: v.clone(),
        }),
    }
}
