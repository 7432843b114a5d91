//! Optional TOML defaults. Command-line flags always win.
//!
//! ```toml
//! trunc = 6
//! max_vertices = 6
//! seed = 42
//! format = "json"
//! tables = "tables.json"
//! ```

use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::Format;

pub const DEFAULT_TRUNC: usize = 6;
pub const DEFAULT_MAX_VERTICES: usize = 6;

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub trunc: Option<usize>,
    pub max_vertices: Option<usize>,
    pub seed: Option<u64>,
    pub format: Option<Format>,
    pub tables: Option<PathBuf>,
}

impl Config {
    pub fn load(path: Option<&Path>) -> Result<Self, String> {
        let Some(path) = path else {
            return Ok(Config::default());
        };
        let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
        toml::from_str(&text).map_err(|e| format!("malformed config {}: {e}", path.display()))
    }

    pub fn trunc(&self, flag: Option<usize>) -> usize {
        flag.or(self.trunc).unwrap_or(DEFAULT_TRUNC)
    }

    pub fn max_vertices(&self, flag: Option<usize>) -> usize {
        flag.or(self.max_vertices).unwrap_or(DEFAULT_MAX_VERTICES)
    }

    pub fn seed(&self, flag: Option<u64>) -> u64 {
        flag.or(self.seed).unwrap_or(0)
    }
}
