use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use wva_core::config::ScenarioConfig;

use crate::error::CliError;
use crate::Command;

pub const MANIFEST_FILE: &str = "manifest.json";

/// Everything needed to re-run a command and get the same bytes back.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub command: Command,
    /// Scenario after defaults and `--seed` were applied.
    pub config: Option<ScenarioConfig>,
    pub seed: Option<u64>,
    /// Output files, relative to the output directory.
    pub outputs: Vec<String>,
    pub timestamp: String,
}

impl RunManifest {
    pub fn new(
        command: Command,
        config: Option<ScenarioConfig>,
        seed: Option<u64>,
        outputs: Vec<String>,
    ) -> Self {
        RunManifest {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            command,
            config,
            seed,
            outputs,
            timestamp: chrono::Utc::now().to_rfc3339(),
        }
    }

    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|e| CliError::Input {
            path: path.to_path_buf(),
            source: e.into(),
        })?;
        serde_json::from_str(&text).map_err(|e| CliError::Input {
            path: path.to_path_buf(),
            source: wva_core::Error::Config {
                path: "manifest".into(),
                message: e.to_string(),
            },
        })
    }

    pub fn write(&self, dir: &Path) -> Result<(), CliError> {
        let path = dir.join(MANIFEST_FILE);
        let text = serde_json::to_string_pretty(self).expect("manifest serializes") + "\n";
        fs::write(&path, text).map_err(|source| CliError::Output { path, source })
    }
}
