use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use qwass_core::{Error, Result};

/// Written next to the outputs of every run; `qwass replay` re-runs it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    /// Arguments after the subcommand name, without `--out`.
    pub args: Vec<String>,
    /// Every resolved parameter, defaults included.
    pub parameters: BTreeMap<String, serde_json::Value>,
    pub seed: u64,
    pub tool_version: String,
    pub wall_time_seconds: f64,
    /// Output files relative to the manifest's directory.
    pub outputs: Vec<String>,
}

impl RunManifest {
    pub fn file_name(command: &str) -> String {
        format!("{command}.manifest.json")
    }

    pub fn write(&self, dir: &Path) -> Result<PathBuf> {
        let path = dir.join(Self::file_name(&self.command));
        std::fs::write(&path, serde_json::to_string_pretty(self)? + "\n")?;
        Ok(path)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::from(e).context(path.display().to_string()))?;
        serde_json::from_str(&text).map_err(|e| Error::from(e).context(path.display().to_string()))
    }
}

/// Drops `--out DIR` and `--out=DIR` from an argument list.
pub fn strip_out(args: &[String]) -> Vec<String> {
    let mut kept = Vec::with_capacity(args.len());
    let mut iter = args.iter();
    while let Some(a) = iter.next() {
        if a == "--out" {
            iter.next();
        } else if !a.starts_with("--out=") {
            kept.push(a.clone());
        }
    }
    kept
}
