use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Clone, Debug, Serialize)]
pub struct InputFile {
    pub path: PathBuf,
    pub sha256: String,
}

impl InputFile {
    pub fn new(path: &Path, bytes: &[u8]) -> Self {
        InputFile {
            path: path.to_path_buf(),
            sha256: hex::encode(Sha256::digest(bytes)),
        }
    }
}

/// Provenance record attached to every report and trace.
#[derive(Clone, Debug, Serialize)]
pub struct RunManifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub inputs: Vec<InputFile>,
    pub config: serde_json::Value,
    pub started_at: String,
    pub finished_at: Option<String>,
    pub termination: Option<serde_json::Value>,
    pub verdict: Option<String>,
    /// Files written next to the report.
    pub artifacts: Vec<PathBuf>,
}

fn now() -> String {
    chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Millis, true)
}

impl RunManifest {
    pub fn start(command: &'static str, inputs: Vec<InputFile>, config: serde_json::Value) -> Self {
        RunManifest {
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            command,
            inputs,
            config,
            started_at: now(),
            finished_at: None,
            termination: None,
            verdict: None,
            artifacts: Vec::new(),
        }
    }

    pub fn finish(&mut self) {
        self.finished_at = Some(now());
    }
}

/// `<path>.manifest.json`.
pub fn sidecar_path(path: &Path) -> PathBuf {
    let mut name = path.as_os_str().to_owned();
    name.push(".manifest.json");
    PathBuf::from(name)
}
