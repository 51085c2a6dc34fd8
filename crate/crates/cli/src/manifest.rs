//! JSON run manifests. A manifest stores the resolved configuration next to
//! the results so the exact run can be repeated with `--from-manifest`.

use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use pnc_tas::{SerEstimate, SimConfig};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundValue {
    pub snr_db: f64,
    pub bound: f64,
    /// Present for the TAS2 bound only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda_star: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    /// Seconds since the Unix epoch when the run finished.
    pub timestamp: u64,
    pub config: SimConfig,
    pub results: Vec<SerEstimate>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bounds: Option<Vec<BoundValue>>,
}

impl RunManifest {
    pub fn new(config: SimConfig, results: Vec<SerEstimate>, bounds: Option<Vec<BoundValue>>) -> Self {
        let timestamp = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
        Self {
            tool: env!("CARGO_PKG_NAME").to_owned(),
            version: env!("CARGO_PKG_VERSION").to_owned(),
            timestamp,
            config,
            results,
            bounds,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("manifest fields are always serializable");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn write(&self, path: &Path) -> Result<(), CliError> {
        std::fs::write(path, self.to_json())
            .map_err(|e| CliError::Runtime(format!("cannot write manifest {}: {e}", path.display())))
    }

    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Runtime(format!("cannot read manifest {}: {e}", path.display())))?;
        Self::from_json(&text).map_err(|e| CliError::Usage(format!("malformed manifest {}: {e}", path.display())))
    }
}
