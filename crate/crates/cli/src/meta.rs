use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};

use agewatch_core::timeseries::ScaleParams;

use crate::ModelKind;

/// Preprocessing settings saved next to a model so later subcommands can
/// rebuild the same split, scaling and embedding.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelMeta {
    pub kind: ModelKind,
    pub indicator: String,
    pub unit: String,
    pub order: usize,
    pub horizon: usize,
    pub train_fraction: f64,
    pub train_len: usize,
    pub scale: ScaleParams,
}

impl ModelMeta {
    pub fn default_path(model: &Path) -> PathBuf {
        let mut p = model.as_os_str().to_owned();
        p.push(".meta.json");
        PathBuf::from(p)
    }

    pub fn resolve(model: &Path, explicit: Option<&Path>) -> PathBuf {
        explicit.map_or_else(|| Self::default_path(model), Path::to_path_buf)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }
}
