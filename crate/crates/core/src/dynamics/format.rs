//! JSON strategy files.
//!
//! ```json
//! {"format_version":1,"n":4,"rounds":[[[0,1]],[[2,3]]],"meta":{"generator":"path","params":{}}}
//! ```

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{DynamicsError, Matching, Strategy};
use crate::graph::Graph;

pub const STRATEGY_FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StrategyMeta {
    pub generator: String,
    #[serde(default)]
    pub params: serde_json::Value,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StrategyFile {
    #[serde(default = "default_version")]
    pub format_version: u32,
    pub n: usize,
    pub rounds: Vec<Vec<[usize; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meta: Option<StrategyMeta>,
}

fn default_version() -> u32 {
    STRATEGY_FORMAT_VERSION
}

#[derive(Debug, thiserror::Error)]
pub enum StrategyFormatError {
    #[error("malformed strategy file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("unsupported format_version {0}")]
    Version(u32),
    #[error(transparent)]
    Invalid(#[from] DynamicsError),
}

impl StrategyFile {
    pub fn from_strategy(s: &Strategy, meta: Option<StrategyMeta>) -> Self {
        StrategyFile {
            format_version: STRATEGY_FORMAT_VERSION,
            n: s.n(),
            rounds: s
                .rounds()
                .iter()
                .map(|m| m.pairs().iter().map(|&(u, v)| [u, v]).collect())
                .collect(),
            meta,
        }
    }

    pub fn to_strategy(&self) -> Strategy {
        Strategy::new(
            self.n,
            self.rounds
                .iter()
                .map(|r| Matching::new(r.iter().map(|&[u, v]| (u, v))))
                .collect(),
        )
    }
}

pub fn write_strategy(s: &Strategy, meta: Option<StrategyMeta>) -> String {
    let mut out = serde_json::to_string(&StrategyFile::from_strategy(s, meta)).expect("plain data");
    out.push('\n');
    out
}

/// Parses a strategy and checks every round against `g`.
pub fn parse_strategy(text: &str, g: &Graph) -> Result<(Strategy, Option<StrategyMeta>), StrategyFormatError> {
    let file: StrategyFile = serde_json::from_str(text)?;
    if file.format_version != STRATEGY_FORMAT_VERSION {
        return Err(StrategyFormatError::Version(file.format_version));
    }
    let s = file.to_strategy();
    s.validate(g)?;
    Ok((s, file.meta))
}

pub fn read_strategy(
    path: impl AsRef<Path>,
    g: &Graph,
) -> Result<(Strategy, Option<StrategyMeta>), StrategyFormatError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| StrategyFormatError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_strategy(&text, g)
}
