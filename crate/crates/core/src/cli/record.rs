use std::collections::BTreeMap;

use chrono::{DateTime, SecondsFormat, Utc};
use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const TOOL_VERSION: &str = concat!(env!("CARGO_PKG_NAME"), " ", env!("CARGO_PKG_VERSION"));

/// One invocation of a command: what was asked, what came out.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub command: String,
    pub parameters: BTreeMap<String, Value>,
    pub results: Value,
    pub seed: Option<u64>,
    pub tool_version: String,
    pub timestamp: String,
}

impl RunRecord {
    pub fn new(command: &str, parameters: BTreeMap<String, Value>, results: Value, seed: Option<u64>) -> Self {
        Self {
            command: command.to_owned(),
            parameters,
            results,
            seed,
            tool_version: TOOL_VERSION.to_owned(),
            timestamp: timestamp(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("run records serialize")
    }
}

/// UTC time in RFC 3339. `SOURCE_DATE_EPOCH` (seconds since the epoch)
/// pins it for reproducible output.
pub fn timestamp() -> String {
    let pinned = std::env::var("SOURCE_DATE_EPOCH")
        .ok()
        .and_then(|s| s.trim().parse::<i64>().ok())
        .and_then(|secs| DateTime::<Utc>::from_timestamp(secs, 0));
    pinned.unwrap_or_else(Utc::now).to_rfc3339_opts(SecondsFormat::Secs, true)
}
