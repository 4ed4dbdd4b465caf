use std::fs;
use std::path::Path;
use std::time::Duration;

use pifunc::BackendDescriptor;
use serde::Serialize;
use serde_json::Value;

use crate::error::CliError;

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: &'static str,
    pub inputs: Value,
    pub outputs: Value,
    pub timing_ms: u64,
    pub backend: BackendDescriptor,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is plain data")
    }
}

/// Whole milliseconds, never below 1.
pub fn millis(elapsed: Duration) -> u64 {
    (elapsed.as_millis() as u64).max(1)
}

pub fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}
