//! CSV and manifest writing. All files are UTF-8 with LF line endings and
//! 12-significant-digit numbers, so repeated runs diff byte-for-byte.

use ewa_core::numfmt::sig12;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

pub fn fmt(v: f64) -> String {
    sig12(v)
}

/// Write a CSV file from a header and pre-formatted rows.
pub fn write_csv(path: &Path, header: &str, rows: &[String]) -> std::io::Result<()> {
    let mut body = String::with_capacity(rows.len() * 32 + header.len() + 1);
    body.push_str(header);
    body.push('\n');
    for row in rows {
        body.push_str(row);
        body.push('\n');
    }
    fs::write(path, body)
}

/// Everything needed to reproduce a run: the resolved argument vector (with
/// presets expanded and the output directory stripped) plus bookkeeping.
#[derive(Debug, Serialize, Deserialize)]
pub struct Manifest {
    pub command: String,
    pub version: String,
    /// Fully resolved arguments; `replay` feeds these back through the
    /// parser with a fresh `--out`.
    pub argv: Vec<String>,
    pub params: BTreeMap<String, String>,
    pub outputs: Vec<String>,
}

impl Manifest {
    pub fn new(command: &str, argv: Vec<String>, outputs: Vec<String>) -> Self {
        let mut params = BTreeMap::new();
        let mut it = argv.iter().skip(1);
        while let Some(flag) = it.next() {
            if let Some(key) = flag.strip_prefix("--") {
                let value = it.next().cloned().unwrap_or_else(|| "true".to_string());
                params.insert(key.to_string(), value);
            }
        }
        Manifest {
            command: command.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            argv,
            params,
            outputs,
        }
    }

    pub fn write(&self, out_dir: &Path, name: &str) -> std::io::Result<PathBuf> {
        let path = out_dir.join(format!("{name}_manifest.json"));
        let mut text = serde_json::to_string_pretty(self)?;
        text.push('\n');
        fs::write(&path, text)?;
        Ok(path)
    }
}

/// Summary sidecar for scans: parameter range, sizes, extrema.
pub fn write_summary(
    out_dir: &Path,
    name: &str,
    fields: &[(&str, serde_json::Value)],
) -> std::io::Result<PathBuf> {
    let mut map = serde_json::Map::new();
    for (k, v) in fields {
        map.insert((*k).to_string(), v.clone());
    }
    let path = out_dir.join(format!("{name}_summary.json"));
    let mut text = serde_json::to_string_pretty(&serde_json::Value::Object(map))?;
    text.push('\n');
    fs::write(&path, text)?;
    Ok(path)
}
