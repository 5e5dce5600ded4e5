//! JSON run reports.

use legendre_core::Report;
use serde::Serialize;
use serde_json::Value;
use std::path::Path;

/// The singularity report's fields at top level, plus what the operation
/// produced.
#[derive(Serialize)]
struct Document<'a> {
    #[serde(flatten)]
    report: &'a Report,
    operation: &'a Value,
}

pub fn render(report: &Report, operation: &Value) -> serde_json::Result<String> {
    let mut s = serde_json::to_string_pretty(&Document { report, operation })?;
    s.push('\n');
    Ok(s)
}

pub fn emit_report(report: &Report, operation: &Value, path: &Path) -> std::io::Result<()> {
    let text = render(report, operation).map_err(std::io::Error::other)?;
    std::fs::write(path, text)
}
