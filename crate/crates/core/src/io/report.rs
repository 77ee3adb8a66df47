//! CSV and JSON report emission.
//!
//! CSV output starts with `#`-prefixed metadata lines; the only line that
//! changes between identical runs is `# generated_unix: ...`.

use std::io::Write;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use crate::inequalities::{InequalityReport, Label};

pub const TIMESTAMP_PREFIX: &str = "# generated_unix:";

/// One inequality evaluation in a campaign.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub label: Label,
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
    pub satisfied: bool,
    pub lambda_re: Option<f64>,
    pub lambda_im: Option<f64>,
    pub seed: u64,
    pub trial_index: u64,
}

impl ReportRow {
    pub fn from_report(r: &InequalityReport, seed: u64, trial_index: u64) -> Self {
        Self {
            label: r.label,
            lhs: r.lhs,
            rhs: r.rhs,
            residual: r.residual,
            satisfied: r.satisfied,
            lambda_re: r.lambda_used.map(|l| l.re),
            lambda_im: r.lambda_used.map(|l| l.im),
            seed,
            trial_index,
        }
    }
}

/// Metadata lines (without the `# ` prefix) followed by a header row and
/// one CSV row per record.
pub fn write_commented_csv<W: Write, T: Serialize>(
    mut out: W,
    meta: &[String],
    rows: &[T],
) -> std::io::Result<()> {
    let now = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    writeln!(out, "{TIMESTAMP_PREFIX} {now}")?;
    for line in meta {
        writeln!(out, "# {line}")?;
    }
    let mut w = csv::Writer::from_writer(&mut out);
    for row in rows {
        w.serialize(row).map_err(std::io::Error::other)?;
    }
    w.flush()?;
    Ok(())
}

/// Drops the timestamp line so two reports can be compared byte for byte.
pub fn strip_timestamp(text: &str) -> String {
    text.lines()
        .filter(|l| !l.starts_with(TIMESTAMP_PREFIX))
        .map(|l| format!("{l}\n"))
        .collect()
}

#[derive(Serialize)]
struct JsonReport<'a, T> {
    metadata: &'a [String],
    rows: &'a [T],
}

pub fn write_json<W: Write, T: Serialize>(out: W, meta: &[String], rows: &[T]) -> std::io::Result<()> {
    serde_json::to_writer_pretty(out, &JsonReport { metadata: meta, rows })?;
    Ok(())
}
