//! Append-only JSON-lines ledger of scan verdicts.

use std::fs::OpenOptions;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

pub const LEDGER_ENV: &str = "TEICHFUCHS_LEDGER";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LedgerRecord {
    #[serde(rename = "D")]
    pub d: i64,
    pub eps: Option<u8>,
    pub p: u64,
    pub n: u32,
    pub check: String,
    pub verdict: String,
    /// Seconds since the Unix epoch.
    pub timestamp: u64,
}

/// `$TEICHFUCHS_LEDGER`, or `./ledger.jsonl`.
pub fn ledger_path() -> PathBuf {
    std::env::var_os(LEDGER_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("ledger.jsonl"))
}

pub(crate) fn timestamp() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

/// Appends one line per record. Nothing is opened when `records` is empty.
pub fn ledger_append(path: &Path, records: &[LedgerRecord]) -> io::Result<()> {
    if records.is_empty() {
        return Ok(());
    }
    let mut buf = Vec::new();
    for r in records {
        serde_json::to_writer(&mut buf, r)?;
        buf.push(b'\n');
    }
    let mut f = OpenOptions::new().create(true).append(true).open(path)?;
    // A single write keeps concurrent scans from interleaving lines.
    f.write_all(&buf)?;
    f.flush()
}
