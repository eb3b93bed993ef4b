//! Append-only JSON-lines catalog of discovered codes.
//!
//! Each line is one [`CatalogEntry`]. Writers take an exclusive advisory
//! lock on the file for the whole read-dedup-append cycle, so concurrent
//! searches writing the same catalog never duplicate a generator.

use std::collections::HashSet;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Read, Seek, SeekFrom, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::search::{CodeRecord, SearchConfig};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub schema_version: u32,
    #[serde(flatten)]
    pub record: CodeRecord,
    /// Search that produced the record.
    pub provenance: SearchConfig,
    /// Seconds since the Unix epoch.
    pub created_unix: u64,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct AppendSummary {
    pub added: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug)]
pub struct Catalog {
    path: PathBuf,
}

fn now_unix() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

fn parse_entries(text: &str) -> Result<Vec<CatalogEntry>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let entry: CatalogEntry = serde_json::from_str(line).map_err(|e| Error::Catalog {
            line: i + 1,
            reason: e.to_string(),
        })?;
        if entry.schema_version != SCHEMA_VERSION {
            return Err(Error::Catalog {
                line: i + 1,
                reason: format!("unsupported schema_version {}", entry.schema_version),
            });
        }
        out.push(entry);
    }
    Ok(out)
}

impl Catalog {
    pub fn new(path: impl Into<PathBuf>) -> Self {
        Self { path: path.into() }
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    /// All entries; a missing file is an empty catalog.
    pub fn load(&self) -> Result<Vec<CatalogEntry>> {
        let file = match File::open(&self.path) {
            Ok(f) => f,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Vec::new()),
            Err(e) => return Err(Error::io(&self.path, e)),
        };
        file.lock_shared().map_err(|e| Error::io(&self.path, e))?;
        let mut text = String::new();
        BufReader::new(&file)
            .read_to_string(&mut text)
            .map_err(|e| Error::io(&self.path, e))?;
        parse_entries(&text)
    }

    /// Appends the records whose `dedup_key` is not yet present.
    pub fn append_novel(&self, records: &[CodeRecord], provenance: &SearchConfig) -> Result<AppendSummary> {
        let io = |e| Error::io(&self.path, e);
        let mut file = OpenOptions::new()
            .read(true)
            .append(true)
            .create(true)
            .open(&self.path)
            .map_err(io)?;
        file.lock().map_err(io)?;

        let mut text = String::new();
        file.seek(SeekFrom::Start(0)).map_err(io)?;
        file.read_to_string(&mut text).map_err(io)?;
        let mut keys: HashSet<String> = parse_entries(&text)?
            .into_iter()
            .map(|e| e.record.dedup_key)
            .collect();

        let mut buf = Vec::new();
        // a previous writer may have died mid-line; start on a fresh one
        if !text.is_empty() && !text.ends_with('\n') {
            buf.push(b'\n');
        }
        let created_unix = now_unix();
        let mut summary = AppendSummary::default();
        for rec in records {
            if !keys.insert(rec.dedup_key.clone()) {
                summary.skipped += 1;
                continue;
            }
            let entry = CatalogEntry {
                schema_version: SCHEMA_VERSION,
                record: rec.clone(),
                provenance: provenance.clone(),
                created_unix,
            };
            serde_json::to_writer(&mut buf, &entry).map_err(|e| Error::Catalog {
                line: 0,
                reason: e.to_string(),
            })?;
            buf.push(b'\n');
            summary.added += 1;
        }
        if summary.added > 0 {
            file.write_all(&buf).map_err(io)?;
            file.sync_data().map_err(io)?;
        }
        Ok(summary)
    }
}

/// Line count of the catalog, for diagnostics.
pub fn count_lines(path: &Path) -> Result<usize> {
    let f = File::open(path).map_err(|e| Error::io(path, e))?;
    Ok(BufReader::new(f).lines().count())
}
