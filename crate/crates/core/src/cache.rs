//! On-disk persistence of character and zonal tables.
//!
//! One JSON file per `(kind, n)`, keyed by partition strings, stamped with a
//! hash of the generator version. Files whose stamp does not match, or which
//! fail to parse, are treated as absent and rebuilt.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::RwLock;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Result, WgError};

/// Bumped whenever the table contents or their encoding change.
pub const GENERATOR_VERSION: &str = "wg-core tables 1";

pub const DEFAULT_CACHE_DIR: &str = ".wg-cache";

pub type TableEntries = BTreeMap<String, BTreeMap<String, String>>;

pub fn version_hash() -> String {
    hex::encode(Sha256::digest(GENERATOR_VERSION.as_bytes()))
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    kind: String,
    n: usize,
    version: String,
    entries: TableEntries,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CacheEntryInfo {
    pub kind: String,
    pub n: usize,
    pub path: PathBuf,
    pub valid: bool,
}

#[derive(Clone, Debug)]
pub struct TableStore {
    dir: PathBuf,
}

impl TableStore {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        TableStore { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path(&self, kind: &str, n: usize) -> PathBuf {
        self.dir.join(format!("{kind}-{n}.json"))
    }

    /// The stored table, or `None` if missing, unreadable or stale.
    pub fn load(&self, kind: &str, n: usize) -> Option<TableEntries> {
        let text = fs::read_to_string(self.path(kind, n)).ok()?;
        let file: CacheFile = serde_json::from_str(&text).ok()?;
        (file.kind == kind && file.n == n && file.version == version_hash()).then_some(file.entries)
    }

    /// Writes through a temporary file so concurrent readers never observe a
    /// partial table.
    pub fn save(&self, kind: &str, n: usize, entries: &TableEntries) -> Result<()> {
        let io = |e: std::io::Error| WgError::Cache(format!("{}: {e}", self.dir.display()));
        fs::create_dir_all(&self.dir).map_err(io)?;
        let file = CacheFile {
            kind: kind.to_string(),
            n,
            version: version_hash(),
            entries: entries.clone(),
        };
        let text = serde_json::to_string(&file).map_err(|e| WgError::Cache(e.to_string()))?;
        let tmp = self
            .dir
            .join(format!(".{kind}-{n}.{}.tmp", std::process::id()));
        fs::write(&tmp, text).map_err(io)?;
        fs::rename(&tmp, self.path(kind, n)).map_err(io)
    }

    pub fn list(&self) -> Result<Vec<CacheEntryInfo>> {
        let mut out = Vec::new();
        let entries = match fs::read_dir(&self.dir) {
            Ok(e) => e,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(out),
            Err(e) => return Err(WgError::Cache(e.to_string())),
        };
        for entry in entries.flatten() {
            let name = entry.file_name().to_string_lossy().into_owned();
            let Some(stem) = name.strip_suffix(".json") else {
                continue;
            };
            let Some((kind, n)) = stem.rsplit_once('-') else {
                continue;
            };
            let Ok(n) = n.parse() else {
                continue;
            };
            out.push(CacheEntryInfo {
                kind: kind.to_string(),
                n,
                path: entry.path(),
                valid: self.load(kind, n).is_some(),
            });
        }
        out.sort_by(|a, b| (&a.kind, a.n).cmp(&(&b.kind, b.n)));
        Ok(out)
    }

    /// Removes every table file; returns how many were deleted.
    pub fn clear(&self) -> Result<usize> {
        let mut removed = 0;
        for info in self.list()? {
            fs::remove_file(&info.path).map_err(|e| WgError::Cache(e.to_string()))?;
            removed += 1;
        }
        Ok(removed)
    }
}

static STORE: RwLock<Option<TableStore>> = RwLock::new(None);

/// Enables (or with `None` disables) persistence for this process.
pub fn configure(dir: Option<PathBuf>) {
    *STORE.write().unwrap_or_else(|e| e.into_inner()) = dir.map(TableStore::new);
}

pub fn store() -> Option<TableStore> {
    STORE.read().unwrap_or_else(|e| e.into_inner()).clone()
}
