//! Content-addressed on-disk cache of computed components.
//!
//! An entry lives at `<dir>/<sha256>.json`, where the hash covers the
//! computation kind, `(m, n)`, the truncation and the code version. The file
//! holds a metadata header and the value in the power-sum JSON schema, so a
//! cached value reproduces the computed one exactly. Writes go through a
//! temporary file and an atomic rename.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use mzero_core::schema::{from_document, to_document, Basis, Document};
use mzero_core::{BiSymFunc, Truncation};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// Bumped whenever cached values could change meaning.
pub const CACHE_VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "+cache1");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Meta {
    pub version: String,
    pub key: String,
    pub truncation: Truncation,
    pub timestamp: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct Entry {
    meta: Meta,
    value: Document,
}

/// Outcome of a lookup.
#[derive(Debug)]
pub enum Lookup {
    Hit(BiSymFunc),
    Miss,
    /// Present but unreadable or from another version; the reason is
    /// suitable for a warning.
    Stale(String),
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
    version: String,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache::with_version(dir, CACHE_VERSION)
    }

    pub fn with_version(dir: impl Into<PathBuf>, version: &str) -> Self {
        Cache {
            dir: dir.into(),
            version: version.to_string(),
        }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn key(&self, tag: &str, m: usize, n: usize, trunc: Truncation) -> String {
        let trunc = serde_json::to_string(&trunc).expect("truncations serialize");
        let digest = Sha256::digest(format!("{tag}|{m}|{n}|{trunc}|{}", self.version).as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    pub fn get(&self, tag: &str, m: usize, n: usize, trunc: Truncation) -> Lookup {
        let key = self.key(tag, m, n, trunc);
        let path = self.path(&key);
        let bytes = match fs::read(&path) {
            Ok(b) => b,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Lookup::Miss,
            Err(e) => return Lookup::Stale(format!("{}: {e}", path.display())),
        };
        let entry: Entry = match serde_json::from_slice(&bytes) {
            Ok(e) => e,
            Err(e) => return Lookup::Stale(format!("{}: corrupt entry: {e}", path.display())),
        };
        if entry.meta.version != self.version || entry.meta.key != key || entry.meta.truncation != trunc {
            return Lookup::Stale(format!("{}: header does not match", path.display()));
        }
        match from_document(&entry.value) {
            Ok(f) => Lookup::Hit(f),
            Err(e) => Lookup::Stale(format!("{}: corrupt value: {e}", path.display())),
        }
    }

    pub fn put(&self, tag: &str, m: usize, n: usize, f: &BiSymFunc) -> io::Result<()> {
        let trunc = f.truncation();
        let key = self.key(tag, m, n, trunc);
        let timestamp = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        let entry = Entry {
            meta: Meta {
                version: self.version.clone(),
                key: key.clone(),
                truncation: trunc,
                timestamp,
            },
            value: to_document(f, Basis::PowerSum),
        };
        fs::create_dir_all(&self.dir)?;
        let path = self.path(&key);
        let tmp = self.dir.join(format!("{key}.json.tmp{}", std::process::id()));
        fs::write(&tmp, serde_json::to_vec(&entry).expect("entries serialize"))?;
        fs::rename(&tmp, &path)
    }
}
