//! Content-addressed response cache: one JSON file per canonical URL, named by the
//! SHA-256 of the URL and written by atomic rename.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::{CliError, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub key: String,
    /// Hex-encoded response body.
    pub body: String,
    /// Seconds since the Unix epoch.
    pub fetched_at: u64,
}

impl CacheEntry {
    pub fn new(key: &str, body: &[u8]) -> Self {
        let fetched_at = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs());
        CacheEntry { key: key.to_string(), body: hex::encode(body), fetched_at }
    }

    pub fn body_bytes(&self) -> Result<Vec<u8>> {
        hex::decode(&self.body).map_err(|e| CliError::Cache(format!("corrupt body for {}: {e}", self.key)))
    }
}

#[derive(Debug, Clone)]
pub struct Cache {
    dir: PathBuf,
}

static TMP_COUNTER: AtomicU64 = AtomicU64::new(0);

fn cache_err(path: &Path, e: impl std::fmt::Display) -> CliError {
    CliError::Cache(format!("{}: {e}", path.display()))
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn file_name(key: &str) -> String {
        format!("{}.json", hex::encode(Sha256::digest(key.as_bytes())))
    }

    pub fn path_for(&self, key: &str) -> PathBuf {
        self.dir.join(Self::file_name(key))
    }

    pub fn get(&self, key: &str) -> Result<Option<CacheEntry>> {
        let path = self.path_for(key);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(cache_err(&path, e)),
        };
        let entry: CacheEntry = serde_json::from_str(&text).map_err(|e| cache_err(&path, e))?;
        if entry.key != key {
            return Err(cache_err(&path, format!("holds {} rather than {key}", entry.key)));
        }
        Ok(Some(entry))
    }

    /// Write to a temporary file in the cache directory, then rename over the target so
    /// readers never see a partial entry.
    pub fn put(&self, entry: &CacheEntry) -> Result<()> {
        fs::create_dir_all(&self.dir).map_err(|e| cache_err(&self.dir, e))?;
        let target = self.path_for(&entry.key);
        let n = TMP_COUNTER.fetch_add(1, Ordering::Relaxed);
        let tmp = self.dir.join(format!(".tmp-{}-{n}", std::process::id()));
        let text = serde_json::to_string(entry).expect("serializable");
        let mut f = fs::File::create(&tmp).map_err(|e| cache_err(&tmp, e))?;
        f.write_all(text.as_bytes()).and_then(|_| f.sync_all()).map_err(|e| cache_err(&tmp, e))?;
        drop(f);
        fs::rename(&tmp, &target).map_err(|e| {
            let _ = fs::remove_file(&tmp);
            cache_err(&target, e)
        })
    }

    pub fn remove(&self, key: &str) -> Result<()> {
        let path = self.path_for(key);
        match fs::remove_file(&path) {
            Err(e) if e.kind() != std::io::ErrorKind::NotFound => Err(cache_err(&path, e)),
            _ => Ok(()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_overwrite() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path().join("nested"));
        assert_eq!(cache.get("k").unwrap(), None);
        cache.put(&CacheEntry::new("k", b"one")).unwrap();
        cache.put(&CacheEntry::new("k", b"two")).unwrap();
        let e = cache.get("k").unwrap().unwrap();
        assert_eq!(e.body_bytes().unwrap(), b"two");
        // Only the entry remains; no temporary files are left behind.
        assert_eq!(std::fs::read_dir(cache.dir()).unwrap().count(), 1);
        cache.remove("k").unwrap();
        assert_eq!(cache.get("k").unwrap(), None);
    }

    #[test]
    fn names_are_content_addressed() {
        let a = Cache::file_name("https://example.org/a");
        assert_eq!(a.len(), 64 + 5);
        assert_ne!(a, Cache::file_name("https://example.org/b"));
        assert_eq!(a, Cache::file_name("https://example.org/a"));
    }
}
