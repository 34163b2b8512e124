//! On-disk result cache. Entries are JSON files keyed by operation, size,
//! class, variant and a code-version tag; writes go through a temporary
//! file in the same directory and an atomic rename.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

/// Bumped whenever a cached record's meaning changes.
pub const VERSION_TAG: &str = concat!(env!("CARGO_PKG_VERSION"), "+records1");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheKey {
    pub op: String,
    pub size: usize,
    pub class: String,
    pub variant: String,
    pub version: String,
}

impl CacheKey {
    pub fn new(op: &str, size: usize, class: &str, variant: &str) -> CacheKey {
        CacheKey {
            op: op.to_string(),
            size,
            class: class.to_string(),
            variant: variant.to_string(),
            version: VERSION_TAG.to_string(),
        }
    }

    fn file_name(&self) -> String {
        let clean = |s: &str| s.chars().map(|c| if c.is_ascii_alphanumeric() { c } else { '_' }).collect::<String>();
        format!("{}-{}-{}-{}.json", clean(&self.op), clean(&self.class), self.size, clean(&self.variant))
    }
}

#[derive(Serialize, Deserialize)]
struct CacheEntry {
    key: CacheKey,
    value: serde_json::Value,
    created_at: u64,
}

pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    /// The flag wins over `FPL_CACHE_DIR`, which wins over the user cache
    /// directory.
    pub fn resolve(flag: Option<PathBuf>, disabled: bool) -> Cache {
        if disabled {
            return Cache { dir: None };
        }
        let env = |k: &str| std::env::var_os(k).filter(|v| !v.is_empty()).map(PathBuf::from);
        let dir = flag
            .or_else(|| env("FPL_CACHE_DIR"))
            .or_else(|| env("XDG_CACHE_HOME").map(|d| d.join("fpl")))
            .or_else(|| env("HOME").map(|d| d.join(".cache").join("fpl")));
        Cache { dir }
    }

    fn load<T: DeserializeOwned>(&self, key: &CacheKey) -> Option<T> {
        let path = self.dir.as_ref()?.join(key.file_name());
        let entry: CacheEntry = serde_json::from_slice(&fs::read(path).ok()?).ok()?;
        if entry.key != *key {
            return None;
        }
        serde_json::from_value(entry.value).ok()
    }

    fn store<T: Serialize>(&self, key: &CacheKey, value: &T) -> std::io::Result<()> {
        let Some(dir) = &self.dir else {
            return Ok(());
        };
        fs::create_dir_all(dir)?;
        let created_at = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
        let entry = CacheEntry { key: key.clone(), value: serde_json::to_value(value)?, created_at };
        let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
        tmp.write_all(&serde_json::to_vec_pretty(&entry)?)?;
        tmp.persist(dir.join(key.file_name())).map_err(|e| e.error)?;
        Ok(())
    }

    /// Returns the cached value for `key`, or computes and stores it. Cache
    /// I/O failures fall back to plain computation.
    pub fn get_or_compute<T, E>(&self, key: CacheKey, compute: impl FnOnce() -> Result<T, E>) -> Result<T, E>
    where
        T: Serialize + DeserializeOwned,
    {
        if let Some(hit) = self.load(&key) {
            return Ok(hit);
        }
        let value = compute()?;
        if let Err(e) = self.store(&key, &value) {
            eprintln!("warning: could not write cache entry: {e}");
        }
        Ok(value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_version_mismatch() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::resolve(Some(dir.path().to_path_buf()), false);
        let key = CacheKey::new("count", 5, "plain", "enumeration");
        let v: Result<String, ()> = cache.get_or_compute(key.clone(), || Ok("429".to_string()));
        assert_eq!(v.unwrap(), "429");
        let again: Result<String, ()> = cache.get_or_compute(key.clone(), || panic!("should hit"));
        assert_eq!(again.unwrap(), "429");
        let mut stale = key.clone();
        stale.version = "0.0.0".into();
        assert!(cache.load::<String>(&stale).is_none());
        let leftovers: Vec<_> = fs::read_dir(dir.path()).unwrap().collect();
        assert_eq!(leftovers.len(), 1);
    }

    #[test]
    fn disabled_cache_always_computes() {
        let cache = Cache::resolve(None, true);
        assert!(cache.dir.is_none());
        let mut calls = 0;
        for _ in 0..2 {
            let _: Result<u8, ()> = cache.get_or_compute(CacheKey::new("x", 1, "y", "z"), || {
                calls += 1;
                Ok(1)
            });
        }
        assert_eq!(calls, 2);
    }
}
