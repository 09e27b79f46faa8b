//! On-disk store for computed invariants.
//!
//! Entries are content-addressed: the file name is the SHA-256 of the
//! algorithm version and the request key, so bumping [`ALGORITHM_VERSION`]
//! invalidates everything written by older enumerators.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::Result;
use crate::laurent::LaurentPoly;

/// Bumped whenever enumeration or multiplicity code changes results.
pub const ALGORITHM_VERSION: &str = "floordiag-enum-v1";

/// Environment variable overriding the cache directory.
pub const CACHE_ENV: &str = "FLOORDIAG_CACHE_DIR";

#[derive(Serialize, Deserialize)]
struct Entry {
    version: String,
    key: String,
    value: LaurentPoly,
}

#[derive(Clone, Debug)]
pub struct DiskCache {
    dir: PathBuf,
}

impl DiskCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        DiskCache { dir: dir.into() }
    }

    /// The directory named by `FLOORDIAG_CACHE_DIR`, falling back to the
    /// user data directory.
    pub fn from_env() -> Option<Self> {
        if let Some(dir) = std::env::var_os(CACHE_ENV) {
            return Some(Self::new(dir));
        }
        let base = std::env::var_os("XDG_DATA_HOME")
            .map(PathBuf::from)
            .or_else(|| std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".local/share")))?;
        Some(Self::new(base.join("floordiag").join("cache")))
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path_for(&self, key: &str) -> PathBuf {
        let mut h = Sha256::new();
        h.update(ALGORITHM_VERSION.as_bytes());
        h.update([0u8]);
        h.update(key.as_bytes());
        self.dir.join(format!("{}.json", hex::encode(h.finalize())))
    }

    pub fn get(&self, key: &str) -> Option<LaurentPoly> {
        let text = fs::read_to_string(self.path_for(key)).ok()?;
        let entry: Entry = serde_json::from_str(&text).ok()?;
        (entry.version == ALGORITHM_VERSION && entry.key == key).then_some(entry.value)
    }

    pub fn put(&self, key: &str, value: &LaurentPoly) -> Result<()> {
        fs::create_dir_all(&self.dir)?;
        let entry = Entry { version: ALGORITHM_VERSION.into(), key: key.into(), value: value.clone() };
        let path = self.path_for(key);
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        fs::write(&tmp, serde_json::to_vec(&entry)?)?;
        fs::rename(tmp, path)?;
        Ok(())
    }

    /// Removes every entry and returns how many were deleted.
    pub fn clear(&self) -> Result<usize> {
        let mut removed = 0;
        let Ok(entries) = fs::read_dir(&self.dir) else { return Ok(0) };
        for entry in entries {
            let path = entry?.path();
            if path.extension().is_some_and(|e| e == "json") {
                fs::remove_file(path)?;
                removed += 1;
            }
        }
        Ok(removed)
    }

    pub fn len(&self) -> usize {
        fs::read_dir(&self.dir)
            .map(|rd| rd.filter_map(|e| e.ok()).filter(|e| e.path().extension().is_some_and(|x| x == "json")).count())
            .unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_clear() {
        let dir = tempfile::tempdir().unwrap();
        let cache = DiskCache::new(dir.path());
        let p = LaurentPoly::from_descending(1, &[1, 10, 1]);
        assert!(cache.get("abn:3,0,1|g=0").is_none());
        cache.put("abn:3,0,1|g=0", &p).unwrap();
        assert_eq!(cache.get("abn:3,0,1|g=0"), Some(p));
        assert!(cache.get("abn:3,0,1|g=1").is_none());
        assert_eq!(cache.len(), 1);
        assert_eq!(cache.clear().unwrap(), 1);
        assert!(cache.is_empty());
    }
}
