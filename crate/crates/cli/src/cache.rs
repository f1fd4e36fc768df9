//! Content-addressed JSON cache for expensive computations.
//!
//! Each entry lives in its own file named by the SHA-256 of the cache
//! key. The file stores the key, the payload, and a hash of the
//! payload's canonical serialization; a load only succeeds when both
//! the key and the hash match, so truncated or hand-edited files are
//! ignored (with a warning) and the caller recomputes.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

pub struct Cache {
    dir: PathBuf,
}

#[derive(Serialize, Deserialize)]
struct Entry {
    key: String,
    sha256: String,
    payload: Value,
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

/// Hash of the payload's compact serialization. `Value` objects keep
/// their keys sorted, so the serialization is canonical.
fn payload_hash(payload: &Value) -> String {
    let mut h = Sha256::new();
    h.update(payload.to_string().as_bytes());
    hex(&h.finalize())
}

impl Cache {
    pub fn open(dir: &Path) -> Result<Self> {
        fs::create_dir_all(dir)
            .with_context(|| format!("creating cache directory {}", dir.display()))?;
        Ok(Self { dir: dir.to_path_buf() })
    }

    fn path_for(&self, key: &str) -> PathBuf {
        let mut h = Sha256::new();
        h.update(key.as_bytes());
        self.dir.join(format!("{}.json", hex(&h.finalize())))
    }

    /// Returns the stored payload, or `None` when the entry is missing
    /// or fails verification. Corruption warns on stderr; a plain miss
    /// is silent.
    pub fn load(&self, key: &str) -> Option<Value> {
        let path = self.path_for(key);
        let text = fs::read_to_string(&path).ok()?;
        let entry: Entry = match serde_json::from_str(&text) {
            Ok(e) => e,
            Err(_) => {
                eprintln!("warning: cache entry {} is unreadable; recomputing", path.display());
                return None;
            }
        };
        if entry.key != key {
            eprintln!("warning: cache entry {} stores a different key; recomputing", path.display());
            return None;
        }
        if payload_hash(&entry.payload) != entry.sha256 {
            eprintln!("warning: cache entry {} fails its hash; recomputing", path.display());
            return None;
        }
        Some(entry.payload)
    }

    pub fn store(&self, key: &str, payload: &Value) -> Result<()> {
        let entry = Entry {
            key: key.to_string(),
            sha256: payload_hash(payload),
            payload: payload.clone(),
        };
        let path = self.path_for(key);
        fs::write(&path, serde_json::to_string(&entry)?)
            .with_context(|| format!("writing cache entry {}", path.display()))?;
        Ok(())
    }
}
