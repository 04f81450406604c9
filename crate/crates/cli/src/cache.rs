//! Content-addressed result cache.
//!
//! Each entry is `<dir>/<sha256(key)>.json` holding
//! `{"version": ..., "key": ..., "result": ...}`. Entries from another
//! version, with a mismatched key, or that fail to parse are treated as
//! missing. Writes go to a temporary file in the same directory and are
//! renamed into place.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Serialize, Deserialize)]
struct Entry {
    version: String,
    key: String,
    result: Value,
}

pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    /// `--cache-dir`, then `BROWNLAB_CACHE`, then the platform cache
    /// directory.
    pub fn resolve(flag: Option<&Path>) -> Option<Cache> {
        let dir = flag
            .map(Path::to_path_buf)
            .or_else(|| std::env::var_os("BROWNLAB_CACHE").map(PathBuf::from))
            .or_else(default_dir)?;
        Some(Cache { dir })
    }

    fn path_for(&self, key: &str) -> PathBuf {
        let digest = Sha256::digest(key.as_bytes());
        self.dir.join(format!("{}.json", hex::encode(digest)))
    }

    pub fn get(&self, key: &str) -> Option<Value> {
        let text = fs::read_to_string(self.path_for(key)).ok()?;
        let entry: Entry = serde_json::from_str(&text).ok()?;
        (entry.version == VERSION && entry.key == key).then_some(entry.result)
    }

    pub fn put(&self, key: &str, result: &Value) -> std::io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let entry = Entry {
            version: VERSION.to_string(),
            key: key.to_string(),
            result: result.clone(),
        };
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        serde_json::to_writer_pretty(&mut tmp, &entry)?;
        tmp.write_all(b"\n")?;
        tmp.persist(self.path_for(key)).map_err(|e| e.error)?;
        Ok(())
    }
}

fn default_dir() -> Option<PathBuf> {
    if let Some(x) = std::env::var_os("XDG_CACHE_HOME").filter(|x| !x.is_empty()) {
        return Some(PathBuf::from(x).join("brownlab"));
    }
    std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache").join("brownlab"))
}

pub fn brown_key(growth: &str, r: u32) -> String {
    format!("brown|{growth}|{r}")
}

pub fn vdw_key(r: u32, l: usize) -> String {
    format!("vdw|{r}|{l}")
}
