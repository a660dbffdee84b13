use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};
use std::path::PathBuf;

/// Spectral-report cache keyed by (canonical spec, d, t label, tol).
/// Entries store the exact serialized report, so a hit reproduces the
/// original bytes. Writes go through a temp file and rename.
pub struct ResultCache {
    dir: PathBuf,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CacheKey {
    pub spec: String,
    pub d: usize,
    pub t_label: String,
    pub tol: f64,
}

#[derive(Serialize, Deserialize)]
struct Entry {
    key: CacheKey,
    report_json: String,
}

impl ResultCache {
    /// Resolution order: explicit dir, `RINGSALEM_CACHE_DIR`, then
    /// `.ringsalem-cache` in the working directory.
    pub fn resolve(explicit: Option<&str>) -> ResultCache {
        let dir = explicit
            .map(PathBuf::from)
            .or_else(|| std::env::var_os("RINGSALEM_CACHE_DIR").map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from(".ringsalem-cache"));
        ResultCache { dir }
    }

    fn path_for(&self, key: &CacheKey) -> PathBuf {
        // FNV-1a over the canonical key string: stable across runs and
        // releases, unlike the std hasher.
        let raw = format!("{}|{}|{}|{:e}", key.spec, key.d, key.t_label, key.tol);
        let mut hash = 0xcbf2_9ce4_8422_2325u64;
        for byte in raw.bytes() {
            hash ^= byte as u64;
            hash = hash.wrapping_mul(0x1000_0000_01b3);
        }
        self.dir.join(format!("{hash:016x}.json"))
    }

    /// The stored report bytes, or `None` on miss or key mismatch.
    pub fn get(&self, key: &CacheKey) -> Option<String> {
        let text = std::fs::read_to_string(self.path_for(key)).ok()?;
        let entry: Entry = serde_json::from_str(&text).ok()?;
        (entry.key == *key).then_some(entry.report_json)
    }

    pub fn put(&self, key: &CacheKey, report_json: &str) -> Result<()> {
        std::fs::create_dir_all(&self.dir)
            .with_context(|| format!("cannot create cache dir {}", self.dir.display()))?;
        let entry = Entry {
            key: key.clone(),
            report_json: report_json.to_string(),
        };
        let path = self.path_for(key);
        let tmp = path.with_extension("tmp");
        std::fs::write(&tmp, serde_json::to_string(&entry)?)
            .with_context(|| format!("cannot write {}", tmp.display()))?;
        std::fs::rename(&tmp, &path)
            .with_context(|| format!("cannot move cache entry into {}", path.display()))?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn key(tol: f64) -> CacheKey {
        CacheKey {
            spec: "gf(5,1)".to_string(),
            d: 2,
            t_label: "1".to_string(),
            tol,
        }
    }

    #[test]
    fn hit_returns_original_bytes() {
        let tmp = std::env::temp_dir().join(format!("ringsalem-cache-test-{}", std::process::id()));
        let cache = ResultCache { dir: tmp.clone() };
        let report = r#"{"salem":1.25,"note":"x"}"#;
        cache.put(&key(1e-10), report).unwrap();
        assert_eq!(cache.get(&key(1e-10)).as_deref(), Some(report));
        // Different tol is a different key.
        assert_eq!(cache.get(&key(1e-8)), None);
        std::fs::remove_dir_all(tmp).ok();
    }
}
