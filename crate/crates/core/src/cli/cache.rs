//! On-disk cache of built rings: one JSON file per `n`, stamped with a schema
//! string. Anything unreadable is rebuilt and overwritten.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::arc_ring::{build_ring, ArcRing, BasisVector};
use crate::combinatorics::Matching;
use crate::error::{Error, Result};

pub const CACHE_SCHEMA: &str = "arcring.cache/1";

#[derive(Serialize, Deserialize)]
struct CachedRing {
    schema: String,
    n: usize,
    order: Vec<Matching>,
    basis: Vec<BasisVector>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CacheStatus {
    Built,
    Loaded,
    Rebuilt,
}

pub fn cache_path(dir: &Path, n: usize) -> PathBuf {
    dir.join(format!("arcring-n{n}.json"))
}

pub fn store(dir: &Path, ring: &ArcRing) -> Result<PathBuf> {
    fs::create_dir_all(dir).map_err(|e| Error::Cache(format!("{}: {e}", dir.display())))?;
    let path = cache_path(dir, ring.n());
    let cached = CachedRing {
        schema: CACHE_SCHEMA.to_string(),
        n: ring.n(),
        order: ring.order().to_vec(),
        basis: ring.basis().to_vec(),
    };
    let text = serde_json::to_string(&cached).map_err(|e| Error::Cache(e.to_string()))?;
    fs::write(&path, text).map_err(|e| Error::Cache(format!("{}: {e}", path.display())))?;
    Ok(path)
}

/// `Ok(None)` when no file exists; an error when the file is unusable.
pub fn load(dir: &Path, n: usize) -> Result<Option<ArcRing>> {
    let path = cache_path(dir, n);
    let text = match fs::read_to_string(&path) {
        Ok(text) => text,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(Error::Cache(format!("{}: {e}", path.display()))),
    };
    let value: serde_json::Value = serde_json::from_str(&text).map_err(|e| Error::Cache(format!("{}: {e}", path.display())))?;
    match value.get("schema").and_then(|s| s.as_str()) {
        Some(CACHE_SCHEMA) => {}
        other => return Err(Error::Cache(format!("{}: schema {other:?}, expected {CACHE_SCHEMA:?}", path.display()))),
    }
    let cached: CachedRing = serde_json::from_value(value).map_err(|e| Error::Cache(format!("{}: {e}", path.display())))?;
    if cached.n != n {
        return Err(Error::Cache(format!("{}: holds n = {}", path.display(), cached.n)));
    }
    ArcRing::from_basis(n, cached.order, cached.basis).map(Some)
}

/// Loads the ring from `dir` if possible, otherwise builds it and stores it.
/// Without a directory the ring is just built.
pub fn load_or_build(dir: Option<&Path>, n: usize, warnings: &mut Vec<String>) -> Result<(ArcRing, CacheStatus)> {
    let Some(dir) = dir else {
        return Ok((build_ring(n)?, CacheStatus::Built));
    };
    let status = match load(dir, n) {
        Ok(Some(ring)) => return Ok((ring, CacheStatus::Loaded)),
        Ok(None) => CacheStatus::Built,
        Err(e) => {
            warnings.push(format!("rebuilding cache: {e}"));
            CacheStatus::Rebuilt
        }
    };
    let ring = build_ring(n)?;
    store(dir, &ring)?;
    Ok((ring, status))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let ring = build_ring(3).unwrap();
        store(dir.path(), &ring).unwrap();
        let back = load(dir.path(), 3).unwrap().unwrap();
        assert_eq!(back, ring);
        let (x, y) = (&ring.basis()[7], &ring.basis()[40]);
        assert_eq!(back.multiply_basis(x, y).unwrap(), ring.multiply_basis(x, y).unwrap());
    }

    #[test]
    fn missing_corrupt_and_stale() {
        let dir = tempfile::tempdir().unwrap();
        let mut warnings = Vec::new();
        let (_, status) = load_or_build(Some(dir.path()), 2, &mut warnings).unwrap();
        assert_eq!((status, warnings.len()), (CacheStatus::Built, 0));
        let (_, status) = load_or_build(Some(dir.path()), 2, &mut warnings).unwrap();
        assert_eq!((status, warnings.len()), (CacheStatus::Loaded, 0));

        let path = cache_path(dir.path(), 2);
        fs::write(&path, "{not json").unwrap();
        let (_, status) = load_or_build(Some(dir.path()), 2, &mut warnings).unwrap();
        assert_eq!((status, warnings.len()), (CacheStatus::Rebuilt, 1));

        let text = fs::read_to_string(&path).unwrap().replace(CACHE_SCHEMA, "arcring.cache/0");
        fs::write(&path, text).unwrap();
        assert!(load(dir.path(), 2).is_err());
        let (_, status) = load_or_build(Some(dir.path()), 2, &mut warnings).unwrap();
        assert_eq!(status, CacheStatus::Rebuilt);
        assert!(warnings[1].contains("schema"));
    }
}
