//! On-disk cache of [`IrrepData`] and parallel block construction.
//!
//! One JSON file per weight, holding a format version, the SHA-256 of the
//! serialized payload, and the payload itself. A version mismatch means a
//! stale file and triggers a rebuild; a checksum mismatch is an error.

use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::block::Block;
use super::irrep::IrrepData;
use super::weights::{enumerate_weights, Weight};
use crate::error::{Error, Result};

pub const CACHE_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct CacheFile {
    version: u32,
    checksum: String,
    data: IrrepData,
}

fn checksum(data: &IrrepData) -> Result<String> {
    let bytes = serde_json::to_vec(data).map_err(|e| Error::Cache(e.to_string()))?;
    Ok(Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect())
}

pub fn cache_path(dir: &Path, w: Weight) -> PathBuf {
    dir.join(format!("irrep-{}-{}-{}.json", w.a, w.b, w.c))
}

/// Reads a cached irrep; `Ok(None)` if absent or written by another version.
pub fn load(dir: &Path, w: Weight) -> Result<Option<IrrepData>> {
    let path = cache_path(dir, w);
    if !path.exists() {
        return Ok(None);
    }
    let text = fs::read_to_string(&path).map_err(|e| Error::Cache(format!("{}: {e}", path.display())))?;
    let file: CacheFile = match serde_json::from_str(&text) {
        Ok(f) => f,
        Err(e) => return Err(Error::Cache(format!("{}: {e}", path.display()))),
    };
    if file.version != CACHE_VERSION {
        return Ok(None);
    }
    if file.checksum != checksum(&file.data)? {
        return Err(Error::Cache(format!("{}: checksum mismatch", path.display())));
    }
    if file.data.weight != w {
        return Err(Error::Cache(format!("{}: holds weight {}", path.display(), file.data.weight)));
    }
    Ok(Some(file.data))
}

pub fn store(dir: &Path, data: &IrrepData) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::Cache(format!("{}: {e}", dir.display())))?;
    let file = CacheFile { version: CACHE_VERSION, checksum: checksum(data)?, data: data.clone() };
    let text = serde_json::to_string(&file).map_err(|e| Error::Cache(e.to_string()))?;
    let path = cache_path(dir, data.weight);
    // write-then-rename so concurrent readers never see a partial file
    let tmp = path.with_extension(format!("json.{}.tmp", std::process::id()));
    fs::write(&tmp, text).map_err(|e| Error::Cache(format!("{}: {e}", tmp.display())))?;
    fs::rename(&tmp, &path).map_err(|e| Error::Cache(format!("{}: {e}", path.display())))
}

/// Cached irrep data if available, otherwise built (and stored when a cache
/// directory is given).
pub fn irrep_data(w: Weight, cache: Option<&Path>) -> Result<IrrepData> {
    if let Some(dir) = cache {
        if let Some(data) = load(dir, w)? {
            return Ok(data);
        }
    }
    let data = IrrepData::build(w)?;
    if let Some(dir) = cache {
        store(dir, &data)?;
    }
    Ok(data)
}

/// Every block up to `max_level`, built in parallel, sorted by weight.
pub fn build_blocks(max_level: u32, cache: Option<&Path>) -> Result<Vec<Block>> {
    enumerate_weights(max_level)
        .into_par_iter()
        .map(|w| Block::from_data(&irrep_data(w, cache)?))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let w = Weight::new(0, 1, 0);
        let built = irrep_data(w, Some(dir.path())).unwrap();
        assert_eq!(load(dir.path(), w).unwrap().unwrap(), built);

        let path = cache_path(dir.path(), w);
        let mut file: serde_json::Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
        file["data"]["blocks"][0]["data"][0] = serde_json::json!(123.0);
        fs::write(&path, file.to_string()).unwrap();
        assert!(matches!(load(dir.path(), w), Err(Error::Cache(_))));

        file["version"] = serde_json::json!(CACHE_VERSION + 1);
        fs::write(&path, file.to_string()).unwrap();
        assert_eq!(load(dir.path(), w).unwrap(), None);
    }
}
