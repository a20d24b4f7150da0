//! On-disk cache of Weyl group enumerations, re-validated on every load.

use std::collections::hash_map::DefaultHasher;
use std::fs;
use std::hash::{Hash, Hasher};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rootsys::RootSystem;
use crate::weyl::{WeylGroup, DEFAULT_CAP};

use super::report::PINNING;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CacheStatus {
    Hit,
    Miss,
    /// Stored data failed validation and was replaced.
    Rebuilt(String),
}

impl std::fmt::Display for CacheStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CacheStatus::Hit => write!(f, "hit"),
            CacheStatus::Miss => write!(f, "miss"),
            CacheStatus::Rebuilt(why) => write!(f, "rebuilt ({why})"),
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct Header {
    label: String,
    pinning: u64,
    count: usize,
    roots: usize,
}

/// Hash of the root ordering, Cartan matrix and pinning conventions.
pub fn pinning_hash(phi: &RootSystem) -> u64 {
    let mut h = DefaultHasher::new();
    phi.label().to_string().hash(&mut h);
    phi.cartan().data().hash(&mut h);
    phi.roots().hash(&mut h);
    PINNING.hash(&mut h);
    h.finish()
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn open(dir: impl AsRef<Path>) -> Result<Self> {
        let dir = dir.as_ref().to_path_buf();
        fs::create_dir_all(&dir).map_err(|e| Error::Cache(format!("{}: {e}", dir.display())))?;
        Ok(Cache { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn weyl_path(&self, phi: &RootSystem) -> PathBuf {
        let label = phi.label().to_string().replace('+', "_");
        self.dir.join(format!("weyl-{label}-{:016x}.bin", pinning_hash(phi)))
    }

    /// Load or build the enumeration of `W(label)`.
    pub fn weyl_group(&self, label: &str) -> Result<(Arc<WeylGroup>, CacheStatus)> {
        let phi = RootSystem::shared(label)?;
        let path = self.weyl_path(&phi);
        let status = match fs::read(&path) {
            Ok(bytes) => match decode(&phi, &bytes).and_then(|perms| WeylGroup::from_perms(phi.clone(), perms)) {
                Ok(w) => return Ok((Arc::new(w), CacheStatus::Hit)),
                Err(e) => CacheStatus::Rebuilt(e.to_string()),
            },
            Err(_) => CacheStatus::Miss,
        };
        let w = WeylGroup::enumerate(phi.clone(), DEFAULT_CAP)?;
        self.store(&path, &phi, &w)?;
        Ok((Arc::new(w), status))
    }

    fn store(&self, path: &Path, phi: &RootSystem, w: &WeylGroup) -> Result<()> {
        let io = |e: std::io::Error| Error::Cache(format!("{}: {e}", path.display()));
        let header = Header { label: phi.label().to_string(), pinning: pinning_hash(phi), count: w.len(), roots: phi.len() };
        let mut buf = serde_json::to_vec(&header).map_err(|e| Error::Cache(e.to_string()))?;
        buf.push(b'\n');
        for g in w.elements() {
            for &x in g.perm() {
                buf.extend_from_slice(&x.to_le_bytes());
            }
        }
        let tmp = path.with_extension("tmp");
        let mut f = fs::File::create(&tmp).map_err(io)?;
        f.write_all(&buf).map_err(io)?;
        fs::rename(&tmp, path).map_err(io)
    }
}

fn decode(phi: &RootSystem, bytes: &[u8]) -> Result<Vec<Vec<u16>>> {
    let bad = |why: &str| Error::Cache(why.to_string());
    let nl = bytes.iter().position(|&b| b == b'\n').ok_or_else(|| bad("missing header"))?;
    let header: Header = serde_json::from_slice(&bytes[..nl]).map_err(|e| Error::Cache(format!("header: {e}")))?;
    if header.label != phi.label().to_string() || header.pinning != pinning_hash(phi) || header.roots != phi.len() {
        return Err(bad("header does not match the root system"));
    }
    let body = &bytes[nl + 1..];
    if body.len() != header.count * header.roots * 2 {
        return Err(bad("truncated body"));
    }
    Ok(body
        .chunks_exact(header.roots * 2)
        .map(|c| c.chunks_exact(2).map(|b| u16::from_le_bytes([b[0], b[1]])).collect())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::open(dir.path()).unwrap();
        let (w, s) = cache.weyl_group("A3").unwrap();
        assert_eq!(s, CacheStatus::Miss);
        let (w2, s2) = cache.weyl_group("A3").unwrap();
        assert_eq!(s2, CacheStatus::Hit);
        assert_eq!(w.elements(), w2.elements());
        let phi = RootSystem::shared("A3").unwrap();
        let path = cache.weyl_path(&phi);
        let mut bytes = fs::read(&path).unwrap();
        let n = bytes.len();
        bytes[n - 2] = bytes[n - 2].wrapping_add(1);
        fs::write(&path, &bytes).unwrap();
        let (_, s3) = cache.weyl_group("A3").unwrap();
        assert!(matches!(s3, CacheStatus::Rebuilt(_)));
    }
}
