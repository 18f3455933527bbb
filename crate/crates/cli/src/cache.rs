//! On-disk cache of `A_p(z)` coefficient lists, one JSON file per
//! (operator id, prime) at `<dir>/<id>/<p>.json`. Writes go through a
//! temporary file and an atomic rename, so concurrent workers never observe a
//! partial entry.

use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use hwcy_core::{FpSeries, PrimeField};
use serde::{Deserialize, Serialize};

/// Environment override for the cache directory.
pub const ENV_VAR: &str = "HWCY_CACHE_DIR";
pub const DEFAULT_DIR: &str = ".hwcy-cache";

#[derive(Serialize, Deserialize)]
struct Entry {
    operator: String,
    p: u64,
    /// `A_p(z)` coefficients of `z^0 .. z^(n-1)`, reduced to `[0, p)`.
    coeffs: Vec<u64>,
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path(&self, id: &str, p: u64) -> PathBuf {
        self.dir.join(id).join(format!("{p}.json"))
    }

    /// The cached series truncated to `min_order`, or `None` when absent or
    /// shorter than `min_order`.
    pub fn load(&self, id: &str, p: u64, min_order: usize) -> Result<Option<FpSeries>> {
        let path = self.path(id, p);
        let text = match std::fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e).with_context(|| format!("reading {}", path.display())),
        };
        let entry: Entry = serde_json::from_str(&text).with_context(|| format!("corrupt cache entry {}", path.display()))?;
        if entry.operator != id || entry.p != p || entry.coeffs.iter().any(|&c| c >= p) {
            bail!("cache entry {} does not belong to ({id}, {p})", path.display());
        }
        if entry.coeffs.len() < min_order {
            return Ok(None);
        }
        let field = PrimeField::new(p)?;
        Ok(Some(FpSeries::from_u64s(field, &entry.coeffs[..min_order])))
    }

    /// Store unless an entry at least as long is already present.
    pub fn store(&self, id: &str, a: &FpSeries) -> Result<()> {
        let p = a.field().p();
        if self.load(id, p, a.precision()).ok().flatten().is_some() {
            return Ok(());
        }
        let dir = self.dir.join(id);
        std::fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
        let entry = Entry { operator: id.to_string(), p, coeffs: a.coeffs().to_vec() };
        let mut tmp = tempfile::NamedTempFile::new_in(&dir)?;
        serde_json::to_writer(&mut tmp, &entry)?;
        tmp.write_all(b"\n")?;
        tmp.persist(self.path(id, p)).map_err(|e| e.error).context("persisting cache entry")?;
        Ok(())
    }
}
