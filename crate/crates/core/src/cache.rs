//! Append-only JSON-lines memo of system dimensions.
//!
//! Keyed by (configuration hash, m, d, mode). Kernel witnesses read back from
//! disk are re-verified against the exact conditions matrix before use;
//! full-rank records are trusted.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::arith::IntMatrix;
use crate::engine::{Certainty, DimResult, DimWitness, Mode};
use crate::error::{Result, WaldError};

#[derive(Debug, Clone, Serialize, Deserialize)]
struct Record {
    config_hash: String,
    m: u32,
    d: u32,
    mode: Mode,
    dim: usize,
    certainty: Certainty,
    primes_used: Vec<u64>,
    witness: DimWitness,
}

type Key = (String, u32, u32, Mode);

#[derive(Debug)]
pub struct DimCache {
    path: Option<PathBuf>,
    inner: Mutex<HashMap<Key, DimResult>>,
}

impl DimCache {
    /// Purely in-memory cache.
    pub fn in_memory() -> Self {
        Self {
            path: None,
            inner: Mutex::new(HashMap::new()),
        }
    }

    /// Load existing records from `path` (if present) and append new ones to it.
    pub fn open(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref().to_path_buf();
        let mut map = HashMap::new();
        if path.exists() {
            let file = File::open(&path)
                .map_err(|e| WaldError::Cache(format!("{}: {e}", path.display())))?;
            for (n, line) in BufReader::new(file).lines().enumerate() {
                let line = line.map_err(|e| WaldError::Cache(e.to_string()))?;
                if line.trim().is_empty() {
                    continue;
                }
                let rec: Record = serde_json::from_str(&line)
                    .map_err(|e| WaldError::Cache(format!("{}:{}: {e}", path.display(), n + 1)))?;
                map.insert(
                    (rec.config_hash, rec.m, rec.d, rec.mode),
                    DimResult {
                        dim: rec.dim,
                        certainty: rec.certainty,
                        primes_used: rec.primes_used,
                        witness: rec.witness,
                    },
                );
            }
        }
        Ok(Self {
            path: Some(path),
            inner: Mutex::new(map),
        })
    }

    pub fn len(&self) -> usize {
        self.inner.lock().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Cached result usable for `mode`. A certified record also answers a
    /// heuristic query. Returns `Ok(None)` when a stored kernel fails to verify.
    pub fn lookup(
        &self,
        hash: &str,
        m: u32,
        d: u32,
        mode: Mode,
        exact: impl FnOnce() -> Result<IntMatrix>,
    ) -> Result<Option<DimResult>> {
        let hit = {
            let map = self.inner.lock().unwrap();
            map.get(&(hash.to_string(), m, d, mode))
                .or_else(|| map.get(&(hash.to_string(), m, d, Mode::Certified)))
                .cloned()
        };
        let Some(hit) = hit else { return Ok(None) };
        if let DimWitness::KernelBasis { vectors } = &hit.witness {
            let matrix = exact()?;
            if vectors.len() != hit.dim || !vectors.iter().all(|v| matrix.annihilates(v)) {
                return Ok(None);
            }
        }
        Ok(Some(hit))
    }

    pub fn record(&self, hash: &str, m: u32, d: u32, mode: Mode, result: &DimResult) -> Result<()> {
        let mut map = self.inner.lock().unwrap();
        let key = (hash.to_string(), m, d, mode);
        if map.contains_key(&key) {
            return Ok(());
        }
        if let Some(path) = &self.path {
            let rec = Record {
                config_hash: hash.to_string(),
                m,
                d,
                mode,
                dim: result.dim,
                certainty: result.certainty,
                primes_used: result.primes_used.clone(),
                witness: result.witness.clone(),
            };
            let line = serde_json::to_string(&rec).map_err(|e| WaldError::Cache(e.to_string()))?;
            let mut f = OpenOptions::new()
                .create(true)
                .append(true)
                .open(path)
                .map_err(|e| WaldError::Cache(format!("{}: {e}", path.display())))?;
            writeln!(f, "{line}").map_err(|e| WaldError::Cache(e.to_string()))?;
        }
        map.insert(key, result.clone());
        Ok(())
    }
}
