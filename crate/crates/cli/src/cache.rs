use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use gcx_core::complexes::GradedSlice;
use gcx_core::linalg::{read_matrix_market, to_matrix_market_string, SparseIntMatrix};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::CliError;

/// Bumped whenever the on-disk format or the canonical form changes.
pub const CACHE_VERSION: &str = concat!("gcx-cache-1/", env!("CARGO_PKG_VERSION"));
pub const ENV_VAR: &str = "GCX_CACHE";

#[derive(Debug, Default, Serialize, Deserialize)]
struct Manifest {
    version: String,
    files: BTreeMap<String, Entry>,
}

#[derive(Debug, Serialize, Deserialize)]
struct Entry {
    sha256: String,
    bytes: usize,
    /// Keys in a basis file or nonzeros in a matrix file.
    count: usize,
}

/// Slice cache rooted at one directory, with a checksum manifest.
pub struct Cache {
    root: PathBuf,
    manifest: Manifest,
    dirty: bool,
    pub hits: usize,
    pub misses: usize,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl Cache {
    pub fn open(root: &Path) -> Result<Self, CliError> {
        fs::create_dir_all(root)?;
        let path = root.join("manifest.json");
        let manifest = match fs::read_to_string(&path) {
            Ok(text) => match serde_json::from_str::<Manifest>(&text) {
                Ok(m) if m.version == CACHE_VERSION => m,
                _ => Manifest::default(),
            },
            Err(_) => Manifest::default(),
        };
        Ok(Self {
            root: root.to_path_buf(),
            manifest: Manifest {
                version: CACHE_VERSION.to_string(),
                ..manifest
            },
            dirty: false,
            hits: 0,
            misses: 0,
        })
    }

    fn relative(slice: &GradedSlice, file: &str) -> String {
        let mut p = format!("{}/{}/{}/{}", slice.complex, slice.d.d(), slice.b, slice.v);
        if let Some(w) = slice.w {
            p.push_str(&format!("/{w}"));
        }
        format!("{p}/{file}")
    }

    fn read_checked(&mut self, rel: &str) -> Option<String> {
        let entry = self.manifest.files.get(rel)?;
        let text = fs::read_to_string(self.root.join(rel)).ok()?;
        if sha256_hex(text.as_bytes()) != entry.sha256 {
            return None;
        }
        Some(text)
    }

    fn write(&mut self, rel: &str, text: &str, count: usize) -> Result<(), CliError> {
        let path = self.root.join(rel);
        if let Some(parent) = path.parent() {
            fs::create_dir_all(parent)?;
        }
        fs::write(&path, text)?;
        self.manifest.files.insert(
            rel.to_string(),
            Entry {
                sha256: sha256_hex(text.as_bytes()),
                bytes: text.len(),
                count,
            },
        );
        self.dirty = true;
        Ok(())
    }

    pub fn basis(&mut self, slice: &GradedSlice) -> Option<Vec<String>> {
        let text = self.read_checked(&Self::relative(slice, "basis.txt"));
        match text {
            Some(t) => {
                self.hits += 1;
                Some(t.lines().map(str::to_string).collect())
            }
            None => {
                self.misses += 1;
                None
            }
        }
    }

    pub fn store_basis(&mut self, slice: &GradedSlice, keys: &[String]) -> Result<(), CliError> {
        let text: String = keys.iter().map(|k| format!("{k}\n")).collect();
        self.write(&Self::relative(slice, "basis.txt"), &text, keys.len())
    }

    /// The differential out of `slice`.
    pub fn matrix(&mut self, slice: &GradedSlice) -> Option<SparseIntMatrix> {
        let text = self.read_checked(&Self::relative(slice, "dmatrix.mtx"));
        match text.and_then(|t| read_matrix_market(t.as_bytes()).ok()) {
            Some(m) => {
                self.hits += 1;
                Some(m)
            }
            None => {
                self.misses += 1;
                None
            }
        }
    }

    pub fn store_matrix(&mut self, slice: &GradedSlice, m: &SparseIntMatrix) -> Result<(), CliError> {
        self.write(&Self::relative(slice, "dmatrix.mtx"), &to_matrix_market_string(m), m.nnz())
    }

    pub fn save(&mut self) -> Result<(), CliError> {
        if self.dirty {
            let text = serde_json::to_string_pretty(&self.manifest)?;
            fs::write(self.root.join("manifest.json"), text)?;
            self.dirty = false;
        }
        Ok(())
    }
}
