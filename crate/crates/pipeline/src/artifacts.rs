//! Output directory with digest-tracked files.

use std::cell::RefCell;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArtifactRef {
    /// Relative to the run directory, `/`-separated.
    pub path: String,
    pub sha256: String,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

#[derive(Debug)]
pub struct ArtifactStore {
    root: PathBuf,
    written: RefCell<Vec<ArtifactRef>>,
}

impl ArtifactStore {
    pub fn create(root: &Path) -> std::io::Result<Self> {
        fs::create_dir_all(root)?;
        Ok(ArtifactStore { root: root.to_path_buf(), written: RefCell::new(Vec::new()) })
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    pub fn write(&self, rel: &str, content: &str) -> std::io::Result<ArtifactRef> {
        let path = self.root.join(rel);
        if let Some(dir) = path.parent() {
            fs::create_dir_all(dir)?;
        }
        fs::write(&path, content)?;
        let a = ArtifactRef { path: rel.to_string(), sha256: sha256_hex(content.as_bytes()) };
        self.written.borrow_mut().push(a.clone());
        Ok(a)
    }

    /// Everything written since the last call.
    pub fn take_written(&self) -> Vec<ArtifactRef> {
        std::mem::take(&mut *self.written.borrow_mut())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Integrity {
    Intact,
    Missing,
    Tampered { found: String },
}

pub fn check_artifact(root: &Path, a: &ArtifactRef) -> Integrity {
    match fs::read(root.join(&a.path)) {
        Err(_) => Integrity::Missing,
        Ok(bytes) => {
            let found = sha256_hex(&bytes);
            if found == a.sha256 {
                Integrity::Intact
            } else {
                Integrity::Tampered { found }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_digest() {
        assert_eq!(sha256_hex(b"abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    }

    #[test]
    fn detects_changes() {
        let dir = tempfile::tempdir().unwrap();
        let store = ArtifactStore::create(dir.path()).unwrap();
        let a = store.write("x/y.txt", "hello\n").unwrap();
        assert_eq!(check_artifact(dir.path(), &a), Integrity::Intact);
        fs::write(dir.path().join("x/y.txt"), "hellO\n").unwrap();
        assert!(matches!(check_artifact(dir.path(), &a), Integrity::Tampered { .. }));
        fs::remove_file(dir.path().join("x/y.txt")).unwrap();
        assert_eq!(check_artifact(dir.path(), &a), Integrity::Missing);
    }
}
