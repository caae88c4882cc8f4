//! On-disk cache of generated tables, one canonical JSON file per key.
//!
//! A key names the module, the operation, its cutoff and the convention
//! constants. A cached table is never trusted blindly: the table is
//! recomputed and compared byte for byte.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

pub enum Lookup {
    Stored,
    HitIdentical,
    /// The file on disk differs from the fresh computation.
    Mismatch(PathBuf),
}

pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: &Path) -> Cache {
        Cache {
            dir: dir.to_path_buf(),
        }
    }

    pub fn key(module: &str, op: &str, cutoff: u32, c_flow: &str, c0: &str) -> String {
        let sanitize = |s: &str| s.replace('/', "over").replace('-', "m");
        format!(
            "{module}-{op}-max{cutoff}-cflow{}-c0{}",
            sanitize(c_flow),
            sanitize(c0)
        )
    }

    pub fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    /// Stores `content` under `key`, or checks it against what is stored.
    pub fn store_or_verify(&self, key: &str, content: &str) -> io::Result<Lookup> {
        let path = self.path(key);
        match fs::read_to_string(&path) {
            Ok(old) if old == content => Ok(Lookup::HitIdentical),
            Ok(_) => Ok(Lookup::Mismatch(path)),
            Err(e) if e.kind() == io::ErrorKind::NotFound => {
                fs::create_dir_all(&self.dir)?;
                fs::write(&path, content)?;
                Ok(Lookup::Stored)
            }
            Err(e) => Err(e),
        }
    }
}
