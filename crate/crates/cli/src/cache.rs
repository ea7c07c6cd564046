//! Content-addressed store of rendered reports.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

const ENTRY_FORMAT: &str = "ncg-cache/1";

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Entry {
    format: String,
    key: String,
    exit: i32,
    output: String,
    /// SHA-256 of `output`.
    checksum: String,
}

pub fn digest(parts: &[&[u8]]) -> String {
    let mut h = Sha256::new();
    for p in parts {
        h.update((p.len() as u64).to_le_bytes());
        h.update(p);
    }
    hex::encode(h.finalize())
}

pub struct Cache {
    dir: PathBuf,
}

pub enum Lookup {
    Hit { exit: i32, output: String },
    Miss,
    Corrupted(String),
}

impl Cache {
    pub fn new(dir: &Path) -> Self {
        Cache { dir: dir.to_path_buf() }
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    pub fn get(&self, key: &str) -> Lookup {
        let path = self.path(key);
        let Ok(text) = fs::read_to_string(&path) else { return Lookup::Miss };
        let entry: Entry = match serde_json::from_str(&text) {
            Ok(e) => e,
            Err(e) => return Lookup::Corrupted(format!("{}: {e}", path.display())),
        };
        if entry.format != ENTRY_FORMAT || entry.key != key || entry.checksum != digest(&[entry.output.as_bytes()]) {
            return Lookup::Corrupted(format!("{}: key or checksum mismatch", path.display()));
        }
        Lookup::Hit { exit: entry.exit, output: entry.output }
    }

    /// Writes through a temporary file so readers never see half an entry.
    pub fn put(&self, key: &str, exit: i32, output: &str) -> std::io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let entry = Entry {
            format: ENTRY_FORMAT.into(),
            key: key.into(),
            exit,
            output: output.into(),
            checksum: digest(&[output.as_bytes()]),
        };
        let tmp = self.dir.join(format!("{key}.tmp"));
        let mut f = fs::File::create(&tmp)?;
        f.write_all(serde_json::to_string(&entry).expect("entries serialize").as_bytes())?;
        f.sync_all()?;
        fs::rename(tmp, self.path(key))
    }
}
