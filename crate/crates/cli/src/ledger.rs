//! Result ledger: a directory with one JSON object per file.
//!
//! Entries are named `<unix-millis>-<sha256 prefix>.json` and written to a
//! hidden temporary file first, then renamed into place, so readers never see
//! a partial entry and concurrent runs never share a file.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use sha2::{Digest, Sha256};

pub fn append(dir: &Path, json: &str) -> io::Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let millis = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_millis()).unwrap_or(0);
    let digest = Sha256::digest(json.as_bytes());
    let name = format!("{millis:013}-{}.json", &hex::encode(digest)[..16]);
    let target = dir.join(&name);
    let tmp = dir.join(format!(".{name}.{}.tmp", std::process::id()));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(json.as_bytes())?;
        f.write_all(b"\n")?;
        f.sync_all()?;
    }
    if let Err(e) = fs::rename(&tmp, &target) {
        let _ = fs::remove_file(&tmp);
        return Err(e);
    }
    Ok(target)
}

/// Completed entries, oldest first. Temporary files are skipped.
pub fn entries(dir: &Path) -> io::Result<Vec<PathBuf>> {
    let mut out: Vec<PathBuf> = fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| {
            p.extension().is_some_and(|x| x == "json")
                && !p.file_name().is_some_and(|f| f.to_string_lossy().starts_with('.'))
        })
        .collect();
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn writes_whole_entries() {
        let dir = tempfile::tempdir().unwrap();
        let ledger = dir.path().join("nested/ledger");
        let a = append(&ledger, r#"{"a":1}"#).unwrap();
        let b = append(&ledger, r#"{"b":2}"#).unwrap();
        assert_ne!(a, b);
        assert_eq!(fs::read_to_string(&a).unwrap(), "{\"a\":1}\n");
        // a stray temp file from a crashed run is not an entry
        fs::write(ledger.join(".999-abc.json.1.tmp"), "{").unwrap();
        assert_eq!(entries(&ledger).unwrap(), {
            let mut v = vec![a, b];
            v.sort();
            v
        });
    }
}
