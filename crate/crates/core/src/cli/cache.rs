//! On-disk cache of class groups, one JSON file per field.

use std::fs;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::orders::{class_group, fields, Effort, OrderData};

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "field", content = "p")]
pub enum FieldKey {
    /// Q(cbrt p).
    Pure(u64),
    /// Q(cbrt p, w).
    Closure(u64),
}

impl FieldKey {
    pub fn descriptor(&self) -> String {
        match self {
            FieldKey::Pure(p) => format!("Q(cbrt {p})"),
            FieldKey::Closure(p) => format!("Q(cbrt {p}, w)"),
        }
    }

    pub fn order(&self) -> Result<OrderData> {
        match *self {
            FieldKey::Pure(p) => fields::pure_cubic(p as i64),
            FieldKey::Closure(p) => fields::normal_closure(p as i64),
        }
    }

    fn file_name(&self, seed: u64) -> String {
        let h = Sha256::digest(format!("{}|{seed}|{ENGINE_VERSION}", self.descriptor()));
        let tag = match self {
            FieldKey::Pure(p) => format!("F{p}"),
            FieldKey::Closure(p) => format!("K{p}"),
        };
        format!("{tag}-{}.json", &hex::encode(h)[..16])
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub key: FieldKey,
    pub descriptor: String,
    pub discriminant: BigInt,
    pub invariants: Vec<u64>,
    pub certified: bool,
    pub engine_version: String,
    pub seed: u64,
}

#[derive(Clone, Debug)]
pub struct Cache {
    pub dir: Option<PathBuf>,
}

fn read_entry(path: &Path) -> Result<CacheEntry> {
    let s = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    serde_json::from_str(&s).map_err(|e| Error::Json { path: path.into(), source: e })
}

impl Cache {
    pub fn new(dir: Option<PathBuf>) -> Self {
        Cache { dir }
    }

    fn path(&self, key: &FieldKey, seed: u64) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(key.file_name(seed)))
    }

    /// Cached class group, validated against the discriminant of a freshly
    /// built maximal order; stale or unreadable entries are evicted.
    pub fn class_group(&self, key: FieldKey, effort: &Effort) -> Result<CacheEntry> {
        let o = key.order()?;
        if let Some(path) = self.path(&key, effort.seed) {
            if path.exists() {
                match read_entry(&path) {
                    Ok(e) if e.discriminant == o.discriminant && e.key == key && e.certified => return Ok(e),
                    _ => fs::remove_file(&path).map_err(|e| Error::io(&path, e))?,
                }
            }
        }
        let g = class_group(&o, effort)?;
        let entry = CacheEntry {
            key,
            descriptor: key.descriptor(),
            discriminant: o.discriminant.clone(),
            invariants: g.invariants,
            certified: g.certified,
            engine_version: ENGINE_VERSION.into(),
            seed: effort.seed,
        };
        if let (Some(path), true) = (self.path(&key, effort.seed), entry.certified) {
            let dir = path.parent().unwrap();
            fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
            // write then rename, so readers never see half a file
            let tmp = path.with_extension("tmp");
            let s = serde_json::to_string_pretty(&entry).expect("serializable");
            fs::write(&tmp, s).map_err(|e| Error::io(&tmp, e))?;
            fs::rename(&tmp, &path).map_err(|e| Error::io(&path, e))?;
        }
        Ok(entry)
    }

    fn files(&self) -> Result<Vec<PathBuf>> {
        let Some(dir) = &self.dir else { return Ok(Vec::new()) };
        if !dir.exists() {
            return Ok(Vec::new());
        }
        let mut out: Vec<PathBuf> = fs::read_dir(dir)
            .map_err(|e| Error::io(dir, e))?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "json"))
            .collect();
        out.sort();
        Ok(out)
    }

    /// Entries that parse, with their paths.
    pub fn show(&self) -> Result<Vec<(PathBuf, Option<CacheEntry>)>> {
        Ok(self.files()?.into_iter().map(|p| {
            let e = read_entry(&p).ok();
            (p, e)
        }).collect())
    }

    pub fn clear(&self) -> Result<usize> {
        let files = self.files()?;
        for f in &files {
            fs::remove_file(f).map_err(|e| Error::io(f, e))?;
        }
        Ok(files.len())
    }

    /// Re-validates every entry; returns (kept, evicted).
    pub fn verify(&self) -> Result<(usize, Vec<PathBuf>)> {
        let mut kept = 0;
        let mut evicted = Vec::new();
        for f in self.files()? {
            let ok = match read_entry(&f) {
                Ok(e) => {
                    let name_ok = f.file_name().is_some_and(|n| n.to_string_lossy() == e.key.file_name(e.seed));
                    name_ok && e.key.order().is_ok_and(|o| o.discriminant == e.discriminant)
                }
                Err(_) => false,
            };
            if ok {
                kept += 1;
            } else {
                fs::remove_file(&f).map_err(|e| Error::io(&f, e))?;
                evicted.push(f);
            }
        }
        Ok((kept, evicted))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corrupted_entry_is_evicted() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(Some(dir.path().to_path_buf()));
        let effort = Effort::default();
        let e = cache.class_group(FieldKey::Pure(7), &effort).unwrap();
        assert_eq!(e.invariants, vec![3]);
        let files = cache.show().unwrap();
        assert_eq!(files.len(), 1);
        fs::write(&files[0].0, "{ not json").unwrap();
        let (kept, evicted) = cache.verify().unwrap();
        assert_eq!((kept, evicted.len()), (0, 1));
        // recomputed on the next request
        assert_eq!(cache.class_group(FieldKey::Pure(7), &effort).unwrap(), e);
        assert_eq!(cache.clear().unwrap(), 1);
    }
}
