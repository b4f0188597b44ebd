//! Resolution cache keyed by the content hash of the module.
//!
//! The in-memory layer is on by default. The disk layer stores one
//! checksummed JSON file per module; unreadable or mismatching files are
//! treated as misses and rewritten.

use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex, OnceLock, RwLock};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::Result;
use crate::exactalg::Mat;
use crate::module::Module;
use crate::module::ModuleFile;

use super::resolution::{compute, Resolution};

pub const DISK_FORMAT: &str = "cihomol-resolution/1";
const MEMORY_LIMIT: usize = 4096;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CacheConfig {
    pub memory: bool,
    pub dir: Option<PathBuf>,
}

impl Default for CacheConfig {
    fn default() -> Self {
        CacheConfig { memory: true, dir: None }
    }
}

fn config_cell() -> &'static RwLock<CacheConfig> {
    static CELL: OnceLock<RwLock<CacheConfig>> = OnceLock::new();
    CELL.get_or_init(|| RwLock::new(CacheConfig::default()))
}

fn memory() -> &'static Mutex<HashMap<String, Arc<Resolution>>> {
    static CELL: OnceLock<Mutex<HashMap<String, Arc<Resolution>>>> = OnceLock::new();
    CELL.get_or_init(|| Mutex::new(HashMap::new()))
}

pub fn configure(cfg: CacheConfig) {
    *config_cell().write().expect("cache config lock") = cfg;
}

pub fn current_config() -> CacheConfig {
    config_cell().read().expect("cache config lock").clone()
}

pub fn clear_memory() {
    memory().lock().expect("cache lock").clear();
}

pub(crate) fn resolution(m: &Module, deg: usize) -> Arc<Resolution> {
    let cfg = current_config();
    let key = m.content_hash().to_string();
    let mut best: Option<Arc<Resolution>> = None;
    if cfg.memory {
        if let Some(r) = memory().lock().expect("cache lock").get(&key) {
            if r.target() == m {
                if r.degree() >= deg {
                    return r.clone();
                }
                best = Some(r.clone());
            }
        }
    }
    if let Some(dir) = &cfg.dir {
        if let Some(r) = load(dir, &key).filter(|r| r.target() == m) {
            let r = Arc::new(r);
            if r.degree() >= deg {
                remember(&cfg, &key, &r);
                return r;
            }
            if best.as_ref().map_or(true, |b| b.degree() < r.degree()) {
                best = Some(r);
            }
        }
    }
    let res = Arc::new(compute(m, deg, best.as_deref()));
    remember(&cfg, &key, &res);
    if let Some(dir) = &cfg.dir {
        // A failed write only costs a recomputation later.
        let _ = store(dir, &key, &res);
    }
    res
}

fn remember(cfg: &CacheConfig, key: &str, res: &Arc<Resolution>) {
    if !cfg.memory {
        return;
    }
    let mut mem = memory().lock().expect("cache lock");
    if mem.len() >= MEMORY_LIMIT {
        mem.clear();
    }
    mem.insert(key.to_string(), res.clone());
}

#[derive(Serialize, Deserialize)]
struct MatFile {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct Body {
    syzygies: Vec<ModuleFile>,
    generators: Vec<Vec<usize>>,
    kernels: Vec<MatFile>,
}

#[derive(Serialize, Deserialize)]
struct Envelope {
    format: String,
    hash: String,
    /// Betti prefix, redundant with `body.generators`; checked on load.
    betti: Vec<usize>,
    checksum: String,
    body: Body,
}

fn body_of(res: &Resolution) -> Body {
    Body {
        syzygies: res.syzygies.iter().map(ModuleFile::from_module).collect(),
        generators: res.generators.clone(),
        kernels: res
            .kernels
            .iter()
            .map(|k| MatFile {
                rows: k.rows(),
                cols: k.cols(),
                data: k.data().to_vec(),
            })
            .collect(),
    }
}

fn checksum(body: &Body) -> String {
    let s = serde_json::to_string(body).expect("body serializes");
    hex::encode(Sha256::digest(s.as_bytes()))
}

fn path_for(dir: &Path, key: &str) -> PathBuf {
    dir.join(format!("{key}.json"))
}

fn store(dir: &Path, key: &str, res: &Resolution) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    let body = body_of(res);
    let env = Envelope {
        format: DISK_FORMAT.to_string(),
        hash: key.to_string(),
        betti: res.betti(),
        checksum: checksum(&body),
        body,
    };
    let tmp = dir.join(format!("{key}.json.tmp{}", std::process::id()));
    std::fs::write(&tmp, serde_json::to_string(&env)?)?;
    std::fs::rename(&tmp, path_for(dir, key))?;
    Ok(())
}

fn parse_file(path: &Path, key: &str) -> Option<Resolution> {
    let text = std::fs::read_to_string(path).ok()?;
    let env: Envelope = serde_json::from_str(&text).ok()?;
    if env.format != DISK_FORMAT || env.hash != key || env.checksum != checksum(&env.body) {
        return None;
    }
    let body = env.body;
    let n = body.syzygies.len();
    let betti: Vec<usize> = body.generators.iter().map(Vec::len).collect();
    if n == 0 || body.generators.len() != n || body.kernels.len() + 1 != n || betti != env.betti {
        return None;
    }
    let syzygies = body
        .syzygies
        .into_iter()
        .map(|f| f.into_module(false))
        .collect::<Result<Vec<Module>>>()
        .ok()?;
    let field = syzygies[0].ring().field();
    let kernels = body
        .kernels
        .into_iter()
        .map(|k| Mat::from_vec(field, k.rows, k.cols, k.data))
        .collect::<Result<Vec<Mat>>>()
        .ok()?;
    if syzygies[0].content_hash() != key {
        return None;
    }
    Some(Resolution {
        syzygies,
        generators: body.generators,
        kernels,
    })
}

fn load(dir: &Path, key: &str) -> Option<Resolution> {
    parse_file(&path_for(dir, key), key)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GcReport {
    pub kept: usize,
    pub removed: Vec<String>,
}

fn is_key(s: &str) -> bool {
    s.len() == 64 && s.bytes().all(|b| b.is_ascii_hexdigit())
}

/// Cache entry (`<hash>.json`) or a temporary left by an interrupted write.
fn cache_name(name: &str) -> Option<Option<&str>> {
    if let Some(key) = name.strip_suffix(".json").filter(|k| is_key(k)) {
        return Some(Some(key));
    }
    let (stem, _) = name.split_once(".json.tmp")?;
    is_key(stem).then_some(None)
}

/// Deletes cache entries that fail to parse or verify, and stray temporaries.
/// Files not named like cache entries are left alone.
pub fn gc(dir: &Path) -> Result<GcReport> {
    let mut report = GcReport::default();
    if !dir.exists() {
        return Ok(report);
    }
    let mut entries: Vec<PathBuf> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file())
        .collect();
    entries.sort();
    for path in entries {
        let name = path.file_name().and_then(|n| n.to_str()).unwrap_or_default().to_string();
        let Some(key) = cache_name(&name) else {
            continue;
        };
        if key.is_some_and(|key| parse_file(&path, key).is_some()) {
            report.kept += 1;
        } else {
            std::fs::remove_file(&path)?;
            report.removed.push(name);
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::CIRing;

    #[test]
    fn disk_round_trip_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let r = CIRing::new(5, &[2, 2]).unwrap();
        let k = Module::residue_field(&r);
        let res = compute(&k, 3, None);
        let key = k.content_hash().to_string();
        store(dir.path(), &key, &res).unwrap();
        let back = load(dir.path(), &key).unwrap();
        assert_eq!(back.betti(), res.betti());
        assert_eq!(back.kernels, res.kernels);

        let path = path_for(dir.path(), &key);
        let text = std::fs::read_to_string(&path).unwrap();
        std::fs::write(&path, text.replace("\"generators\":[[0]", "\"generators\":[[1]")).unwrap();
        assert!(load(dir.path(), &key).is_none());
        std::fs::write(dir.path().join("notes.json"), "not a cache file").unwrap();
        std::fs::write(dir.path().join(format!("{key}.json.tmp7")), "partial").unwrap();
        let report = gc(dir.path()).unwrap();
        assert_eq!(report.kept, 0);
        assert_eq!(report.removed.len(), 2);
        assert!(dir.path().join("notes.json").exists());
    }
}
