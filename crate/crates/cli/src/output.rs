//! Run manifests, atomic file output and the on-disk `D_m` memo.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use discrim_core::family::{preload, CacheKey, FamilyConfig};
use discrim_core::polyring::MultiPoly;
use serde::Serialize;

pub const CACHE_ENV: &str = "DISCRIM_CACHE_DIR";

/// Echoed into every output file.
#[derive(Clone, Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub config: serde_json::Value,
    pub k_list: Vec<usize>,
    pub output_path: Option<String>,
    pub seed: Option<u64>,
    pub tol: Option<f64>,
    pub version: &'static str,
}

impl RunManifest {
    pub fn new(command: &str, cfg: &FamilyConfig, k_list: Vec<usize>, out: Option<&Path>) -> RunManifest {
        RunManifest {
            command: command.to_string(),
            config: cfg.to_json(),
            k_list,
            output_path: out.map(|p| p.display().to_string()),
            seed: None,
            tol: None,
            version: env!("CARGO_PKG_VERSION"),
        }
    }
}

#[derive(Serialize)]
pub struct Document<'a, T: Serialize> {
    pub manifest: &'a RunManifest,
    #[serde(flatten)]
    pub body: T,
}

pub fn to_pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable output");
    s.push('\n');
    s
}

/// Writes `contents` to `path` via a temporary file in the same directory.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir).with_context(|| format!("temp file in {}", dir.display()))?;
    tmp.write_all(contents.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

/// File-name-safe rendering of the weights: `12_6_2`, `1_2o3_1o3`, `m1_2`.
pub fn b_tag(cfg: &FamilyConfig) -> String {
    cfg.b_strings().iter().map(|s| s.replace('/', "o").replace('-', "m")).collect::<Vec<_>>().join("_")
}

fn cache_path(dir: &Path, cfg: &FamilyConfig) -> PathBuf {
    dir.join(format!("dm_{}_{}_{}.txt", cfg.n(), cfg.m(), b_tag(cfg)))
}

fn cache_dir() -> Option<PathBuf> {
    std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(PathBuf::from)
}

/// Seeds the in-memory memo from `$DISCRIM_CACHE_DIR` when an entry exists.
/// Unreadable entries are ignored and recomputed.
pub fn load_cached_dm(cfg: &FamilyConfig) -> bool {
    let Some(dir) = cache_dir() else { return false };
    let Ok(text) = fs::read_to_string(cache_path(&dir, cfg)) else { return false };
    let mut lines = text.lines();
    let header_ok = lines
        .next()
        .and_then(|h| serde_json::from_str::<serde_json::Value>(h).ok())
        .and_then(|v| FamilyConfig::from_json(&v).ok())
        .is_some_and(|c| c.n() == cfg.n() && c.m() == cfg.m() && c.b() == cfg.b());
    if !header_ok {
        return false;
    }
    match lines.next().map(|body| MultiPoly::parse(body, cfg.n())) {
        Some(Ok(dm)) => preload(CacheKey::new(cfg, None), dm),
        _ => false,
    }
}

/// Stores `dm` under `$DISCRIM_CACHE_DIR` (first line: config JSON).
pub fn store_cached_dm(cfg: &FamilyConfig, dm: &MultiPoly) -> Result<()> {
    let Some(dir) = cache_dir() else { return Ok(()) };
    let path = cache_path(&dir, cfg);
    if path.exists() {
        return Ok(());
    }
    write_atomic(&path, &format!("{}\n{}\n", cfg.to_json(), dm.to_text()))
}
