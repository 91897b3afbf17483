use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::{FamilyConfig, FamilyError};
use crate::polyring::{MultiPoly, Rational};

/// `(n, m, b, k)`; `k = None` addresses `D_m` itself.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CacheKey {
    pub n: usize,
    pub m: usize,
    pub b: Vec<Rational>,
    pub k: Option<usize>,
}

impl CacheKey {
    pub fn new(cfg: &FamilyConfig, k: Option<usize>) -> CacheKey {
        CacheKey { n: cfg.n(), m: cfg.m(), b: cfg.b().to_vec(), k }
    }
}

#[derive(Default)]
struct Entry {
    busy: Mutex<()>,
    value: OnceLock<MultiPoly>,
}

type Slot = Arc<Entry>;

fn table() -> &'static Mutex<HashMap<CacheKey, Slot>> {
    static TABLE: OnceLock<Mutex<HashMap<CacheKey, Slot>>> = OnceLock::new();
    TABLE.get_or_init(Default::default)
}

fn slot(key: CacheKey) -> Slot {
    table().lock().expect("cache lock").entry(key).or_default().clone()
}

/// Returns the memoized value for `key`, computing it at most once per
/// successful run; concurrent callers of the same key wait for the first.
pub fn cached(
    key: CacheKey,
    compute: impl FnOnce() -> Result<MultiPoly, FamilyError>,
) -> Result<MultiPoly, FamilyError> {
    let s = slot(key);
    if let Some(v) = s.value.get() {
        return Ok(v.clone());
    }
    let _guard = s.busy.lock().expect("cache entry lock");
    if let Some(v) = s.value.get() {
        return Ok(v.clone());
    }
    // a failed compute leaves the entry empty for a later retry
    let v = compute()?;
    Ok(s.value.get_or_init(|| v).clone())
}

/// Seeds the memo (e.g. from an on-disk cache). Returns false if a value was
/// already present.
pub fn preload(key: CacheKey, value: MultiPoly) -> bool {
    slot(key).value.set(value).is_ok()
}
