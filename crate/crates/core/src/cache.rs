use std::collections::HashMap;
use std::hash::Hash;
use std::sync::{Arc, RwLock};

/// Memo table: concurrent readers, serialized insertion. Values are computed
/// outside the lock, so two threads may race to compute the same entry; the
/// first insertion wins.
pub(crate) struct Memo<K, V> {
    map: RwLock<HashMap<K, Arc<V>>>,
}

impl<K: Eq + Hash + Clone, V> Memo<K, V> {
    pub(crate) fn new() -> Self {
        Self { map: RwLock::new(HashMap::new()) }
    }

    pub(crate) fn get_or_compute(&self, key: &K, compute: impl FnOnce() -> V) -> Arc<V> {
        if let Some(v) = self.map.read().unwrap().get(key) {
            return Arc::clone(v);
        }
        let value = Arc::new(compute());
        let mut map = self.map.write().unwrap();
        Arc::clone(map.entry(key.clone()).or_insert(value))
    }

    pub(crate) fn try_get_or_compute<E>(&self, key: &K, compute: impl FnOnce() -> Result<V, E>) -> Result<Arc<V>, E> {
        if let Some(v) = self.map.read().unwrap().get(key) {
            return Ok(Arc::clone(v));
        }
        let value = Arc::new(compute()?);
        let mut map = self.map.write().unwrap();
        Ok(Arc::clone(map.entry(key.clone()).or_insert(value)))
    }
}
