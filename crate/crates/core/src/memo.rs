//! Concurrent memo table: one construction per key, shared readers afterwards.

use std::collections::HashMap;
use std::hash::Hash;
use std::sync::{Arc, RwLock};

use once_cell::sync::OnceCell;

use crate::error::Result;

pub struct MemoTable<K, V> {
    slots: RwLock<HashMap<K, Arc<OnceCell<Arc<V>>>>>,
}

impl<K: Eq + Hash + Clone, V> Default for MemoTable<K, V> {
    fn default() -> Self {
        Self::new()
    }
}

impl<K: Eq + Hash + Clone, V> MemoTable<K, V> {
    pub fn new() -> Self {
        MemoTable { slots: RwLock::new(HashMap::new()) }
    }

    pub fn get(&self, key: &K) -> Option<Arc<V>> {
        let slots = self.slots.read().expect("memo lock poisoned");
        slots.get(key).and_then(|s| s.get().cloned())
    }

    /// Returns the cached value, running `init` at most once per key across threads.
    pub fn get_or_try_init(&self, key: &K, init: impl FnOnce() -> Result<V>) -> Result<Arc<V>> {
        let slot = {
            let slots = self.slots.read().expect("memo lock poisoned");
            slots.get(key).cloned()
        };
        let slot = match slot {
            Some(s) => s,
            None => {
                let mut slots = self.slots.write().expect("memo lock poisoned");
                slots.entry(key.clone()).or_default().clone()
            }
        };
        slot.get_or_try_init(|| init().map(Arc::new)).cloned()
    }

    pub fn len(&self) -> usize {
        let slots = self.slots.read().expect("memo lock poisoned");
        slots.values().filter(|s| s.get().is_some()).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}
