use std::hash::{BuildHasher, Hash};

use rustc_hash::FxBuildHasher;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub(crate) struct CacheKey {
    pub tag: u32,
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub aux: u64,
}

#[derive(Clone, Copy)]
struct Slot {
    key: CacheKey,
    result: u32,
}

/// Lossy direct-mapped computed table. A colliding insert evicts the old
/// entry; lookups only ever return results stored under an equal key.
pub(crate) struct OpCache {
    slots: Vec<Option<Slot>>,
    enabled: bool,
    hasher: FxBuildHasher,
}

const MIN_BITS: u32 = 12;
const MAX_BITS: u32 = 23;

impl OpCache {
    pub fn new() -> Self {
        OpCache {
            slots: vec![None; 1 << MIN_BITS],
            enabled: true,
            hasher: FxBuildHasher,
        }
    }

    fn index(&self, key: &CacheKey) -> usize {
        let mut h = self.hasher.hash_one(key);
        h ^= h >> 29;
        (h as usize) & (self.slots.len() - 1)
    }

    pub fn get(&self, key: &CacheKey) -> Option<u32> {
        if !self.enabled {
            return None;
        }
        match self.slots[self.index(key)] {
            Some(slot) if slot.key == *key => Some(slot.result),
            _ => None,
        }
    }

    pub fn put(&mut self, key: CacheKey, result: u32) {
        if !self.enabled {
            return;
        }
        let i = self.index(&key);
        self.slots[i] = Some(Slot { key, result });
    }

    /// Grow the table so it stays about as large as the node store.
    pub fn fit(&mut self, node_count: usize) {
        let want = node_count.next_power_of_two().clamp(1 << MIN_BITS, 1 << MAX_BITS);
        if want > self.slots.len() {
            let old = std::mem::replace(&mut self.slots, vec![None; want]);
            for slot in old.into_iter().flatten() {
                let i = self.index(&slot.key);
                self.slots[i] = Some(slot);
            }
        }
    }

    pub fn clear(&mut self) {
        self.slots.iter_mut().for_each(|s| *s = None);
    }

    pub fn set_enabled(&mut self, on: bool) {
        self.enabled = on;
        if !on {
            self.clear();
        }
    }

    pub fn enabled(&self) -> bool {
        self.enabled
    }
}
