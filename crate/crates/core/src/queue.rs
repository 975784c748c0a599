use std::collections::BTreeSet;

/// Min-priority queue for peeling, ordered by `(key, id)` so ties go to the
/// smallest id. Keys are full 64-bit butterfly/triangle counts, which rules
/// out a dense array of buckets.
#[derive(Clone, Debug)]
pub(crate) struct PeelQueue {
    order: BTreeSet<(u64, u32)>,
    keys: Vec<u64>,
}

impl PeelQueue {
    pub(crate) fn new(keys: Vec<u64>) -> Self {
        let order = keys.iter().enumerate().map(|(i, &k)| (k, i as u32)).collect();
        PeelQueue { order, keys }
    }

    pub(crate) fn key(&self, id: u32) -> u64 {
        self.keys[id as usize]
    }

    pub(crate) fn pop_min(&mut self) -> Option<(u32, u64)> {
        let (key, id) = self.order.pop_first()?;
        Some((id, key))
    }

    /// Moves a queued id to `key`. The id must not have been popped.
    pub(crate) fn set_key(&mut self, id: u32, key: u64) {
        let old = self.keys[id as usize];
        if old == key {
            return;
        }
        let removed = self.order.remove(&(old, id));
        debug_assert!(removed, "set_key on a popped id");
        self.order.insert((key, id));
        self.keys[id as usize] = key;
    }

    /// Clamped decrement: lowers the key of `id` by `amount`, but never
    /// below `floor`. Returns the new key. Ids at or below `floor` are left
    /// untouched.
    pub(crate) fn decrease_clamped(&mut self, id: u32, amount: u64, floor: u64) -> u64 {
        let key = self.keys[id as usize];
        if key > floor {
            let new = key - amount.min(key - floor);
            self.set_key(id, new);
            new
        } else {
            key
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pops_in_key_then_id_order() {
        let mut q = PeelQueue::new(vec![3, 1, 3, 1]);
        assert_eq!(q.pop_min(), Some((1, 1)));
        q.set_key(2, 0);
        assert_eq!(q.pop_min(), Some((2, 0)));
        assert_eq!(q.pop_min(), Some((3, 1)));
        assert_eq!(q.pop_min(), Some((0, 3)));
        assert_eq!(q.pop_min(), None);
    }

    #[test]
    fn clamped_decrement_stops_at_floor() {
        let mut q = PeelQueue::new(vec![10, 4]);
        assert_eq!(q.decrease_clamped(0, 3, 5), 7);
        assert_eq!(q.decrease_clamped(0, 9, 5), 5);
        assert_eq!(q.decrease_clamped(1, 1, 5), 4);
    }
}
