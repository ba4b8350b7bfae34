use crate::model::{LevelSet, MAX_EVALUATIONS};

#[derive(Debug, Clone, Copy)]
enum Change {
    Added(u64),
    Removed(u64),
}

/// Learned conflicting level sets with subset-containment queries.
///
/// Stored sets have between 2 and `bound` evaluations and form an
/// antichain: no stored set contains another. Sets are bucketed by their
/// smallest index, so a query only visits buckets of indices in the query
/// set. Every change is logged, which lets a search scope learned sets to a
/// subtree with [`checkpoint`](Self::checkpoint) and
/// [`rollback`](Self::rollback).
#[derive(Debug, Clone)]
pub struct ConflictStore {
    bound: usize,
    buckets: Vec<Vec<u64>>,
    len: usize,
    log: Vec<Change>,
}

impl ConflictStore {
    pub fn new(bound: usize) -> Self {
        ConflictStore {
            bound,
            buckets: vec![Vec::new(); MAX_EVALUATIONS],
            len: 0,
            log: Vec::new(),
        }
    }

    /// Cardinality bound on stored sets.
    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// True iff some stored set is a subset of `set`.
    pub fn blocks(&self, set: LevelSet) -> bool {
        let bits = set.bits();
        set.iter()
            .any(|i| self.buckets[i].iter().any(|&stored| stored & !bits == 0))
    }

    /// Stores `set` unless its size is outside `[2, bound]` or a stored set
    /// already implies it. Stored supersets of `set` are dropped. Returns
    /// whether the store changed.
    pub fn insert(&mut self, set: LevelSet) -> bool {
        if set.len() < 2 || set.len() > self.bound || self.blocks(set) {
            return false;
        }
        let bits = set.bits();
        let lowest = set.first().expect("non-empty");
        // A superset's smallest index is at most `lowest`.
        for bucket in 0..=lowest {
            let mut k = 0;
            while k < self.buckets[bucket].len() {
                let stored = self.buckets[bucket][k];
                if stored & bits == bits {
                    self.buckets[bucket].swap_remove(k);
                    self.len -= 1;
                    self.log.push(Change::Removed(stored));
                } else {
                    k += 1;
                }
            }
        }
        self.buckets[lowest].push(bits);
        self.len += 1;
        self.log.push(Change::Added(bits));
        true
    }

    pub fn checkpoint(&self) -> usize {
        self.log.len()
    }

    /// Undoes every change made since `mark` was taken.
    pub fn rollback(&mut self, mark: usize) {
        while self.log.len() > mark {
            match self.log.pop().expect("log is longer than mark") {
                Change::Added(bits) => {
                    let bucket = &mut self.buckets[bits.trailing_zeros() as usize];
                    let k = bucket
                        .iter()
                        .rposition(|&stored| stored == bits)
                        .expect("logged set is stored");
                    bucket.swap_remove(k);
                    self.len -= 1;
                }
                Change::Removed(bits) => {
                    self.buckets[bits.trailing_zeros() as usize].push(bits);
                    self.len += 1;
                }
            }
        }
    }

    /// Stored sets, sorted.
    pub fn sets(&self) -> Vec<LevelSet> {
        let mut sets: Vec<LevelSet> = self
            .buckets
            .iter()
            .flatten()
            .map(|&bits| LevelSet::from_bits(bits))
            .collect();
        sets.sort();
        sets
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::fixtures::set;
    use proptest::prelude::*;

    // c1..c5 are indices 0..4
    #[test]
    fn learned_pair_blocks_superset() {
        let mut store = ConflictStore::new(5);
        assert!(store.insert(set(&[2, 4])));
        assert!(store.blocks(set(&[2, 3, 4])));
        assert!(!store.blocks(set(&[2, 3])));
    }

    #[test]
    fn dominated_insert_is_noop() {
        let mut store = ConflictStore::new(5);
        store.insert(set(&[2, 4]));
        assert!(!store.insert(set(&[2, 3, 4])));
        assert_eq!(store.sets(), vec![set(&[2, 4])]);
    }

    #[test]
    fn insert_drops_supersets() {
        let mut store = ConflictStore::new(5);
        store.insert(set(&[0, 2, 4]));
        store.insert(set(&[1, 2, 4]));
        store.insert(set(&[0, 1]));
        assert!(store.insert(set(&[2, 4])));
        assert_eq!(store.sets(), vec![set(&[0, 1]), set(&[2, 4])]);
    }

    #[test]
    fn size_bounds() {
        let mut store = ConflictStore::new(3);
        assert!(!store.insert(set(&[1])));
        assert!(!store.insert(set(&[0, 1, 2, 3])));
        assert!(store.is_empty());
    }

    #[test]
    fn rollback_restores_state() {
        let mut store = ConflictStore::new(5);
        store.insert(set(&[0, 3, 5]));
        let mark = store.checkpoint();
        store.insert(set(&[3, 5]));
        store.insert(set(&[1, 2]));
        assert_eq!(store.sets(), vec![set(&[1, 2]), set(&[3, 5])]);
        store.rollback(mark);
        assert_eq!(store.sets(), vec![set(&[0, 3, 5])]);
    }

    fn arb_set() -> impl Strategy<Value = LevelSet> {
        (0u64..1 << 8).prop_map(LevelSet::from_bits)
    }

    proptest! {
        #[test]
        fn antichain_and_blocks_agree_with_scan(
            inserts in prop::collection::vec(arb_set(), 0..30),
            queries in prop::collection::vec(arb_set(), 0..30),
        ) {
            let mut store = ConflictStore::new(4);
            let mut accepted = Vec::new();
            for s in &inserts {
                if store.insert(*s) {
                    accepted.push(*s);
                }
            }
            let stored = store.sets();
            for a in &stored {
                prop_assert!((2..=4).contains(&a.len()));
                for b in &stored {
                    prop_assert!(a == b || !a.is_subset(*b));
                }
            }
            // Every accepted or dominated set is still implied by the store.
            for s in inserts.iter().filter(|s| (2..=4).contains(&s.len())) {
                prop_assert!(store.blocks(*s));
            }
            for q in &queries {
                let scan = stored.iter().any(|s| s.is_subset(*q));
                prop_assert_eq!(store.blocks(*q), scan);
            }
            let mark = store.checkpoint();
            for q in &queries {
                store.insert(*q);
            }
            store.rollback(mark);
            prop_assert_eq!(store.sets(), stored);
        }
    }
}
