//! Ordered enumeration of candidate level sets.

use std::cmp::Ordering;

use crate::model::LevelSet;
use crate::structure::{Combiner, HclpStructure};

/// Walks the subsets of `available` with `2 <= |C| <= max_size`, smallest
/// sizes first and lexicographically by sorted index tuple within a size.
///
/// For each subset it keeps the combined values of both alternatives of every
/// tracked pair, updated incrementally from the longest unchanged prefix of
/// the index tuple.
pub(crate) struct Combinations<'a, C> {
    structure: &'a HclpStructure<C>,
    available: Vec<usize>,
    pairs: Vec<(usize, usize)>,
    max_size: usize,
    size: usize,
    positions: Vec<usize>,
    /// `(size + 1) * pairs.len()` folds per alternative; row `d` holds the
    /// combination of the first `d` chosen evaluations.
    alpha_acc: Vec<u64>,
    beta_acc: Vec<u64>,
    started: bool,
}

impl<'a, C: Combiner> Combinations<'a, C> {
    pub(crate) fn new(
        structure: &'a HclpStructure<C>,
        available: LevelSet,
        pairs: Vec<(usize, usize)>,
        max_size: usize,
    ) -> Self {
        let available: Vec<usize> = available.iter().collect();
        let max_size = max_size.min(available.len());
        Combinations {
            structure,
            available,
            pairs,
            max_size,
            size: 2,
            positions: Vec::new(),
            alpha_acc: Vec::new(),
            beta_acc: Vec::new(),
            started: false,
        }
    }

    fn reset_size(&mut self) {
        let width = self.pairs.len();
        self.positions = (0..self.size).collect();
        let identity = self.structure.combiner().identity();
        self.alpha_acc = vec![identity; (self.size + 1) * width];
        self.beta_acc = vec![identity; (self.size + 1) * width];
        self.refresh_from(0);
    }

    /// Recomputes the prefix folds for depths `from + 1 ..= size`.
    fn refresh_from(&mut self, from: usize) {
        let width = self.pairs.len();
        for depth in from..self.size {
            let evaluation = self.available[self.positions[depth]];
            for (k, &(alpha, beta)) in self.pairs.iter().enumerate() {
                let prev = depth * width + k;
                let next = prev + width;
                self.alpha_acc[next] = self.structure.step(self.alpha_acc[prev], evaluation, alpha);
                self.beta_acc[next] = self.structure.step(self.beta_acc[prev], evaluation, beta);
            }
        }
    }

    pub(crate) fn next_set(&mut self) -> Option<LevelSet> {
        if self.size > self.max_size {
            return None;
        }
        if !self.started {
            self.started = true;
            self.reset_size();
            return Some(self.current());
        }
        let a = self.available.len();
        let k = self.size;
        match (0..k).rev().find(|&p| self.positions[p] < a - k + p) {
            Some(p) => {
                self.positions[p] += 1;
                for q in p + 1..k {
                    self.positions[q] = self.positions[q - 1] + 1;
                }
                self.refresh_from(p);
            }
            None => {
                self.size += 1;
                if self.size > self.max_size {
                    return None;
                }
                self.reset_size();
            }
        }
        Some(self.current())
    }

    fn current(&self) -> LevelSet {
        self.positions.iter().map(|&p| self.available[p]).collect()
    }

    /// Order of tracked pair `k` on the current subset.
    pub(crate) fn relation(&self, k: usize) -> Ordering {
        let at = self.size * self.pairs.len() + k;
        self.alpha_acc[at].cmp(&self.beta_acc[at])
    }

    /// True iff the current subset ranks some tracked pair's first
    /// alternative strictly worse than its second.
    pub(crate) fn opposes_any(&self) -> bool {
        (0..self.pairs.len()).any(|k| self.relation(k) == Ordering::Greater)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::fixtures::*;

    fn all(available: LevelSet, max: usize) -> Vec<LevelSet> {
        let structure = chain();
        let mut it = Combinations::new(&structure, available, vec![], max);
        std::iter::from_fn(|| it.next_set()).collect()
    }

    #[test]
    fn order_is_size_then_lexicographic() {
        let got = all(set(&[2, 3, 4]), 3);
        assert_eq!(
            got,
            vec![set(&[2, 3]), set(&[2, 4]), set(&[3, 4]), set(&[2, 3, 4])]
        );
    }

    #[test]
    fn bound_and_empty() {
        assert_eq!(all(set(&[0, 1, 2, 3]), 2).len(), 6);
        assert_eq!(all(set(&[0, 1, 2, 3]), 9).len(), 11);
        assert!(all(LevelSet::EMPTY, 3).is_empty());
        assert!(all(set(&[1]), 3).is_empty());
        assert!(all(set(&[0, 1, 2]), 1).is_empty());
    }

    #[test]
    fn incremental_relations_match_direct_folds() {
        let structure = chain();
        let pairs = vec![(0, 1), (1, 2), (2, 3), (3, 0)];
        let mut it = Combinations::new(&structure, LevelSet::full(5), pairs.clone(), 5);
        let mut count = 0;
        while let Some(c) = it.next_set() {
            count += 1;
            for (k, &(a, b)) in pairs.iter().enumerate() {
                assert_eq!(it.relation(k), structure.order(c, a, b), "{c:?} pair {k}");
            }
        }
        assert_eq!(count, 32 - 1 - 5);
    }
}
