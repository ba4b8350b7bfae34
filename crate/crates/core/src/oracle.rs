//! Exhaustive reference solver.
//!
//! Enumerates every model in C(t) over a small evaluation set and tests
//! each one. Meant for cross-checking the recursive search on instances
//! with at most [`ORACLE_LIMIT`] evaluations.

use itertools::Itertools;
use web_time::Instant;

use crate::error::{HclpError, Result};
use crate::model::{HclpModel, LevelSet};
use crate::solver::{SearchStats, SolveResult, Verdict};
use crate::statement::PreferenceStatement;
use crate::structure::{Combiner, HclpStructure};

pub const ORACLE_LIMIT: usize = 10;

/// Nonempty subsets of `set` with at most `max` elements, by size and then
/// lexicographically by sorted index tuple.
fn blocks(set: LevelSet, max: usize) -> Vec<LevelSet> {
    let items: Vec<usize> = set.iter().collect();
    (1..=max.min(items.len()))
        .flat_map(|k| {
            items
                .iter()
                .copied()
                .combinations(k)
                .map(|c| c.into_iter().collect::<LevelSet>())
        })
        .collect()
}

struct Frame {
    remaining: LevelSet,
    blocks: Vec<LevelSet>,
    next: usize,
}

/// Streams the canonical models over a set of evaluations whose levels hold
/// at most `t` evaluations.
///
/// Models are grouped by support, supports ordered by size and then by
/// sorted index tuple (so the empty model comes first); within a support,
/// ordered partitions come depth-first with candidate first levels in the
/// same size-then-tuple order.
pub struct ModelEnumerator {
    t: usize,
    supports: std::vec::IntoIter<LevelSet>,
    stack: Vec<Frame>,
    path: Vec<LevelSet>,
}

impl ModelEnumerator {
    fn new(indices: LevelSet, t: usize) -> Self {
        let mut supports = vec![LevelSet::EMPTY];
        supports.extend(blocks(indices, indices.len()));
        ModelEnumerator {
            t,
            supports: supports.into_iter(),
            stack: Vec::new(),
            path: Vec::new(),
        }
    }
}

impl Iterator for ModelEnumerator {
    type Item = HclpModel;

    fn next(&mut self) -> Option<HclpModel> {
        loop {
            let Some(top) = self.stack.last_mut() else {
                let support = self.supports.next()?;
                if support.is_empty() {
                    return Some(HclpModel::empty());
                }
                self.path.clear();
                self.stack.push(Frame {
                    remaining: support,
                    blocks: blocks(support, self.t),
                    next: 0,
                });
                continue;
            };
            let Some(&block) = top.blocks.get(top.next) else {
                self.stack.pop();
                continue;
            };
            top.next += 1;
            let remaining = top.remaining.difference(block);
            let depth = self.stack.len() - 1;
            self.path.truncate(depth);
            self.path.push(block);
            if remaining.is_empty() {
                return Some(HclpModel::new(self.path.iter().copied()));
            }
            self.stack.push(Frame {
                remaining,
                blocks: blocks(remaining, self.t),
                next: 0,
            });
        }
    }
}

/// All models over `indices` with levels of size at most `t`.
pub fn enumerate_models(indices: LevelSet, t: usize) -> Result<ModelEnumerator> {
    if indices.len() > ORACLE_LIMIT {
        return Err(HclpError::SizeGuard {
            what: "model enumeration",
            limit: ORACLE_LIMIT,
            got: indices.len(),
        });
    }
    Ok(ModelEnumerator::new(indices, t))
}

/// The first model in enumeration order that satisfies every statement.
pub fn brute_force_solve<C: Combiner>(
    structure: &HclpStructure<C>,
    statements: &[PreferenceStatement],
    t: usize,
) -> Result<SolveResult> {
    if structure.n() > ORACLE_LIMIT {
        return Err(HclpError::SizeGuard {
            what: "the exhaustive oracle",
            limit: ORACLE_LIMIT,
            got: structure.n(),
        });
    }
    for statement in statements {
        structure.check_statement(statement)?;
    }
    let start = Instant::now();
    let mut stats = SearchStats::default();
    let mut verdict = Verdict::Inconsistent;
    for model in enumerate_models(LevelSet::full(structure.n()), t)? {
        stats.nodes += 1;
        if statements.iter().all(|s| structure.holds(&model, s)) {
            verdict = Verdict::Consistent(model);
            break;
        }
    }
    stats.elapsed = start.elapsed();
    Ok(SolveResult {
        verdict,
        stats,
        learned: Vec::new(),
    })
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use super::*;
    use crate::structure::fixtures::*;

    fn models(indices: &[usize], t: usize) -> Vec<String> {
        enumerate_models(set(indices), t)
            .unwrap()
            .map(|m| m.to_string())
            .collect()
    }

    #[test]
    fn single_evaluation() {
        assert_eq!(models(&[0], 1), vec!["()", "[0]"]);
    }

    #[test]
    fn two_evaluations() {
        assert_eq!(
            models(&[0, 1], 1),
            vec!["()", "[0]", "[1]", "[0] [1]", "[1] [0]"]
        );
        assert_eq!(
            models(&[0, 1], 2),
            vec!["()", "[0]", "[1]", "[0] [1]", "[1] [0]", "[0,1]"]
        );
    }

    /// Ordered set partitions of a k-set: 1, 1, 3, 13, 75, 541, 4683.
    const FUBINI: [usize; 7] = [1, 1, 3, 13, 75, 541, 4683];

    fn binomial(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn counts_match_ordered_partition_numbers() {
        for n in 0..=6 {
            let expected: usize = (0..=n).map(|k| binomial(n, k) * FUBINI[k]).sum();
            let all: Vec<HclpModel> = enumerate_models(LevelSet::full(n), n).unwrap().collect();
            assert_eq!(all.len(), expected, "n = {n}");
            let distinct: HashSet<_> = all.iter().cloned().collect();
            assert_eq!(distinct.len(), all.len());
            assert!(all.iter().all(|m| m.validate(n, n).is_ok()));
        }
    }

    #[test]
    fn level_bound_filters_models() {
        let bounded: Vec<HclpModel> = enumerate_models(LevelSet::full(4), 2).unwrap().collect();
        let all: Vec<HclpModel> = enumerate_models(LevelSet::full(4), 4)
            .unwrap()
            .filter(|m| m.max_level_size() <= 2)
            .collect();
        assert_eq!(bounded, all);
    }

    #[test]
    fn size_guard() {
        assert!(enumerate_models(LevelSet::full(11), 1).is_err());
        let big = crate::structure::HclpStructure::additive(
            crate::structure::EvaluationMatrix::new(11, 2, vec![0; 22]).unwrap(),
        );
        assert!(matches!(
            brute_force_solve(&big, &[], 1),
            Err(HclpError::SizeGuard { .. })
        ));
    }

    #[test]
    fn oracle_examples() {
        let r = brute_force_solve(&dessert(), &dessert_gamma(), 1).unwrap();
        assert!(r.is_consistent());
        let r = brute_force_solve(&chain(), &chain_gamma(), 3).unwrap();
        assert!(r.is_inconsistent());
        let r = brute_force_solve(&chain(), &[], 1).unwrap();
        assert_eq!(r.verdict, Verdict::Consistent(HclpModel::empty()));
    }
}
