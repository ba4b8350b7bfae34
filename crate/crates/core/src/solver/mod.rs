//! Consistency checking by recursive search.
//!
//! [`pc_check`] builds a model level by level. Each recursion level first
//! appends a maximal chain of singleton levels that opposes no tied
//! statement; this chain is never revisited. It then tries every candidate
//! level set of size `2..=t` that opposes no tied statement, in order of
//! size and then index tuple, and recurses on the statements the candidate
//! leaves tied. With conflict learning enabled, a candidate whose subtree
//! fails is remembered (when it has at most `s` evaluations) and every later
//! candidate containing it is skipped, for as long as the search stays below
//! the prefix it was learned at.

mod candidates;
mod conflicts;

use std::cmp::Ordering;
use std::time::Duration;

use web_time::Instant;

pub use conflicts::ConflictStore;

use crate::error::{HclpError, Result};
use crate::model::{HclpModel, LevelSet};
use crate::statement::PreferenceStatement;
use crate::structure::{Combiner, HclpStructure};
use candidates::Combinations;

/// Default cardinality bound on learned conflicting sets.
pub const DEFAULT_CONFLICT_BOUND: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    /// Bound on the size of every level set. Values above `n` act as `n`.
    pub t: usize,
    pub conflicts: bool,
    /// Bound on the size of learned conflicting sets.
    pub s: usize,
    pub timeout: Option<Duration>,
    /// Keep every learned set together with the prefix it was learned at.
    pub record_learned: bool,
}

impl SearchConfig {
    pub fn new(t: usize) -> Self {
        SearchConfig {
            t,
            conflicts: false,
            s: DEFAULT_CONFLICT_BOUND,
            timeout: None,
            record_learned: false,
        }
    }

    pub fn with_conflicts(mut self, s: usize) -> Self {
        self.conflicts = true;
        self.s = s;
        self
    }

    pub fn with_timeout(mut self, timeout: Duration) -> Self {
        self.timeout = Some(timeout);
        self
    }

    pub fn recording_learned(mut self) -> Self {
        self.record_learned = true;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.t == 0 {
            return Err(HclpError::InvalidConfig("t must be at least 1".into()));
        }
        if self.conflicts && self.s < 2 {
            return Err(HclpError::InvalidConfig(
                "conflicting sets need a size bound of at least 2".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Consistent(HclpModel),
    Inconsistent,
    TimedOut,
}

#[derive(Debug, Clone, Default)]
pub struct SearchStats {
    /// Recursive calls, including the top level.
    pub nodes: u64,
    pub candidates_enumerated: u64,
    /// Candidates rejected because they contain a learned conflicting set.
    pub candidates_skipped: u64,
    pub singleton_calls: u64,
    pub learned: u64,
    pub elapsed: Duration,
}

impl SearchStats {
    /// Every counter except the wall time.
    pub fn counters(&self) -> [u64; 5] {
        [
            self.nodes,
            self.candidates_enumerated,
            self.candidates_skipped,
            self.singleton_calls,
            self.learned,
        ]
    }
}

/// A conflicting set and the prefix under which it was learned.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LearnedConflict {
    pub prefix: HclpModel,
    pub set: LevelSet,
}

#[derive(Debug, Clone)]
pub struct SolveResult {
    pub verdict: Verdict,
    pub stats: SearchStats,
    /// Filled only when [`SearchConfig::record_learned`] is set.
    pub learned: Vec<LearnedConflict>,
}

impl SolveResult {
    pub fn is_consistent(&self) -> bool {
        matches!(self.verdict, Verdict::Consistent(_))
    }

    pub fn is_inconsistent(&self) -> bool {
        self.verdict == Verdict::Inconsistent
    }

    pub fn witness(&self) -> Option<&HclpModel> {
        match &self.verdict {
            Verdict::Consistent(model) => Some(model),
            _ => None,
        }
    }
}

/// Greedy fixpoint: scan `available` in ascending order, appending every
/// evaluation that ranks no tied statement's alternatives the wrong way,
/// until a full pass appends nothing. Returns the chain and the statements
/// (indices into `statements`) it leaves tied.
fn greedy_singletons<C: Combiner>(
    structure: &HclpStructure<C>,
    statements: &[PreferenceStatement],
    available: LevelSet,
    mut tied: Vec<usize>,
) -> (Vec<usize>, Vec<usize>) {
    let mut chain = Vec::new();
    let mut left = available;
    loop {
        let mut grew = false;
        for evaluation in left.iter() {
            let single = LevelSet::singleton(evaluation);
            let opposes = tied.iter().any(|&k| {
                let s = &statements[k];
                structure.order(single, s.alpha(), s.beta()) == Ordering::Greater
            });
            if opposes {
                continue;
            }
            chain.push(evaluation);
            left = left.difference(single);
            grew = true;
            tied.retain(|&k| {
                let s = &statements[k];
                structure.order(single, s.alpha(), s.beta()) == Ordering::Equal
            });
        }
        if !grew {
            return (chain, tied);
        }
    }
}

/// The greedy non-extendable chain of singleton levels over `available`
/// that satisfies the non-strict version of `active`.
pub fn max_singleton_sequence<C: Combiner>(
    structure: &HclpStructure<C>,
    available: LevelSet,
    active: &[PreferenceStatement],
) -> Result<Vec<usize>> {
    structure.check_set(available)?;
    for statement in active {
        structure.check_statement(statement)?;
    }
    let all = (0..active.len()).collect();
    Ok(greedy_singletons(structure, active, available, all).0)
}

/// Decides C(1)-consistency: the greedy singleton chain over all
/// evaluations satisfies the statements iff any lexicographic model does.
pub fn c1_solve<C: Combiner>(
    structure: &HclpStructure<C>,
    statements: &[PreferenceStatement],
) -> Result<SolveResult> {
    for statement in statements {
        structure.check_statement(statement)?;
    }
    let start = Instant::now();
    let all = (0..statements.len()).collect();
    let (chain, tied) =
        greedy_singletons(structure, statements, LevelSet::full(structure.n()), all);
    let verdict = if tied.iter().any(|&k| statements[k].is_strict()) {
        Verdict::Inconsistent
    } else {
        Verdict::Consistent(HclpModel::singletons(chain))
    };
    let stats = SearchStats {
        nodes: 1,
        singleton_calls: 1,
        elapsed: start.elapsed(),
        ..SearchStats::default()
    };
    Ok(SolveResult {
        verdict,
        stats,
        learned: Vec::new(),
    })
}

/// Candidate level sets over `available` for the statements `tied`, in
/// search order: size in `2..=t`, opposing no tied statement, and (given a
/// store) containing no stored conflicting set.
pub fn candidate_level_sets<C: Combiner>(
    structure: &HclpStructure<C>,
    available: LevelSet,
    tied: &[PreferenceStatement],
    config: &SearchConfig,
    store: Option<&ConflictStore>,
) -> Result<Vec<LevelSet>> {
    structure.check_set(available)?;
    for statement in tied {
        structure.check_statement(statement)?;
    }
    let pairs = tied.iter().map(|s| (s.alpha(), s.beta())).collect();
    let mut combinations = Combinations::new(structure, available, pairs, config.t);
    let mut out = Vec::new();
    while let Some(set) = combinations.next_set() {
        if store.is_some_and(|store| store.blocks(set)) || combinations.opposes_any() {
            continue;
        }
        out.push(set);
    }
    Ok(out)
}

struct TimedOut;

struct Search<'a, C> {
    structure: &'a HclpStructure<C>,
    statements: &'a [PreferenceStatement],
    t: usize,
    store: Option<ConflictStore>,
    record_learned: bool,
    deadline: Option<Instant>,
    stats: SearchStats,
    learned: Vec<LearnedConflict>,
    /// Levels of the model under construction.
    path: Vec<LevelSet>,
}

impl<C: Combiner> Search<'_, C> {
    fn check_deadline(&self) -> Result<(), TimedOut> {
        match self.deadline {
            Some(deadline) if Instant::now() >= deadline => Err(TimedOut),
            _ => Ok(()),
        }
    }

    fn has_strict(&self, tied: &[usize]) -> bool {
        tied.iter().any(|&k| self.statements[k].is_strict())
    }

    /// Extends `path` with levels over `available` until every statement
    /// is satisfied. `tied` lists the statements the current path leaves
    /// tied; all others are already strictly satisfied. On failure `path`
    /// is restored and so is the conflict store.
    fn extend(&mut self, available: LevelSet, tied: Vec<usize>) -> Result<bool, TimedOut> {
        self.stats.nodes += 1;
        self.check_deadline()?;
        let entry = self.path.len();

        self.stats.singleton_calls += 1;
        let (chain, tied) = greedy_singletons(self.structure, self.statements, available, tied);
        let rest = available.difference(chain.iter().copied().collect());
        self.path.extend(chain.into_iter().map(LevelSet::singleton));
        if !self.has_strict(&tied) {
            return Ok(true);
        }

        let mark = self.store.as_ref().map(ConflictStore::checkpoint);
        let pairs = tied
            .iter()
            .map(|&k| (self.statements[k].alpha(), self.statements[k].beta()))
            .collect();
        let mut candidates = Combinations::new(self.structure, rest, pairs, self.t);
        let found = loop {
            let Some(set) = candidates.next_set() else {
                break false;
            };
            self.stats.candidates_enumerated += 1;
            if self.stats.candidates_enumerated % 1024 == 0 {
                self.check_deadline()?;
            }
            if self.store.as_ref().is_some_and(|store| store.blocks(set)) {
                self.stats.candidates_skipped += 1;
                continue;
            }
            if candidates.opposes_any() {
                continue;
            }
            let still_tied: Vec<usize> = tied
                .iter()
                .enumerate()
                .filter(|&(j, _)| candidates.relation(j) == Ordering::Equal)
                .map(|(_, &k)| k)
                .collect();
            self.path.push(set);
            debug_assert!(self.path_satisfies_relaxed());
            if !self.has_strict(&still_tied) || self.extend(rest.difference(set), still_tied)? {
                break true;
            }
            self.path.pop();
            if let Some(store) = self.store.as_mut() {
                if store.insert(set) {
                    self.stats.learned += 1;
                    if self.record_learned {
                        self.learned.push(LearnedConflict {
                            prefix: HclpModel::new(self.path.iter().copied()),
                            set,
                        });
                    }
                }
            }
        };
        if !found {
            if let (Some(store), Some(mark)) = (self.store.as_mut(), mark) {
                store.rollback(mark);
            }
            self.path.truncate(entry);
        }
        Ok(found)
    }

    fn path_satisfies_relaxed(&self) -> bool {
        let model = HclpModel::new(self.path.iter().copied());
        self.statements
            .iter()
            .all(|s| self.structure.holds(&model, &s.relaxed()))
    }
}

/// Decides C(t)-consistency of `statements`.
pub fn pc_check<C: Combiner>(
    structure: &HclpStructure<C>,
    statements: &[PreferenceStatement],
    config: &SearchConfig,
) -> Result<SolveResult> {
    config.validate()?;
    for statement in statements {
        structure.check_statement(statement)?;
    }
    let start = Instant::now();
    let mut search = Search {
        structure,
        statements,
        t: config.t.min(structure.n()),
        store: config.conflicts.then(|| ConflictStore::new(config.s)),
        record_learned: config.record_learned,
        deadline: config.timeout.map(|timeout| start + timeout),
        stats: SearchStats::default(),
        learned: Vec::new(),
        path: Vec::new(),
    };
    let all = (0..statements.len()).collect();
    let verdict = match search.extend(LevelSet::full(structure.n()), all) {
        Ok(true) => {
            let witness = HclpModel::new(search.path.iter().copied());
            debug_assert!(structure.satisfies_all(&witness, statements) == Ok(true));
            debug_assert!(witness.validate(config.t, structure.n()).is_ok());
            Verdict::Consistent(witness)
        }
        Ok(false) => Verdict::Inconsistent,
        Err(TimedOut) => Verdict::TimedOut,
    };
    let mut stats = search.stats;
    stats.elapsed = start.elapsed();
    Ok(SolveResult {
        verdict,
        stats,
        learned: search.learned,
    })
}

/// `¬φ`: swapped pair with strictness flipped.
pub fn negate(statement: &PreferenceStatement) -> PreferenceStatement {
    statement.negated()
}

/// Whether every C(t) model satisfying `statements` also satisfies
/// `query`, decided as inconsistency of `statements ∪ {¬query}`.
pub fn deduce<C: Combiner>(
    structure: &HclpStructure<C>,
    statements: &[PreferenceStatement],
    query: &PreferenceStatement,
    config: &SearchConfig,
) -> Result<bool> {
    if statements.contains(query) {
        return Err(HclpError::StatementInSet(query.to_string()));
    }
    structure.check_statement(query)?;
    let mut extended = statements.to_vec();
    extended.push(query.negated());
    match pc_check(structure, &extended, config)?.verdict {
        Verdict::Inconsistent => Ok(true),
        Verdict::Consistent(_) => Ok(false),
        Verdict::TimedOut => Err(HclpError::Timeout),
    }
}
