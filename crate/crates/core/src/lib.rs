//! Consistency and deduction for preference statements under hierarchical
//! (HCLP) lexicographic models.
//!
//! An [`HclpStructure`] pairs an [`EvaluationMatrix`] (n evaluation functions
//! rating m alternatives, lower is better) with a strictly monotonic
//! [`Combiner`]. An [`HclpModel`] is an ordered sequence of disjoint level sets
//! of evaluations; it orders alternatives lexicographically by the combined
//! values of each level. A set of [`PreferenceStatement`]s is C(t)-consistent
//! when some model whose levels hold at most `t` evaluations satisfies all of
//! them.
//!
//! The [`solver`] module decides consistency with a recursive search that
//! fixes a maximal chain of singleton levels first and optionally learns
//! conflicting level sets. [`oracle`] is the exhaustive reference, [`milp`]
//! exports the equivalent mixed-integer formulation, and [`instance`] holds
//! the text format and the random instance generator.

pub mod error;
pub mod instance;
pub mod milp;
pub mod model;
pub mod oracle;
pub mod solver;
pub mod statement;
pub mod structure;

pub use error::{HclpError, Result};
pub use instance::{generate, GenConfig, Instance, Metadata};
pub use model::{HclpModel, LevelSet, ModelViolation, MAX_EVALUATIONS};
pub use solver::{
    c1_solve, deduce, max_singleton_sequence, pc_check, ConflictStore, SearchConfig, SearchStats,
    SolveResult, Verdict,
};
pub use statement::{non_strict_version, PreferenceStatement};
pub use structure::{Addition, Combiner, EvaluationMatrix, HclpStructure};
