//! Mixed-integer feasibility formulation of C(t)-consistency.
//!
//! Variables, for `n` evaluations and `g` statements:
//!
//! * `y_i_j` (binary): evaluation `i` sits in level `j`.
//! * `x_j_p` (integer): combined value of `alpha` minus that of `beta` for
//!   statement `p` on level `j`, bounded by [`Bounds`].
//! * `slt_j_p`, `sgt_j_p`, `seq_j_p` (binary): sign of `x_j_p`.
//!
//! Constraint families, in output order:
//!
//! 1. each evaluation in at most one level; each level at most `t` evaluations
//! 2. `x_j_p` equals the weighted sum of the `y_i_j`
//! 3. exactly one sign indicator is set
//! 4. `slt = 1` forces `x <= -1`
//! 5. `sgt = 1` forces `x >= 1`
//! 6. `seq = 1` forces `x >= 0`
//! 7. `seq = 1` forces `x <= 0`
//! 8. a level may oppose a statement only after some earlier level supports it
//! 9. every strict statement is supported by some level
//!
//! Big-M constants come from the bounds, and rely on integral evaluations:
//! the smallest positive difference is 1.

mod lp;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

pub use lp::{parse_lp, to_lp_string, write_lp};

use crate::error::{HclpError, Result};
use crate::model::HclpModel;
use crate::statement::PreferenceStatement;
use crate::structure::{Combiner, HclpStructure};

/// Tight bounds on the per-level difference of a statement: the sum of all
/// negative (resp. positive) per-evaluation differences.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    pub lower: i64,
    pub upper: i64,
}

fn differences<C: Combiner>(
    structure: &HclpStructure<C>,
    statement: &PreferenceStatement,
) -> Vec<i64> {
    let matrix = structure.matrix();
    (0..matrix.n())
        .map(|i| {
            matrix.value(i, statement.alpha()) as i64 - matrix.value(i, statement.beta()) as i64
        })
        .collect()
}

pub fn compute_bounds<C: Combiner>(
    structure: &HclpStructure<C>,
    statement: &PreferenceStatement,
) -> Result<Bounds> {
    if !structure.combiner().is_additive() {
        return Err(HclpError::UnsupportedCombiner);
    }
    structure.check_statement(statement)?;
    let diffs = differences(structure, statement);
    Ok(Bounds {
        lower: diffs.iter().filter(|&&d| d < 0).sum(),
        upper: diffs.iter().filter(|&&d| d > 0).sum(),
    })
}

/// What a variable stands for. The derived order is the variable order of
/// a built formulation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VarRole {
    Level { evaluation: usize, level: usize },
    Difference { level: usize, statement: usize },
    Supports { level: usize, statement: usize },
    Opposes { level: usize, statement: usize },
    Indifferent { level: usize, statement: usize },
}

impl VarRole {
    pub fn name(&self) -> String {
        self.to_string()
    }

    /// Inverse of [`VarRole::name`].
    pub fn parse(name: &str) -> Option<VarRole> {
        let mut parts = name.split('_');
        let prefix = parts.next()?;
        let a = parts.next()?.parse().ok()?;
        let b = parts.next()?.parse().ok()?;
        if parts.next().is_some() {
            return None;
        }
        Some(match prefix {
            "y" => VarRole::Level {
                evaluation: a,
                level: b,
            },
            "x" => VarRole::Difference {
                level: a,
                statement: b,
            },
            "slt" => VarRole::Supports {
                level: a,
                statement: b,
            },
            "sgt" => VarRole::Opposes {
                level: a,
                statement: b,
            },
            "seq" => VarRole::Indifferent {
                level: a,
                statement: b,
            },
            _ => return None,
        })
    }
}

impl fmt::Display for VarRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            VarRole::Level { evaluation, level } => write!(f, "y_{evaluation}_{level}"),
            VarRole::Difference { level, statement } => write!(f, "x_{level}_{statement}"),
            VarRole::Supports { level, statement } => write!(f, "slt_{level}_{statement}"),
            VarRole::Opposes { level, statement } => write!(f, "sgt_{level}_{statement}"),
            VarRole::Indifferent { level, statement } => write!(f, "seq_{level}_{statement}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VarKind {
    Binary,
    Integer,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Variable {
    pub role: VarRole,
    pub kind: VarKind,
    pub lower: i64,
    pub upper: i64,
}

impl Variable {
    pub fn name(&self) -> String {
        self.role.name()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Comparator {
    Le,
    Ge,
    Eq,
}

impl Comparator {
    pub fn holds(self, lhs: i64, rhs: i64) -> bool {
        match self {
            Comparator::Le => lhs <= rhs,
            Comparator::Ge => lhs >= rhs,
            Comparator::Eq => lhs == rhs,
        }
    }
}

impl fmt::Display for Comparator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Comparator::Le => "<=",
            Comparator::Ge => ">=",
            Comparator::Eq => "=",
        })
    }
}

/// `sum(coefficient * variable) comparator rhs`; terms refer to variable
/// positions and never carry a zero coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub name: String,
    pub terms: Vec<(usize, i64)>,
    pub comparator: Comparator,
    pub rhs: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MilpFormulation {
    n: usize,
    statements: usize,
    strict: usize,
    variables: Vec<Variable>,
    constraints: Vec<Constraint>,
    index: HashMap<VarRole, usize>,
}

struct Builder {
    variables: Vec<Variable>,
    constraints: Vec<Constraint>,
    index: HashMap<VarRole, usize>,
}

impl Builder {
    fn var(&mut self, role: VarRole, kind: VarKind, lower: i64, upper: i64) {
        self.index.insert(role, self.variables.len());
        self.variables.push(Variable {
            role,
            kind,
            lower,
            upper,
        });
    }

    fn add(
        &mut self,
        terms: impl IntoIterator<Item = (VarRole, i64)>,
        comparator: Comparator,
        rhs: i64,
    ) {
        let terms = terms
            .into_iter()
            .filter(|&(_, c)| c != 0)
            .map(|(role, c)| (self.index[&role], c))
            .collect();
        self.constraints.push(Constraint {
            name: format!("c{}", self.constraints.len()),
            terms,
            comparator,
            rhs,
        });
    }
}

impl MilpFormulation {
    /// Builds the formulation for `statements` with level sets bounded by `t`.
    pub fn build<C: Combiner>(
        structure: &HclpStructure<C>,
        statements: &[PreferenceStatement],
        t: usize,
    ) -> Result<Self> {
        if !structure.combiner().is_additive() {
            return Err(HclpError::UnsupportedCombiner);
        }
        let n = structure.n();
        let g = statements.len();
        let bounds = statements
            .iter()
            .map(|s| compute_bounds(structure, s))
            .collect::<Result<Vec<_>>>()?;
        let diffs: Vec<Vec<i64>> = statements
            .iter()
            .map(|s| differences(structure, s))
            .collect();

        let mut b = Builder {
            variables: Vec::with_capacity(n * n + 4 * n * g),
            constraints: Vec::with_capacity(2 * n + 7 * n * g + g),
            index: HashMap::new(),
        };
        for evaluation in 0..n {
            for level in 0..n {
                b.var(VarRole::Level { evaluation, level }, VarKind::Binary, 0, 1);
            }
        }
        let level_statement = || (0..n).flat_map(move |level| (0..g).map(move |p| (level, p)));
        for (level, statement) in level_statement() {
            let Bounds { lower, upper } = bounds[statement];
            b.var(
                VarRole::Difference { level, statement },
                VarKind::Integer,
                lower,
                upper,
            );
        }
        for (level, statement) in level_statement() {
            b.var(
                VarRole::Supports { level, statement },
                VarKind::Binary,
                0,
                1,
            );
        }
        for (level, statement) in level_statement() {
            b.var(VarRole::Opposes { level, statement }, VarKind::Binary, 0, 1);
        }
        for (level, statement) in level_statement() {
            b.var(
                VarRole::Indifferent { level, statement },
                VarKind::Binary,
                0,
                1,
            );
        }

        let y = |evaluation, level| VarRole::Level { evaluation, level };
        let x = |level, statement| VarRole::Difference { level, statement };
        let slt = |level, statement| VarRole::Supports { level, statement };
        let sgt = |level, statement| VarRole::Opposes { level, statement };
        let seq = |level, statement| VarRole::Indifferent { level, statement };

        // (1)
        for i in 0..n {
            b.add((0..n).map(|j| (y(i, j), 1)), Comparator::Le, 1);
            b.add((0..n).map(|j| (y(j, i), 1)), Comparator::Le, t as i64);
        }
        // (2)
        for (j, p) in level_statement() {
            let terms = (0..n)
                .map(|i| (y(i, j), diffs[p][i]))
                .chain(std::iter::once((x(j, p), -1)));
            b.add(terms, Comparator::Eq, 0);
        }
        // (3)
        for (j, p) in level_statement() {
            b.add(
                [(slt(j, p), 1), (sgt(j, p), 1), (seq(j, p), 1)],
                Comparator::Eq,
                1,
            );
        }
        // (4)
        for (j, p) in level_statement() {
            let hi = bounds[p].upper;
            b.add([(x(j, p), 1), (slt(j, p), hi + 1)], Comparator::Le, hi);
        }
        // (5)
        for (j, p) in level_statement() {
            let lo = bounds[p].lower;
            b.add([(x(j, p), 1), (sgt(j, p), lo - 1)], Comparator::Ge, lo);
        }
        // (6)
        for (j, p) in level_statement() {
            let lo = bounds[p].lower;
            b.add([(x(j, p), 1), (seq(j, p), lo)], Comparator::Ge, lo);
        }
        // (7)
        for (j, p) in level_statement() {
            let hi = bounds[p].upper;
            b.add([(x(j, p), 1), (seq(j, p), hi)], Comparator::Le, hi);
        }
        // (8)
        for (i, p) in level_statement() {
            let terms = (0..i)
                .map(|j| (slt(j, p), 1))
                .chain(std::iter::once((sgt(i, p), -1)));
            b.add(terms, Comparator::Ge, 0);
        }
        // (9)
        let mut strict = 0;
        for (p, statement) in statements.iter().enumerate() {
            if statement.is_strict() {
                strict += 1;
                b.add((0..n).map(|j| (slt(j, p), 1)), Comparator::Ge, 1);
            }
        }

        Ok(MilpFormulation {
            n,
            statements: g,
            strict,
            variables: b.variables,
            constraints: b.constraints,
            index: b.index,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn statement_count(&self) -> usize {
        self.statements
    }

    pub fn strict_count(&self) -> usize {
        self.strict
    }

    pub fn variables(&self) -> &[Variable] {
        &self.variables
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn variable(&self, role: &VarRole) -> Option<&Variable> {
        self.index.get(role).map(|&k| &self.variables[k])
    }

    /// Which of the nine constraint families constraint `k` belongs to.
    pub fn family(&self, k: usize) -> u8 {
        let ng = self.n * self.statements;
        if k < 2 * self.n {
            1
        } else if k < 2 * self.n + 7 * ng {
            2 + ((k - 2 * self.n) / ng) as u8
        } else {
            9
        }
    }

    /// Reassembles a formulation from parsed parts, checking that the
    /// variables form a complete layout.
    fn from_parts(mut variables: Vec<Variable>, constraints: Vec<Constraint>) -> Result<Self> {
        let invalid = |msg: &str| HclpError::parse(0, 0, msg);
        // Terms refer to positions in `variables`; remap them after sorting.
        let mut order: Vec<usize> = (0..variables.len()).collect();
        order.sort_by_key(|&k| variables[k].role);
        let mut position = vec![0; variables.len()];
        for (new, &old) in order.iter().enumerate() {
            position[old] = new;
        }
        variables.sort_by_key(|v| v.role);
        let constraints: Vec<Constraint> = constraints
            .into_iter()
            .map(|c| Constraint {
                terms: c
                    .terms
                    .into_iter()
                    .map(|(k, coef)| (position[k], coef))
                    .collect(),
                ..c
            })
            .collect();

        let levels = variables
            .iter()
            .filter(|v| matches!(v.role, VarRole::Level { .. }))
            .count();
        let n = (levels as f64).sqrt().round() as usize;
        if n == 0 || n * n != levels {
            return Err(invalid("level variables do not form a square matrix"));
        }
        let rest = variables.len() - levels;
        if rest % (4 * n) != 0 {
            return Err(invalid("statement variables do not form complete blocks"));
        }
        let statements = rest / (4 * n);
        let base = 2 * n + 7 * n * statements;
        if constraints.len() < base || constraints.len() > base + statements {
            return Err(invalid(
                "constraint count does not match the variable layout",
            ));
        }
        let index: HashMap<VarRole, usize> = variables
            .iter()
            .enumerate()
            .map(|(k, v)| (v.role, k))
            .collect();
        let expected = (0..n)
            .flat_map(|e| {
                (0..n).map(move |l| VarRole::Level {
                    evaluation: e,
                    level: l,
                })
            })
            .chain((0..n).flat_map(|l| {
                (0..statements).flat_map(move |p| {
                    [
                        VarRole::Difference {
                            level: l,
                            statement: p,
                        },
                        VarRole::Supports {
                            level: l,
                            statement: p,
                        },
                        VarRole::Opposes {
                            level: l,
                            statement: p,
                        },
                        VarRole::Indifferent {
                            level: l,
                            statement: p,
                        },
                    ]
                })
            }));
        for role in expected {
            if !index.contains_key(&role) {
                return Err(invalid(&format!("missing variable {role}")));
            }
        }
        Ok(MilpFormulation {
            n,
            statements,
            strict: constraints.len() - base,
            variables,
            constraints,
            index,
        })
    }
}

/// Integer values for named variables.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Assignment(BTreeMap<String, i64>);

impl Assignment {
    pub fn new() -> Self {
        Assignment::default()
    }

    pub fn get(&self, name: &str) -> Option<i64> {
        self.0.get(name).copied()
    }

    pub fn set(&mut self, name: impl Into<String>, value: i64) {
        self.0.insert(name.into(), value);
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, i64)> {
        self.0.iter().map(|(k, &v)| (k.as_str(), v))
    }
}

/// The variable assignment encoding `model`: its levels occupy positions
/// `0..k`, the remaining positions stay empty.
pub fn assignment_from_model<C: Combiner>(
    structure: &HclpStructure<C>,
    model: &HclpModel,
    statements: &[PreferenceStatement],
    t: usize,
) -> Result<Assignment> {
    if !structure.combiner().is_additive() {
        return Err(HclpError::UnsupportedCombiner);
    }
    let n = structure.n();
    if let Err(violations) = model.validate(t, n) {
        let text = violations
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>();
        return Err(HclpError::InvalidModel(text.join("; ")));
    }
    for statement in statements {
        structure.check_statement(statement)?;
    }
    let levels = model.levels();
    let mut a = Assignment::new();
    for evaluation in 0..n {
        for level in 0..n {
            let inside = levels.get(level).is_some_and(|l| l.contains(evaluation));
            a.set(VarRole::Level { evaluation, level }.name(), inside as i64);
        }
    }
    for (statement, s) in statements.iter().enumerate() {
        let diffs = differences(structure, s);
        for level in 0..n {
            let x: i64 = levels
                .get(level)
                .map_or(0, |l| l.iter().map(|i| diffs[i]).sum());
            a.set(VarRole::Difference { level, statement }.name(), x);
            a.set(
                VarRole::Supports { level, statement }.name(),
                (x < 0) as i64,
            );
            a.set(VarRole::Opposes { level, statement }.name(), (x > 0) as i64);
            a.set(
                VarRole::Indifferent { level, statement }.name(),
                (x == 0) as i64,
            );
        }
    }
    Ok(a)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Constraint {
        name: String,
        family: u8,
        lhs: i64,
        comparator: Comparator,
        rhs: i64,
    },
    Bound {
        variable: String,
        value: i64,
        lower: i64,
        upper: i64,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Constraint {
                name,
                family,
                lhs,
                comparator,
                rhs,
            } => write!(
                f,
                "{name} (family {family}): {lhs} {comparator} {rhs} fails"
            ),
            Violation::Bound {
                variable,
                value,
                lower,
                upper,
            } => write!(f, "{variable} = {value} outside [{lower}, {upper}]"),
        }
    }
}

/// Evaluates every bound and constraint in exact integer arithmetic.
/// An empty list means the assignment is feasible.
pub fn check_assignment(
    formulation: &MilpFormulation,
    assignment: &Assignment,
) -> Result<Vec<Violation>> {
    let values = formulation
        .variables
        .iter()
        .map(|v| {
            let name = v.name();
            assignment
                .get(&name)
                .ok_or(HclpError::MissingVariable(name))
        })
        .collect::<Result<Vec<i64>>>()?;
    let mut violations = Vec::new();
    for (v, &value) in formulation.variables.iter().zip(&values) {
        if value < v.lower || value > v.upper {
            violations.push(Violation::Bound {
                variable: v.name(),
                value,
                lower: v.lower,
                upper: v.upper,
            });
        }
    }
    for (k, c) in formulation.constraints.iter().enumerate() {
        let lhs: i64 = c.terms.iter().map(|&(var, coef)| coef * values[var]).sum();
        if !c.comparator.holds(lhs, c.rhs) {
            violations.push(Violation::Constraint {
                name: c.name.clone(),
                family: formulation.family(k),
                lhs,
                comparator: c.comparator,
                rhs: c.rhs,
            });
        }
    }
    Ok(violations)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::fixtures::*;

    #[test]
    fn bounds_examples() {
        let d = dessert();
        let ic_lt_ap = PreferenceStatement::strict(IC, AP).unwrap();
        assert_eq!(
            compute_bounds(&d, &ic_lt_ap),
            Ok(Bounds {
                lower: -7,
                upper: 5
            })
        );
        let c = chain();
        assert_eq!(
            compute_bounds(&c, &chain_gamma()[2]),
            Ok(Bounds {
                lower: -1,
                upper: 1
            })
        );
        let flat = HclpStructure::additive(
            crate::structure::EvaluationMatrix::from_rows(&[[3, 3], [1, 1]]).unwrap(),
        );
        let s = PreferenceStatement::strict(0, 1).unwrap();
        assert_eq!(compute_bounds(&flat, &s), Ok(Bounds { lower: 0, upper: 0 }));
    }

    /// Addition that does not declare itself additive.
    struct Opaque;

    impl Combiner for Opaque {
        fn identity(&self) -> u64 {
            0
        }
        fn combine(&self, x: u64, y: u64) -> Option<u64> {
            x.checked_add(y)
        }
    }

    #[test]
    fn non_additive_combiner_rejected() {
        let s = HclpStructure::new(dessert().matrix().clone(), Opaque).unwrap();
        let phi = PreferenceStatement::strict(IC, AP).unwrap();
        assert_eq!(
            compute_bounds(&s, &phi),
            Err(HclpError::UnsupportedCombiner)
        );
        assert_eq!(
            MilpFormulation::build(&s, &[phi], 2).err(),
            Some(HclpError::UnsupportedCombiner)
        );
    }

    #[test]
    fn counts() {
        let f = MilpFormulation::build(&chain(), &chain_gamma(), 3).unwrap();
        assert_eq!(f.variables().len(), 85);
        assert_eq!(f.constraints().len(), 116);
        let f = MilpFormulation::build(&dessert(), &dessert_gamma(), 2).unwrap();
        assert_eq!(f.variables().len(), 33);
        assert_eq!(f.constraints().len(), 49);
        let f = MilpFormulation::build(&dessert(), &[], 2).unwrap();
        assert_eq!(f.variables().len(), 9);
        assert_eq!(f.constraints().len(), 6);
        assert!((0..6).all(|k| f.family(k) == 1));
    }

    #[test]
    fn families_partition_constraints() {
        let f = MilpFormulation::build(&chain(), &chain_gamma(), 3).unwrap();
        let mut per_family = [0usize; 10];
        for k in 0..f.constraints().len() {
            per_family[f.family(k) as usize] += 1;
        }
        assert_eq!(per_family, [0, 10, 15, 15, 15, 15, 15, 15, 15, 1]);
    }

    #[test]
    fn dessert_witness_assignment() {
        let d = dessert();
        let gamma = dessert_gamma();
        let witness = HclpModel::singletons([S, F, C]);
        let a = assignment_from_model(&d, &witness, &gamma, 1).unwrap();
        assert_eq!(a.get("y_1_0"), Some(1));
        assert_eq!(a.get("y_2_1"), Some(1));
        assert_eq!(a.get("y_0_2"), Some(1));
        assert_eq!(a.get("x_0_0"), Some(-7));
        assert_eq!(a.get("slt_0_0"), Some(1));
        let f = MilpFormulation::build(&d, &gamma, 1).unwrap();
        assert_eq!(check_assignment(&f, &a), Ok(vec![]));
    }

    #[test]
    fn empty_model_without_statements() {
        let d = dessert();
        let a = assignment_from_model(&d, &HclpModel::empty(), &[], 1).unwrap();
        assert_eq!(a.len(), 9);
        assert!(a.iter().all(|(_, v)| v == 0));
    }

    #[test]
    fn chain_partial_model_values() {
        let c = chain();
        let h = HclpModel::new([set(&[1]), set(&[0]), set(&[2, 4])]);
        let a = assignment_from_model(&c, &h, &chain_gamma(), 3).unwrap();
        assert_eq!(a.get("x_2_1"), Some(0));
        assert_eq!(a.get("seq_2_1"), Some(1));
    }

    #[test]
    fn forced_violations() {
        let d = dessert();
        let gamma = dessert_gamma();
        let f = MilpFormulation::build(&d, &gamma, 1).unwrap();
        let base = assignment_from_model(&d, &HclpModel::singletons([S, F, C]), &gamma, 1).unwrap();

        let mut twice = base.clone();
        twice.set("y_1_2", 1);
        let v = check_assignment(&f, &twice).unwrap();
        assert!(v
            .iter()
            .any(|v| matches!(v, Violation::Constraint { family: 1, .. })));

        let mut unsupported = base.clone();
        for level in 0..3 {
            unsupported.set(format!("slt_{level}_0"), 0);
        }
        let v = check_assignment(&f, &unsupported).unwrap();
        assert!(v
            .iter()
            .any(|v| matches!(v, Violation::Constraint { family: 9, .. })));

        let mut missing = Assignment::new();
        missing.set("y_0_0", 0);
        assert!(matches!(
            check_assignment(&f, &missing),
            Err(HclpError::MissingVariable(_))
        ));
    }

    #[test]
    fn invalid_model_rejected() {
        let d = dessert();
        let h = HclpModel::new([set(&[C, S])]);
        assert!(matches!(
            assignment_from_model(&d, &h, &dessert_gamma(), 1),
            Err(HclpError::InvalidModel(_))
        ));
    }

    #[test]
    fn role_names_round_trip() {
        for role in [
            VarRole::Level {
                evaluation: 3,
                level: 0,
            },
            VarRole::Difference {
                level: 1,
                statement: 12,
            },
            VarRole::Supports {
                level: 0,
                statement: 0,
            },
            VarRole::Opposes {
                level: 4,
                statement: 2,
            },
            VarRole::Indifferent {
                level: 9,
                statement: 9,
            },
        ] {
            assert_eq!(VarRole::parse(&role.name()), Some(role));
        }
        assert_eq!(VarRole::parse("z_1_2"), None);
        assert_eq!(VarRole::parse("y_1"), None);
        assert_eq!(VarRole::parse("y_1_2_3"), None);
    }
}
