//! Evaluation matrices, combiners and the order relations they induce.

use std::cmp::Ordering;

use crate::error::{HclpError, Result};
use crate::model::{HclpModel, LevelSet, MAX_EVALUATIONS};
use crate::statement::PreferenceStatement;

/// `n` evaluation functions over `m` alternatives. Row `i` holds the values
/// of evaluation `i`; lower values are better.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvaluationMatrix {
    n: usize,
    m: usize,
    values: Vec<u32>,
}

impl EvaluationMatrix {
    /// Builds a matrix from row-major `values` (`n * m` entries).
    pub fn new(n: usize, m: usize, values: Vec<u32>) -> Result<Self> {
        if n == 0 || m == 0 {
            return Err(HclpError::EmptyMatrix);
        }
        if n > MAX_EVALUATIONS {
            return Err(HclpError::TooManyEvaluations(n));
        }
        if values.len() != n * m {
            return Err(HclpError::ShapeMismatch {
                expected: n * m,
                got: values.len(),
            });
        }
        Ok(EvaluationMatrix { n, m, values })
    }

    pub fn from_rows<R: AsRef<[u32]>>(rows: &[R]) -> Result<Self> {
        let m = rows.first().map_or(0, |row| row.as_ref().len());
        let values: Vec<u32> = rows
            .iter()
            .flat_map(|row| row.as_ref().iter().copied())
            .collect();
        if rows.iter().any(|row| row.as_ref().len() != m) {
            return Err(HclpError::ShapeMismatch {
                expected: rows.len() * m,
                got: values.len(),
            });
        }
        Self::new(rows.len(), m, values)
    }

    /// Number of evaluation functions.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of alternatives.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn value(&self, evaluation: usize, alternative: usize) -> u32 {
        self.values[evaluation * self.m + alternative]
    }

    pub fn row(&self, evaluation: usize) -> &[u32] {
        &self.values[evaluation * self.m..(evaluation + 1) * self.m]
    }

    pub fn max_value(&self) -> u32 {
        self.values.iter().copied().max().unwrap_or(0)
    }
}

/// An associative, commutative, strictly monotonic operation on
/// non-negative integers: `combine(x, y) < combine(z, y)` iff `x < z`.
///
/// The identity must be the smallest value the combiner is applied to, so
/// that combining more evaluations never decreases the result. `combine`
/// returns `None` on overflow.
pub trait Combiner {
    fn identity(&self) -> u64;

    fn combine(&self, x: u64, y: u64) -> Option<u64>;

    /// Whether this is plain integer addition, which the MILP export needs.
    fn is_additive(&self) -> bool {
        false
    }
}

/// Integer addition with identity 0.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Addition;

impl Combiner for Addition {
    fn identity(&self) -> u64 {
        0
    }

    fn combine(&self, x: u64, y: u64) -> Option<u64> {
        x.checked_add(y)
    }

    fn is_additive(&self) -> bool {
        true
    }
}

/// Alternatives, a combiner and evaluation functions.
#[derive(Debug, Clone)]
pub struct HclpStructure<C = Addition> {
    matrix: EvaluationMatrix,
    combiner: C,
}

impl HclpStructure<Addition> {
    pub fn additive(matrix: EvaluationMatrix) -> Self {
        // u32 values over at most 64 rows cannot overflow a u64 sum.
        HclpStructure {
            matrix,
            combiner: Addition,
        }
    }
}

impl<C: Combiner> HclpStructure<C> {
    /// Fails with [`HclpError::Overflow`] when combining all evaluations of
    /// some alternative overflows; every level set is then safe to combine.
    pub fn new(matrix: EvaluationMatrix, combiner: C) -> Result<Self> {
        for alternative in 0..matrix.m() {
            (0..matrix.n()).try_fold(combiner.identity(), |acc, i| {
                combiner
                    .combine(acc, matrix.value(i, alternative) as u64)
                    .ok_or(HclpError::Overflow { alternative })
            })?;
        }
        Ok(HclpStructure { matrix, combiner })
    }

    pub fn matrix(&self) -> &EvaluationMatrix {
        &self.matrix
    }

    pub fn combiner(&self) -> &C {
        &self.combiner
    }

    pub fn n(&self) -> usize {
        self.matrix.n()
    }

    pub fn m(&self) -> usize {
        self.matrix.m()
    }

    #[inline]
    pub(crate) fn step(&self, acc: u64, evaluation: usize, alternative: usize) -> u64 {
        self.combiner
            .combine(acc, self.matrix.value(evaluation, alternative) as u64)
            .expect("combined values are bounded by the full combination")
    }

    #[inline]
    pub(crate) fn fold(&self, set: LevelSet, alternative: usize) -> u64 {
        set.iter().fold(self.combiner.identity(), |acc, i| {
            self.step(acc, i, alternative)
        })
    }

    #[inline]
    pub(crate) fn order(&self, set: LevelSet, a: usize, b: usize) -> Ordering {
        self.fold(set, a).cmp(&self.fold(set, b))
    }

    pub(crate) fn check_set(&self, set: LevelSet) -> Result<()> {
        match set.difference(LevelSet::full(self.n())).first() {
            Some(index) => Err(HclpError::EvaluationOutOfRange { index, n: self.n() }),
            None => Ok(()),
        }
    }

    pub(crate) fn check_alternative(&self, index: usize) -> Result<()> {
        if index < self.m() {
            Ok(())
        } else {
            Err(HclpError::AlternativeOutOfRange { index, m: self.m() })
        }
    }

    pub(crate) fn check_statement(&self, statement: &PreferenceStatement) -> Result<()> {
        self.check_alternative(statement.alpha())?;
        self.check_alternative(statement.beta())
    }

    pub(crate) fn check_model(&self, model: &HclpModel) -> Result<()> {
        self.check_set(model.support())
    }

    /// Combined value of `alternative` over the evaluations in `set`; the
    /// identity for the empty set.
    pub fn combine_level(&self, set: LevelSet, alternative: usize) -> Result<u64> {
        self.check_set(set)?;
        self.check_alternative(alternative)?;
        Ok(self.fold(set, alternative))
    }

    /// Compares `a` and `b` on the combined values of `set`. `Less` means
    /// `a` is strictly better.
    pub fn compare_on_set(&self, set: LevelSet, a: usize, b: usize) -> Result<Ordering> {
        self.check_set(set)?;
        self.check_alternative(a)?;
        self.check_alternative(b)?;
        Ok(self.order(set, a, b))
    }

    pub(crate) fn model_order(&self, model: &HclpModel, a: usize, b: usize) -> Ordering {
        model
            .levels()
            .iter()
            .map(|&level| self.order(level, a, b))
            .find(|&o| o != Ordering::Equal)
            .unwrap_or(Ordering::Equal)
    }

    /// Lexicographic comparison: the first level that distinguishes `a` and
    /// `b` decides; `Equal` if none does.
    pub fn model_compare(&self, model: &HclpModel, a: usize, b: usize) -> Result<Ordering> {
        self.check_model(model)?;
        self.check_alternative(a)?;
        self.check_alternative(b)?;
        Ok(self.model_order(model, a, b))
    }

    pub(crate) fn holds(&self, model: &HclpModel, statement: &PreferenceStatement) -> bool {
        match self.model_order(model, statement.alpha(), statement.beta()) {
            Ordering::Less => true,
            Ordering::Equal => !statement.is_strict(),
            Ordering::Greater => false,
        }
    }

    pub fn satisfies(&self, model: &HclpModel, statement: &PreferenceStatement) -> Result<bool> {
        self.check_model(model)?;
        self.check_statement(statement)?;
        Ok(self.holds(model, statement))
    }

    pub fn satisfies_all(
        &self,
        model: &HclpModel,
        statements: &[PreferenceStatement],
    ) -> Result<bool> {
        self.check_model(model)?;
        for statement in statements {
            self.check_statement(statement)?;
        }
        Ok(statements.iter().all(|s| self.holds(model, s)))
    }

    /// Statements whose two alternatives the model does not distinguish.
    pub fn tied_statements(
        &self,
        model: &HclpModel,
        statements: &[PreferenceStatement],
    ) -> Result<Vec<PreferenceStatement>> {
        self.check_model(model)?;
        for statement in statements {
            self.check_statement(statement)?;
        }
        Ok(statements
            .iter()
            .filter(|s| self.model_order(model, s.alpha(), s.beta()) == Ordering::Equal)
            .copied()
            .collect())
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    pub const AP: usize = 0;
    pub const CC: usize = 1;
    pub const IC: usize = 2;
    pub const C: usize = 0;
    pub const S: usize = 1;
    pub const F: usize = 2;

    /// Calories, sugar and fat of apple pie, chocolate cake and ice cream.
    pub fn dessert() -> HclpStructure {
        HclpStructure::additive(
            EvaluationMatrix::from_rows(&[[10, 13, 11], [23, 23, 16], [20, 17, 24]]).unwrap(),
        )
    }

    /// IC < AP, CC <= AP
    pub fn dessert_gamma() -> Vec<PreferenceStatement> {
        vec![
            PreferenceStatement::strict(IC, AP).unwrap(),
            PreferenceStatement::non_strict(CC, AP).unwrap(),
        ]
    }

    /// Five evaluations over alternatives alpha..delta (0..3).
    pub fn chain() -> HclpStructure {
        HclpStructure::additive(
            EvaluationMatrix::from_rows(&[
                [1, 0, 0, 0],
                [0, 2, 2, 2],
                [1, 1, 0, 1],
                [0, 2, 1, 1],
                [2, 0, 1, 0],
            ])
            .unwrap(),
        )
    }

    /// alpha <= beta, beta <= gamma, gamma < delta
    pub fn chain_gamma() -> Vec<PreferenceStatement> {
        vec![
            PreferenceStatement::non_strict(0, 1).unwrap(),
            PreferenceStatement::non_strict(1, 2).unwrap(),
            PreferenceStatement::strict(2, 3).unwrap(),
        ]
    }

    pub fn set(indices: &[usize]) -> LevelSet {
        indices.iter().copied().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use Ordering::*;

    #[test]
    fn combine_level_values() {
        let d = dessert();
        assert_eq!(d.combine_level(set(&[F, S]), AP), Ok(43));
        assert_eq!(d.combine_level(set(&[F, S]), CC), Ok(40));
        assert_eq!(d.combine_level(set(&[F, S]), IC), Ok(40));
        assert_eq!(d.combine_level(LevelSet::EMPTY, AP), Ok(0));
        assert_eq!(d.combine_level(set(&[C, S, F]), IC), Ok(51));
    }

    #[test]
    fn index_errors() {
        let d = dessert();
        assert_eq!(
            d.combine_level(set(&[3]), AP),
            Err(HclpError::EvaluationOutOfRange { index: 3, n: 3 })
        );
        assert_eq!(
            d.compare_on_set(set(&[C]), AP, 7),
            Err(HclpError::AlternativeOutOfRange { index: 7, m: 3 })
        );
    }

    #[test]
    fn compare_on_set_examples() {
        let d = dessert();
        assert_eq!(d.compare_on_set(set(&[F, S]), IC, CC), Ok(Equal));
        assert_eq!(d.compare_on_set(set(&[C]), IC, CC), Ok(Less));
        assert_eq!(d.compare_on_set(LevelSet::EMPTY, AP, CC), Ok(Equal));
    }

    #[test]
    fn model_compare_examples() {
        let d = dessert();
        let h = HclpModel::new([set(&[F, S]), set(&[C])]);
        assert_eq!(d.model_compare(&h, IC, CC), Ok(Less));
        assert_eq!(d.model_compare(&h, IC, AP), Ok(Less));
        assert_eq!(d.model_compare(&h, CC, AP), Ok(Less));
        assert_eq!(d.model_compare(&HclpModel::empty(), AP, IC), Ok(Equal));
        // c+s gives CC 36 and AP 33.
        let h = HclpModel::new([set(&[C, S]), set(&[F])]);
        assert_eq!(d.model_compare(&h, CC, AP), Ok(Greater));
    }

    #[test]
    fn satisfies_examples() {
        let d = dessert();
        let h = HclpModel::new([set(&[F, S]), set(&[C])]);
        let ic_lt_ap = PreferenceStatement::strict(IC, AP).unwrap();
        assert_eq!(d.satisfies(&h, &ic_lt_ap), Ok(true));
        let empty = HclpModel::empty();
        assert_eq!(d.satisfies(&empty, &ic_lt_ap.relaxed()), Ok(true));
        assert_eq!(d.satisfies(&empty, &ic_lt_ap), Ok(false));
        assert_eq!(
            d.satisfies(&HclpModel::singletons([C]), &ic_lt_ap),
            Ok(false)
        );
    }

    #[test]
    fn satisfies_all_examples() {
        let d = dessert();
        let h = HclpModel::new([set(&[F, S]), set(&[C])]);
        assert_eq!(d.satisfies_all(&h, &dessert_gamma()), Ok(true));
        assert_eq!(d.satisfies_all(&h, &[]), Ok(true));
        let c = chain();
        assert_eq!(
            c.satisfies_all(&HclpModel::singletons([1, 0]), &chain_gamma()),
            Ok(false)
        );
    }

    #[test]
    fn tied_statements_examples() {
        let c = chain();
        let gamma = chain_gamma();
        assert_eq!(
            c.tied_statements(&HclpModel::singletons([1]), &gamma),
            Ok(vec![gamma[1], gamma[2]])
        );
        assert_eq!(
            c.tied_statements(&HclpModel::empty(), &gamma),
            Ok(gamma.clone())
        );
        let d = dessert();
        let h = HclpModel::new([set(&[F, S]), set(&[C])]);
        assert_eq!(d.tied_statements(&h, &dessert_gamma()), Ok(vec![]));
    }

    #[test]
    fn matrix_shape_errors() {
        assert_eq!(
            EvaluationMatrix::new(0, 3, vec![]),
            Err(HclpError::EmptyMatrix)
        );
        assert_eq!(
            EvaluationMatrix::new(2, 2, vec![1, 2, 3]),
            Err(HclpError::ShapeMismatch {
                expected: 4,
                got: 3
            })
        );
        assert_eq!(
            EvaluationMatrix::new(65, 1, vec![0; 65]),
            Err(HclpError::TooManyEvaluations(65))
        );
        assert!(EvaluationMatrix::from_rows(&[vec![1, 2], vec![3]]).is_err());
    }

    /// Addition that overflows past 100.
    struct Tiny;

    impl Combiner for Tiny {
        fn identity(&self) -> u64 {
            0
        }
        fn combine(&self, x: u64, y: u64) -> Option<u64> {
            let s = x.checked_add(y)?;
            (s <= 100).then_some(s)
        }
    }

    #[test]
    fn overflow_is_reported() {
        let matrix = EvaluationMatrix::from_rows(&[[60, 1], [60, 1]]).unwrap();
        assert_eq!(
            HclpStructure::new(matrix.clone(), Tiny).err(),
            Some(HclpError::Overflow { alternative: 0 })
        );
        let ok = EvaluationMatrix::from_rows(&[[40, 1], [60, 1]]).unwrap();
        assert!(HclpStructure::new(ok, Tiny).is_ok());
        let wide = EvaluationMatrix::new(64, 1, vec![u32::MAX; 64]).unwrap();
        assert!(HclpStructure::new(wide, Addition).is_ok());
    }
}
