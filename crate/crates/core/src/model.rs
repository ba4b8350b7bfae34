//! Level sets and HCLP models.

use std::fmt;

use itertools::Itertools;

use crate::error::{HclpError, Result};

/// Largest number of evaluations a level set can address.
pub const MAX_EVALUATIONS: usize = 64;

/// A set of evaluation indices, stored as a bitmask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LevelSet(u64);

impl LevelSet {
    pub const EMPTY: LevelSet = LevelSet(0);

    pub const fn from_bits(bits: u64) -> Self {
        LevelSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// The set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        assert!(
            n <= MAX_EVALUATIONS,
            "level sets hold at most 64 evaluations"
        );
        if n == MAX_EVALUATIONS {
            LevelSet(u64::MAX)
        } else {
            LevelSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(index: usize) -> Self {
        assert!(
            index < MAX_EVALUATIONS,
            "evaluation index {index} exceeds 63"
        );
        LevelSet(1u64 << index)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, index: usize) -> bool {
        index < MAX_EVALUATIONS && self.0 & (1u64 << index) != 0
    }

    pub fn insert(&mut self, index: usize) {
        *self = self.union(LevelSet::singleton(index));
    }

    pub fn is_subset(self, other: LevelSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: LevelSet) -> bool {
        self.0 & other.0 == 0
    }

    pub fn union(self, other: LevelSet) -> LevelSet {
        LevelSet(self.0 | other.0)
    }

    pub fn intersection(self, other: LevelSet) -> LevelSet {
        LevelSet(self.0 & other.0)
    }

    pub fn difference(self, other: LevelSet) -> LevelSet {
        LevelSet(self.0 & !other.0)
    }

    /// Smallest index in the set.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Indices in ascending order.
    pub fn iter(self) -> Indices {
        Indices(self.0)
    }
}

impl FromIterator<usize> for LevelSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        iter.into_iter()
            .fold(LevelSet::EMPTY, |set, i| set.union(LevelSet::singleton(i)))
    }
}

impl IntoIterator for LevelSet {
    type Item = usize;
    type IntoIter = Indices;

    fn into_iter(self) -> Indices {
        self.iter()
    }
}

pub struct Indices(u64);

impl Iterator for Indices {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let index = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(index)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Indices {}

impl fmt::Debug for LevelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.iter().format(","))
    }
}

/// An ordered sequence of level sets, most important first.
///
/// Empty level sets do not change the induced order, so the model never
/// stores them. Disjointness is not enforced on construction; see
/// [`HclpModel::validate`].
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct HclpModel {
    levels: Vec<LevelSet>,
}

/// One way a model can fail [`HclpModel::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModelViolation {
    IndexOutOfRange {
        level: usize,
        index: usize,
    },
    Overlap {
        level: usize,
        earlier: usize,
        index: usize,
    },
    LevelTooLarge {
        level: usize,
        size: usize,
        bound: usize,
    },
}

impl fmt::Display for ModelViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelViolation::IndexOutOfRange { level, index } => {
                write!(f, "level {level} contains unknown evaluation {index}")
            }
            ModelViolation::Overlap {
                level,
                earlier,
                index,
            } => write!(
                f,
                "evaluation {index} appears in level {earlier} and level {level}"
            ),
            ModelViolation::LevelTooLarge { level, size, bound } => {
                write!(f, "level {level} has {size} evaluations, bound is {bound}")
            }
        }
    }
}

impl HclpModel {
    /// The empty model `()`.
    pub fn empty() -> Self {
        HclpModel::default()
    }

    pub fn new(levels: impl IntoIterator<Item = LevelSet>) -> Self {
        HclpModel {
            levels: levels.into_iter().filter(|l| !l.is_empty()).collect(),
        }
    }

    /// A model made of one singleton level per index, in the given order.
    pub fn singletons(indices: impl IntoIterator<Item = usize>) -> Self {
        HclpModel::new(indices.into_iter().map(LevelSet::singleton))
    }

    pub fn levels(&self) -> &[LevelSet] {
        &self.levels
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    /// Appends a level; empty sets are ignored.
    pub fn push(&mut self, level: LevelSet) {
        if !level.is_empty() {
            self.levels.push(level);
        }
    }

    /// All evaluations used by the model.
    pub fn support(&self) -> LevelSet {
        self.levels
            .iter()
            .fold(LevelSet::EMPTY, |acc, &level| acc.union(level))
    }

    /// Size of the largest level, 0 for the empty model.
    pub fn max_level_size(&self) -> usize {
        self.levels.iter().map(|l| l.len()).max().unwrap_or(0)
    }

    /// `self ∘ other`: the levels of `self` followed by the levels of
    /// `other` with every evaluation of `self` removed.
    pub fn compose(&self, other: &HclpModel) -> HclpModel {
        let used = self.support();
        let mut levels = self.levels.clone();
        levels.extend(
            other
                .levels
                .iter()
                .map(|level| level.difference(used))
                .filter(|level| !level.is_empty()),
        );
        HclpModel { levels }
    }

    /// Checks index range, pairwise disjointness and the level-size bound `t`.
    pub fn validate(&self, t: usize, n: usize) -> Result<(), Vec<ModelViolation>> {
        let mut violations = Vec::new();
        let mut owner = [usize::MAX; MAX_EVALUATIONS];
        for (level, set) in self.levels.iter().enumerate() {
            if set.len() > t {
                violations.push(ModelViolation::LevelTooLarge {
                    level,
                    size: set.len(),
                    bound: t,
                });
            }
            for index in set.iter() {
                if index >= n {
                    violations.push(ModelViolation::IndexOutOfRange { level, index });
                }
                if owner[index] == usize::MAX {
                    owner[index] = level;
                } else {
                    violations.push(ModelViolation::Overlap {
                        level,
                        earlier: owner[index],
                        index,
                    });
                }
            }
        }
        if violations.is_empty() {
            Ok(())
        } else {
            Err(violations)
        }
    }

    /// Renders the model as `[a] [b,c]`, using `names` for evaluations when given.
    pub fn display_with<'a>(&'a self, names: Option<&'a [String]>) -> impl fmt::Display + 'a {
        ModelDisplay { model: self, names }
    }

    /// Parses `()` or a whitespace-separated list of bracketed levels such as
    /// `[0] [1,2]`. Entries may be evaluation names when `names` is given.
    pub fn parse_with_names(text: &str, names: Option<&[String]>) -> Result<HclpModel> {
        let text = text.trim();
        if text.is_empty() || text == "()" {
            return Ok(HclpModel::empty());
        }
        let mut levels = Vec::new();
        let mut rest = text;
        let mut offset = 0;
        while !rest.is_empty() {
            let trimmed = rest.trim_start();
            offset += rest.len() - trimmed.len();
            rest = trimmed;
            if rest.is_empty() {
                break;
            }
            if !rest.starts_with('[') {
                return Err(HclpError::parse(1, offset + 1, "expected `[`"));
            }
            let close = rest
                .find(']')
                .ok_or_else(|| HclpError::parse(1, offset + 1, "unterminated level"))?;
            let mut level = LevelSet::EMPTY;
            for item in rest[1..close].split(',').map(str::trim) {
                if item.is_empty() {
                    continue;
                }
                let index = resolve_name(item, names).ok_or_else(|| {
                    HclpError::parse(1, offset + 1, format!("unknown evaluation `{item}`"))
                })?;
                if index >= MAX_EVALUATIONS {
                    return Err(HclpError::TooManyEvaluations(index + 1));
                }
                level.insert(index);
            }
            levels.push(level);
            offset += close + 1;
            rest = &rest[close + 1..];
        }
        Ok(HclpModel::new(levels))
    }
}

fn resolve_name(item: &str, names: Option<&[String]>) -> Option<usize> {
    if let Some(names) = names {
        if let Some(position) = names.iter().position(|name| name == item) {
            return Some(position);
        }
    }
    item.parse().ok()
}

struct ModelDisplay<'a> {
    model: &'a HclpModel,
    names: Option<&'a [String]>,
}

impl fmt::Display for ModelDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.model.is_empty() {
            return f.write_str("()");
        }
        for (k, level) in self.model.levels.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            f.write_str("[")?;
            for (j, index) in level.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                match self.names.and_then(|names| names.get(index)) {
                    Some(name) => f.write_str(name)?,
                    None => write!(f, "{index}")?,
                }
            }
            f.write_str("]")?;
        }
        Ok(())
    }
}

impl fmt::Display for HclpModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.display_with(None).fmt(f)
    }
}

impl fmt::Debug for HclpModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HclpModel({self})")
    }
}

impl std::str::FromStr for HclpModel {
    type Err = HclpError;

    fn from_str(s: &str) -> Result<Self> {
        HclpModel::parse_with_names(s, None)
    }
}
