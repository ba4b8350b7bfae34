use std::fmt;

use crate::error::{HclpError, Result};

/// `alpha < beta` (strict) or `alpha <= beta` (non-strict): alternative
/// `alpha` is preferred to alternative `beta`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PreferenceStatement {
    alpha: usize,
    beta: usize,
    strict: bool,
}

impl PreferenceStatement {
    pub fn new(alpha: usize, beta: usize, strict: bool) -> Result<Self> {
        if alpha == beta {
            return Err(HclpError::SelfComparison(alpha));
        }
        Ok(PreferenceStatement {
            alpha,
            beta,
            strict,
        })
    }

    /// `alpha < beta`.
    pub fn strict(alpha: usize, beta: usize) -> Result<Self> {
        Self::new(alpha, beta, true)
    }

    /// `alpha <= beta`.
    pub fn non_strict(alpha: usize, beta: usize) -> Result<Self> {
        Self::new(alpha, beta, false)
    }

    pub fn alpha(&self) -> usize {
        self.alpha
    }

    pub fn beta(&self) -> usize {
        self.beta
    }

    pub fn is_strict(&self) -> bool {
        self.strict
    }

    /// Same pair, strictness cleared.
    pub fn relaxed(&self) -> Self {
        PreferenceStatement {
            strict: false,
            ..*self
        }
    }

    /// The statement holding exactly when `self` fails:
    /// `¬(a <= b) = b < a` and `¬(a < b) = b <= a`.
    pub fn negated(&self) -> Self {
        PreferenceStatement {
            alpha: self.beta,
            beta: self.alpha,
            strict: !self.strict,
        }
    }

    /// Renders with alternative names when given, indices otherwise.
    pub fn display_with<'a>(&'a self, names: Option<&'a [String]>) -> impl fmt::Display + 'a {
        StatementDisplay {
            statement: self,
            names,
        }
    }
}

/// The non-strict version of a statement list.
pub fn non_strict_version(statements: &[PreferenceStatement]) -> Vec<PreferenceStatement> {
    statements
        .iter()
        .map(PreferenceStatement::relaxed)
        .collect()
}

struct StatementDisplay<'a> {
    statement: &'a PreferenceStatement,
    names: Option<&'a [String]>,
}

impl fmt::Display for StatementDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = |f: &mut fmt::Formatter<'_>, index: usize| match self
            .names
            .and_then(|names| names.get(index))
        {
            Some(name) => f.write_str(name),
            None => write!(f, "{index}"),
        };
        name(f, self.statement.alpha)?;
        f.write_str(if self.statement.strict { " < " } else { " <= " })?;
        name(f, self.statement.beta)
    }
}

impl fmt::Display for PreferenceStatement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.display_with(None).fmt(f)
    }
}

impl fmt::Debug for PreferenceStatement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "`{self}`")
    }
}
