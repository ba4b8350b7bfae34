use thiserror::Error;

use crate::model::MAX_EVALUATIONS;

pub type Result<T, E = HclpError> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HclpError {
    #[error("evaluation index {index} out of range (n = {n})")]
    EvaluationOutOfRange { index: usize, n: usize },
    #[error("alternative index {index} out of range (m = {m})")]
    AlternativeOutOfRange { index: usize, m: usize },
    #[error("an evaluation matrix needs at least one evaluation and one alternative")]
    EmptyMatrix,
    #[error("matrix has {got} values, expected {expected}")]
    ShapeMismatch { expected: usize, got: usize },
    #[error("at most {MAX_EVALUATIONS} evaluations are supported, got {0}")]
    TooManyEvaluations(usize),
    #[error("combining the evaluations of alternative {alternative} overflows")]
    Overflow { alternative: usize },
    #[error("statement compares alternative {0} with itself")]
    SelfComparison(usize),
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("{what} is limited to {limit} evaluations, got {got}")]
    SizeGuard {
        what: &'static str,
        limit: usize,
        got: usize,
    },
    #[error("operation requires the additive combiner")]
    UnsupportedCombiner,
    #[error("statement `{0}` is already in the statement set")]
    StatementInSet(String),
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("no value assigned to variable `{0}`")]
    MissingVariable(String),
    #[error("search exceeded its deadline")]
    Timeout,
}

impl HclpError {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        HclpError::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}
