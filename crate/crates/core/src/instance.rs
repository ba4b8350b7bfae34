//! Instance files and the random instance generator.
//!
//! File format (UTF-8, LF line endings):
//!
//! ```text
//! hclp 1
//! # name: dessert
//! # evaluations: c s f
//! # alternatives: AP CC IC
//! 3 3 2
//! 10 13 11
//! 23 23 16
//! 20 17 24
//! 2 < 0
//! 1 <= 0
//! ```
//!
//! The first content line is the magic `hclp 1`, then `n m g`, `n` rows of
//! `m` non-negative integers, and `g` statements over zero-based alternative
//! indices. Lines starting with `#` are comments; a comment of the form
//! `# key: value` with a known key (`name`, `seed`, `generator`,
//! `evaluations`, `alternatives`) carries metadata.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{HclpError, Result};
use crate::statement::PreferenceStatement;
use crate::structure::{EvaluationMatrix, HclpStructure};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Metadata {
    pub name: Option<String>,
    pub seed: Option<u64>,
    /// Free-form description of how the instance was produced.
    pub generator: Option<String>,
    pub evaluations: Option<Vec<String>>,
    pub alternatives: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    matrix: EvaluationMatrix,
    statements: Vec<PreferenceStatement>,
    metadata: Metadata,
}

fn check_names(names: &Option<Vec<String>>, expected: usize, what: &str) -> Result<()> {
    let Some(names) = names else {
        return Ok(());
    };
    if names.len() != expected {
        return Err(HclpError::InvalidConfig(format!(
            "{} {what} names for {expected} {what}",
            names.len()
        )));
    }
    for (k, name) in names.iter().enumerate() {
        let bad = name.is_empty()
            || name.parse::<i64>().is_ok()
            || name
                .chars()
                .any(|c| c.is_whitespace() || "[](),<=#".contains(c));
        if bad {
            return Err(HclpError::InvalidConfig(format!(
                "invalid {what} name `{name}`"
            )));
        }
        if names[..k].contains(name) {
            return Err(HclpError::InvalidConfig(format!(
                "duplicate {what} name `{name}`"
            )));
        }
    }
    Ok(())
}

impl Instance {
    /// Checks statement indices, duplicate pairs and name counts.
    pub fn new(
        matrix: EvaluationMatrix,
        statements: Vec<PreferenceStatement>,
        metadata: Metadata,
    ) -> Result<Self> {
        for (k, s) in statements.iter().enumerate() {
            for index in [s.alpha(), s.beta()] {
                if index >= matrix.m() {
                    return Err(HclpError::AlternativeOutOfRange {
                        index,
                        m: matrix.m(),
                    });
                }
            }
            if statements[..k]
                .iter()
                .any(|e| e.alpha() == s.alpha() && e.beta() == s.beta())
            {
                return Err(HclpError::InvalidConfig(format!(
                    "duplicate statement `{s}`"
                )));
            }
        }
        check_names(&metadata.evaluations, matrix.n(), "evaluation")?;
        check_names(&metadata.alternatives, matrix.m(), "alternative")?;
        Ok(Instance {
            matrix,
            statements,
            metadata,
        })
    }

    pub fn matrix(&self) -> &EvaluationMatrix {
        &self.matrix
    }

    pub fn statements(&self) -> &[PreferenceStatement] {
        &self.statements
    }

    pub fn metadata(&self) -> &Metadata {
        &self.metadata
    }

    pub fn n(&self) -> usize {
        self.matrix.n()
    }

    pub fn m(&self) -> usize {
        self.matrix.m()
    }

    pub fn g(&self) -> usize {
        self.statements.len()
    }

    pub fn structure(&self) -> HclpStructure {
        HclpStructure::additive(self.matrix.clone())
    }

    pub fn evaluation_names(&self) -> Option<&[String]> {
        self.metadata.evaluations.as_deref()
    }

    pub fn alternative_names(&self) -> Option<&[String]> {
        self.metadata.alternatives.as_deref()
    }

    /// Parses `a < b` or `a <= b`, where each side is an alternative index
    /// or, if the instance names its alternatives, a name.
    pub fn parse_statement(&self, text: &str) -> Result<PreferenceStatement> {
        let statement = parse_statement_line(text, 1, self.alternative_names())?;
        self.check_alternative(statement.alpha())?;
        self.check_alternative(statement.beta())?;
        Ok(statement)
    }

    fn check_alternative(&self, index: usize) -> Result<()> {
        if index < self.m() {
            Ok(())
        } else {
            Err(HclpError::AlternativeOutOfRange { index, m: self.m() })
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        Parser::default().run(text)
    }

    pub fn serialize(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "hclp 1")?;
        let meta = &self.metadata;
        if let Some(name) = &meta.name {
            writeln!(f, "# name: {name}")?;
        }
        if let Some(generator) = &meta.generator {
            writeln!(f, "# generator: {generator}")?;
        }
        if let Some(seed) = meta.seed {
            writeln!(f, "# seed: {seed}")?;
        }
        if let Some(names) = &meta.evaluations {
            writeln!(f, "# evaluations: {}", names.join(" "))?;
        }
        if let Some(names) = &meta.alternatives {
            writeln!(f, "# alternatives: {}", names.join(" "))?;
        }
        writeln!(f, "{} {} {}", self.n(), self.m(), self.g())?;
        for i in 0..self.n() {
            let row: Vec<String> = self.matrix.row(i).iter().map(u32::to_string).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        for s in &self.statements {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}

impl FromStr for Instance {
    type Err = HclpError;

    fn from_str(text: &str) -> Result<Self> {
        Instance::parse(text)
    }
}

fn alternative(token: &str, line: usize, column: usize, names: Option<&[String]>) -> Result<usize> {
    if let Ok(index) = token.parse::<usize>() {
        return Ok(index);
    }
    if let Some(k) = names.and_then(|names| names.iter().position(|n| n == token)) {
        return Ok(k);
    }
    let message = if token.is_empty() {
        "missing alternative".to_string()
    } else if token.starts_with('-') && token[1..].parse::<usize>().is_ok() {
        format!("negative alternative index `{token}`")
    } else {
        format!("unknown alternative `{token}`")
    };
    Err(HclpError::parse(line, column, message))
}

fn parse_statement_line(
    text: &str,
    line: usize,
    names: Option<&[String]>,
) -> Result<PreferenceStatement> {
    let Some(at) = text.find('<') else {
        return Err(HclpError::parse(
            line,
            1,
            "expected `<` or `<=` in statement",
        ));
    };
    let strict = !text[at + 1..].starts_with('=');
    let rhs_start = if strict { at + 1 } else { at + 2 };
    let left = text[..at].trim();
    let right = text[rhs_start..].trim();
    let left_col = text.len() - text.trim_start().len() + 1;
    let right_col =
        rhs_start + (text[rhs_start..].len() - text[rhs_start..].trim_start().len()) + 1;
    if left.contains(char::is_whitespace) {
        return Err(HclpError::parse(
            line,
            left_col,
            format!("unexpected `{left}`"),
        ));
    }
    if right.contains(char::is_whitespace) || right.contains(['<', '=']) {
        return Err(HclpError::parse(
            line,
            right_col,
            format!("unexpected `{right}`"),
        ));
    }
    let alpha = alternative(left, line, left_col, names)?;
    let beta = alternative(right, line, right_col, names)?;
    PreferenceStatement::new(alpha, beta, strict).map_err(|_| {
        HclpError::parse(
            line,
            left_col,
            format!("statement compares `{left}` with itself"),
        )
    })
}

#[derive(Default)]
struct Parser {
    metadata: Metadata,
    header: Option<(usize, usize, usize)>,
    values: Vec<u32>,
    rows: usize,
    statements: Vec<(usize, PreferenceStatement)>,
    magic: bool,
}

impl Parser {
    fn run(mut self, text: &str) -> Result<Instance> {
        let mut last = 0;
        for (index, raw) in text.lines().enumerate() {
            let number = index + 1;
            last = number;
            let line = raw.trim_end_matches('\r');
            let trimmed = line.trim_start();
            if let Some(comment) = trimmed.strip_prefix('#') {
                self.comment(comment, number)?;
                continue;
            }
            if trimmed.is_empty() {
                continue;
            }
            self.content(line, number)?;
        }
        let Some((n, m, g)) = self.header else {
            return Err(HclpError::parse(last + 1, 1, "missing `n m g` header"));
        };
        if self.rows < n {
            return Err(HclpError::parse(
                last + 1,
                1,
                format!("expected {n} matrix rows, found {}", self.rows),
            ));
        }
        if self.statements.len() < g {
            return Err(HclpError::parse(
                last + 1,
                1,
                format!(
                    "header declares {g} statements, found {}",
                    self.statements.len()
                ),
            ));
        }
        let matrix = EvaluationMatrix::new(n, m, self.values)?;
        for (k, (number, s)) in self.statements.iter().enumerate() {
            if self.statements[..k]
                .iter()
                .any(|(_, e)| e.alpha() == s.alpha() && e.beta() == s.beta())
            {
                return Err(HclpError::parse(
                    *number,
                    1,
                    format!("duplicate statement `{s}`"),
                ));
            }
        }
        let statements = self.statements.into_iter().map(|(_, s)| s).collect();
        Instance::new(matrix, statements, self.metadata)
    }

    fn comment(&mut self, body: &str, number: usize) -> Result<()> {
        let Some((key, value)) = body.split_once(':') else {
            return Ok(());
        };
        let value = value.trim();
        let names = || Some(value.split_whitespace().map(str::to_string).collect());
        match key.trim() {
            "name" => self.metadata.name = Some(value.to_string()),
            "generator" => self.metadata.generator = Some(value.to_string()),
            "seed" => {
                let seed = value
                    .parse()
                    .map_err(|_| HclpError::parse(number, 1, format!("invalid seed `{value}`")))?;
                self.metadata.seed = Some(seed);
            }
            "evaluations" => self.metadata.evaluations = names(),
            "alternatives" => self.metadata.alternatives = names(),
            _ => {}
        }
        Ok(())
    }

    fn content(&mut self, line: &str, number: usize) -> Result<()> {
        if !self.magic {
            let words: Vec<&str> = line.split_whitespace().collect();
            if words != ["hclp", "1"] {
                return Err(HclpError::parse(number, 1, "expected `hclp 1`"));
            }
            self.magic = true;
            return Ok(());
        }
        let Some((n, m, g)) = self.header else {
            let fields = integers(line, number)?;
            let [n, m, g] = fields[..] else {
                return Err(HclpError::parse(number, 1, "expected `n m g`"));
            };
            let (n, m, g) = (n.0 as usize, m.0 as usize, g.0 as usize);
            if n == 0 || m == 0 {
                return Err(HclpError::parse(number, 1, "n and m must be positive"));
            }
            self.header = Some((n, m, g));
            return Ok(());
        };
        if self.rows < n {
            let fields = integers(line, number)?;
            if fields.len() != m {
                return Err(HclpError::parse(
                    number,
                    1,
                    format!("expected {m} values, found {}", fields.len()),
                ));
            }
            for (value, column) in fields {
                let value = u32::try_from(value).map_err(|_| {
                    HclpError::parse(number, column, format!("value {value} too large"))
                })?;
                self.values.push(value);
            }
            self.rows += 1;
            return Ok(());
        }
        if self.statements.len() == g {
            return Err(HclpError::parse(
                number,
                1,
                format!("header declares {g} statements, found more"),
            ));
        }
        let statement = parse_statement_line(line, number, self.metadata.alternatives.as_deref())?;
        for index in [statement.alpha(), statement.beta()] {
            if index >= m {
                return Err(HclpError::parse(
                    number,
                    1,
                    format!("alternative {index} out of range (m = {m})"),
                ));
            }
        }
        self.statements.push((number, statement));
        Ok(())
    }
}

/// Whitespace-separated non-negative integers with their columns.
fn integers(line: &str, number: usize) -> Result<Vec<(u64, usize)>> {
    let mut out = Vec::new();
    let mut rest = line;
    let mut offset = 0;
    loop {
        let skipped = rest.len() - rest.trim_start().len();
        rest = &rest[skipped..];
        offset += skipped;
        if rest.is_empty() {
            return Ok(out);
        }
        let len = rest.find(char::is_whitespace).unwrap_or(rest.len());
        let token = &rest[..len];
        let column = offset + 1;
        let value = token.parse::<u64>().map_err(|_| {
            let message = if token.starts_with('-') && token[1..].parse::<u64>().is_ok() {
                format!("negative value `{token}`")
            } else {
                format!("expected a non-negative integer, found `{token}`")
            };
            HclpError::parse(number, column, message)
        })?;
        out.push((value, column));
        rest = &rest[len..];
        offset += len;
    }
}

/// Parameters of the uniform random instance generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenConfig {
    pub n: usize,
    pub m: usize,
    pub g: usize,
    pub domain_max: u32,
    pub seed: u64,
}

impl GenConfig {
    pub const DEFAULT_DOMAIN_MAX: u32 = 5;

    pub fn new(n: usize, m: usize, g: usize, seed: u64) -> Self {
        GenConfig {
            n,
            m,
            g,
            domain_max: Self::DEFAULT_DOMAIN_MAX,
            seed,
        }
    }

    pub fn pair_count(&self) -> usize {
        self.m * self.m.saturating_sub(1) / 2
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.m == 0 || self.g == 0 {
            return Err(HclpError::InvalidConfig(
                "n, m and g must be at least 1".into(),
            ));
        }
        if self.n > crate::model::MAX_EVALUATIONS {
            return Err(HclpError::TooManyEvaluations(self.n));
        }
        if self.g > self.pair_count() {
            return Err(HclpError::InvalidConfig(format!(
                "g = {} exceeds the {} pairs of {} alternatives",
                self.g,
                self.pair_count(),
                self.m
            )));
        }
        Ok(())
    }
}

/// Draws a random instance.
///
/// The generator is ChaCha8 seeded with `seed_from_u64(cfg.seed)`. Matrix
/// entries are drawn row by row, uniform over `0..=domain_max`. The pairs
/// `(i, j)` with `i < j` are listed lexicographically, partially shuffled,
/// and the first `g` kept in shuffled order; the first `ceil(g / 2)`
/// become `i < j`, the rest `i <= j`. All statements point the same way
/// along the index order, so the statement graph is acyclic.
pub fn generate(cfg: &GenConfig) -> Result<Instance> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let values: Vec<u32> = (0..cfg.n * cfg.m)
        .map(|_| rng.gen_range(0..=cfg.domain_max))
        .collect();
    let matrix = EvaluationMatrix::new(cfg.n, cfg.m, values)?;
    let mut pairs: Vec<(usize, usize)> = (0..cfg.m)
        .flat_map(|i| (i + 1..cfg.m).map(move |j| (i, j)))
        .collect();
    let (chosen, _) = pairs.partial_shuffle(&mut rng, cfg.g);
    let strict = cfg.g.div_ceil(2);
    let statements = chosen
        .iter()
        .enumerate()
        .map(|(k, &(i, j))| PreferenceStatement::new(i, j, k < strict))
        .collect::<Result<Vec<_>>>()?;
    let metadata = Metadata {
        name: Some(format!("n{}-m{}-g{}-seed{}", cfg.n, cfg.m, cfg.g, cfg.seed)),
        seed: Some(cfg.seed),
        generator: Some(format!("chacha8 uniform domain_max={}", cfg.domain_max)),
        evaluations: None,
        alternatives: None,
    };
    Instance::new(matrix, statements, metadata)
}
