//! CPLEX LP text format for [`MilpFormulation`].
//!
//! The writer emits an empty objective, named constraints, bounds for the
//! integer variables and the `General` and `Binary` sections, one item per
//! line with LF endings. The reader accepts that dialect plus backslash
//! comments, blank lines, case-insensitive section keywords and constraints
//! continued over several lines.

use std::collections::HashMap;
use std::io::{self, Write};

use super::{Comparator, Constraint, MilpFormulation, VarKind, VarRole, Variable};
use crate::error::{HclpError, Result};

pub fn write_lp<W: Write>(formulation: &MilpFormulation, mut out: W) -> io::Result<()> {
    let vars = formulation.variables();
    writeln!(out, "\\ HCLP C(t)-consistency feasibility problem")?;
    writeln!(
        out,
        "\\ evaluations: {}, statements: {}, strict: {}",
        formulation.n(),
        formulation.statement_count(),
        formulation.strict_count()
    )?;
    writeln!(out, "Minimize")?;
    writeln!(out, " obj:")?;
    writeln!(out, "Subject To")?;
    for c in formulation.constraints() {
        let mut line = format!(" {}:", c.name);
        if c.terms.is_empty() {
            line.push_str(&format!(" 0 {}", vars[0].name()));
        }
        for (k, &(var, coef)) in c.terms.iter().enumerate() {
            let name = vars[var].name();
            let magnitude = coef.unsigned_abs();
            let sign = match (k, coef < 0) {
                (0, false) => "",
                (0, true) => "-",
                (_, false) => "+ ",
                (_, true) => "- ",
            };
            if magnitude == 1 {
                line.push_str(&format!(" {sign}{name}"));
            } else {
                line.push_str(&format!(" {sign}{magnitude} {name}"));
            }
        }
        line.push_str(&format!(" {} {}", c.comparator, c.rhs));
        writeln!(out, "{line}")?;
    }
    writeln!(out, "Bounds")?;
    for v in vars.iter().filter(|v| v.kind == VarKind::Integer) {
        writeln!(out, " {} <= {} <= {}", v.lower, v.name(), v.upper)?;
    }
    writeln!(out, "General")?;
    for v in vars.iter().filter(|v| v.kind == VarKind::Integer) {
        writeln!(out, " {}", v.name())?;
    }
    writeln!(out, "Binary")?;
    for v in vars.iter().filter(|v| v.kind == VarKind::Binary) {
        writeln!(out, " {}", v.name())?;
    }
    writeln!(out, "End")
}

pub fn to_lp_string(formulation: &MilpFormulation) -> String {
    let mut buf = Vec::new();
    write_lp(formulation, &mut buf).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("LP output is ASCII")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Section {
    Preamble,
    Objective,
    Constraints,
    Bounds,
    General,
    Binary,
    End,
}

fn section_keyword(line: &str) -> Option<Section> {
    let lower = line.trim().to_ascii_lowercase();
    let words: Vec<&str> = lower.split_whitespace().collect();
    Some(match words.as_slice() {
        ["minimize"] | ["minimise"] | ["min"] | ["maximize"] | ["maximise"] | ["max"] => {
            Section::Objective
        }
        ["subject", "to"] | ["such", "that"] | ["st"] | ["s.t."] => Section::Constraints,
        ["bounds"] | ["bound"] => Section::Bounds,
        ["general"] | ["generals"] | ["gen"] => Section::General,
        ["binary"] | ["binaries"] | ["bin"] => Section::Binary,
        ["end"] => Section::End,
        _ => return None,
    })
}

#[derive(Debug, Clone)]
struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

fn tokens(line: &str, number: usize) -> impl Iterator<Item = Token<'_>> {
    let mut rest = line;
    let mut offset = 0;
    std::iter::from_fn(move || {
        let skipped = rest.len() - rest.trim_start().len();
        rest = &rest[skipped..];
        offset += skipped;
        if rest.is_empty() {
            return None;
        }
        let len = rest.find(char::is_whitespace).unwrap_or(rest.len());
        let token = Token {
            text: &rest[..len],
            line: number,
            column: offset + 1,
        };
        rest = &rest[len..];
        offset += len;
        Some(token)
    })
}

fn err(token: &Token<'_>, message: impl Into<String>) -> HclpError {
    HclpError::parse(token.line, token.column, message)
}

fn comparator(text: &str) -> Option<Comparator> {
    match text {
        "<=" | "=<" | "<" => Some(Comparator::Le),
        ">=" | "=>" | ">" => Some(Comparator::Ge),
        "=" => Some(Comparator::Eq),
        _ => None,
    }
}

fn number(token: &Token<'_>) -> Result<i64> {
    token.text.parse().map_err(|_| {
        err(
            token,
            format!("expected an integer, found `{}`", token.text),
        )
    })
}

struct Reader {
    names: HashMap<String, usize>,
    roles: Vec<VarRole>,
    kinds: Vec<Option<VarKind>>,
    bounds: Vec<Option<(i64, i64)>>,
}

impl Reader {
    fn variable(&mut self, token: &Token<'_>) -> Result<usize> {
        if let Some(&k) = self.names.get(token.text) {
            return Ok(k);
        }
        let role = VarRole::parse(token.text)
            .ok_or_else(|| err(token, format!("unknown variable `{}`", token.text)))?;
        let k = self.roles.len();
        self.names.insert(token.text.to_string(), k);
        self.roles.push(role);
        self.kinds.push(None);
        self.bounds.push(None);
        Ok(k)
    }

    /// One constraint from its tokens, the first being `name:`.
    fn constraint(&mut self, toks: &[Token<'_>]) -> Result<Constraint> {
        let head = &toks[0];
        let name = head.text.trim_end_matches(':');
        if name.is_empty() || !head.text.ends_with(':') {
            return Err(err(head, "expected a constraint name followed by `:`"));
        }
        let mut terms: Vec<(usize, i64)> = Vec::new();
        let mut sign = 1i64;
        let mut coef: Option<i64> = None;
        let mut k = 1;
        while k < toks.len() {
            let tok = &toks[k];
            if let Some(cmp) = comparator(tok.text) {
                if coef.is_some() || sign != 1 {
                    return Err(err(tok, "dangling coefficient before comparator"));
                }
                let rhs = toks
                    .get(k + 1)
                    .ok_or_else(|| err(tok, "missing right-hand side"))?;
                if let Some(extra) = toks.get(k + 2) {
                    return Err(err(extra, "unexpected token after right-hand side"));
                }
                let mut merged: Vec<(usize, i64)> = Vec::new();
                for (var, c) in terms {
                    match merged.iter_mut().find(|(v, _)| *v == var) {
                        Some(entry) => entry.1 += c,
                        None => merged.push((var, c)),
                    }
                }
                merged.retain(|&(_, c)| c != 0);
                return Ok(Constraint {
                    name: name.to_string(),
                    terms: merged,
                    comparator: cmp,
                    rhs: number(rhs)?,
                });
            }
            match tok.text {
                "+" => {}
                "-" => sign = -sign,
                text => {
                    let (negative, body) = match text.strip_prefix('-') {
                        Some(body) => (true, body),
                        None => (false, text.strip_prefix('+').unwrap_or(text)),
                    };
                    if negative {
                        sign = -sign;
                    }
                    if body.starts_with(|c: char| c.is_ascii_digit()) {
                        if coef.is_some() {
                            return Err(err(tok, "two coefficients in a row"));
                        }
                        let value: i64 = body
                            .parse()
                            .map_err(|_| err(tok, format!("bad coefficient `{text}`")))?;
                        coef = Some(value);
                    } else {
                        let var = self.variable(&Token {
                            text: body,
                            ..tok.clone()
                        })?;
                        terms.push((var, sign * coef.take().unwrap_or(1)));
                        sign = 1;
                    }
                }
            }
            k += 1;
        }
        Err(err(head, format!("constraint `{name}` has no comparator")))
    }

    fn bound(&mut self, toks: &[Token<'_>]) -> Result<()> {
        let [lo, c1, var, c2, hi] = toks else {
            return Err(err(&toks[0], "expected `lower <= variable <= upper`"));
        };
        if comparator(c1.text) != Some(Comparator::Le)
            || comparator(c2.text) != Some(Comparator::Le)
        {
            return Err(err(c1, "expected `lower <= variable <= upper`"));
        }
        let k = self.variable(var)?;
        let (lo, hi) = (number(lo)?, number(hi)?);
        if lo > hi {
            return Err(err(var, format!("empty range [{lo}, {hi}]")));
        }
        self.bounds[k] = Some((lo, hi));
        Ok(())
    }

    fn kind(&mut self, tok: &Token<'_>, kind: VarKind) -> Result<()> {
        let k = self.variable(tok)?;
        if self.kinds[k].is_some_and(|existing| existing != kind) {
            return Err(err(
                tok,
                format!("`{}` declared both integer and binary", tok.text),
            ));
        }
        self.kinds[k] = Some(kind);
        Ok(())
    }
}

/// Reads a formulation written by [`write_lp`].
///
/// Variables are recovered from their names and put back into layout
/// order, so writing and reading gives back an equal formulation.
pub fn parse_lp(text: &str) -> Result<MilpFormulation> {
    let mut reader = Reader {
        names: HashMap::new(),
        roles: Vec::new(),
        kinds: Vec::new(),
        bounds: Vec::new(),
    };
    let mut section = Section::Preamble;
    let mut constraints = Vec::new();
    let mut pending: Vec<Token<'_>> = Vec::new();
    let mut last_line = 0;

    for (index, raw) in text.lines().enumerate() {
        let number = index + 1;
        last_line = number;
        let line = raw.split('\\').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        if let Some(next) = section_keyword(line) {
            if !pending.is_empty() {
                return Err(err(&pending[0], "constraint has no comparator"));
            }
            if next == Section::Objective && section != Section::Preamble {
                return Err(HclpError::parse(
                    number,
                    1,
                    "objective section out of place",
                ));
            }
            section = next;
            continue;
        }
        let toks: Vec<Token<'_>> = tokens(line, number).collect();
        match section {
            Section::Preamble => {
                return Err(err(&toks[0], "expected `Minimize` before any content"));
            }
            Section::Objective => {
                if toks.iter().any(|t| !t.text.ends_with(':')) {
                    return Err(err(&toks[0], "only an empty objective is supported"));
                }
            }
            Section::Constraints => {
                pending.extend(toks);
                if let Some(pos) = pending.iter().position(|t| comparator(t.text).is_some()) {
                    if pending.len() < pos + 2 {
                        continue;
                    }
                    constraints.push(reader.constraint(&pending)?);
                    pending.clear();
                }
            }
            Section::Bounds => reader.bound(&toks)?,
            Section::General => {
                for tok in &toks {
                    reader.kind(tok, VarKind::Integer)?;
                }
            }
            Section::Binary => {
                for tok in &toks {
                    reader.kind(tok, VarKind::Binary)?;
                }
            }
            Section::End => return Err(err(&toks[0], "content after `End`")),
        }
    }
    if section != Section::End {
        return Err(HclpError::parse(last_line + 1, 1, "missing `End`"));
    }

    let mut variables = Vec::with_capacity(reader.roles.len());
    for (k, role) in reader.roles.iter().enumerate() {
        let name = role.name();
        let at = |message: &str| HclpError::parse(0, 0, format!("variable `{name}` {message}"));
        let (kind, lower, upper) = match (reader.kinds[k], reader.bounds[k]) {
            (Some(VarKind::Binary), None) => (VarKind::Binary, 0, 1),
            (Some(VarKind::Binary), Some(_)) => return Err(at("is binary but has bounds")),
            (Some(VarKind::Integer), Some((lo, hi))) => (VarKind::Integer, lo, hi),
            (Some(VarKind::Integer), None) => return Err(at("is integer but unbounded")),
            (None, _) => return Err(at("is neither integer nor binary")),
        };
        let expected = match role {
            VarRole::Difference { .. } => VarKind::Integer,
            _ => VarKind::Binary,
        };
        if kind != expected {
            return Err(at("has the wrong type"));
        }
        variables.push(Variable {
            role: *role,
            kind,
            lower,
            upper,
        });
    }
    MilpFormulation::from_parts(variables, constraints)
}
