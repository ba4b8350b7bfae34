use hclp::{HclpModel, SearchStats, Verdict};
use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct Stats {
    pub nodes: u64,
    pub candidates_enumerated: u64,
    pub candidates_skipped: u64,
    pub singleton_calls: u64,
    pub learned: u64,
}

impl From<&SearchStats> for Stats {
    fn from(s: &SearchStats) -> Self {
        Stats {
            nodes: s.nodes,
            candidates_enumerated: s.candidates_enumerated,
            candidates_skipped: s.candidates_skipped,
            singleton_calls: s.singleton_calls,
            learned: s.learned,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub instance: String,
    pub algorithm: &'static str,
    pub t: usize,
    pub s: Option<usize>,
    pub verdict: &'static str,
    pub witness: Option<String>,
    pub stats: Stats,
    pub time_ms: f64,
}

#[derive(Debug, Serialize)]
pub struct DeduceReport {
    pub instance: String,
    pub statement: String,
    pub algorithm: &'static str,
    pub t: usize,
    pub s: Option<usize>,
    pub deduced: bool,
    pub time_ms: f64,
}

#[derive(Debug, Serialize)]
pub struct ExportReport {
    pub instance: String,
    pub t: usize,
    pub variables: usize,
    pub constraints: usize,
    pub path: String,
}

pub fn verdict_name(v: &Verdict) -> &'static str {
    match v {
        Verdict::Consistent(_) => "consistent",
        Verdict::Inconsistent => "inconsistent",
        Verdict::TimedOut => "timeout",
    }
}

pub fn witness_text(v: &Verdict, names: Option<&[String]>) -> Option<String> {
    match v {
        Verdict::Consistent(w) => Some(display_model(w, names)),
        _ => None,
    }
}

pub fn display_model(model: &HclpModel, names: Option<&[String]>) -> String {
    model.display_with(names).to_string()
}

pub fn millis(d: std::time::Duration) -> f64 {
    (d.as_secs_f64() * 1e6).round() / 1e3
}

pub fn print_json<T: Serialize>(value: &T) -> anyhow::Result<()> {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}
