//! Browser bindings. Every export takes and returns plain strings so the
//! page needs no glue beyond the generated module; results are JSON
//! objects, failures are `{"error": "..."}`.

use std::cmp::Ordering;

use hclp::oracle::brute_force_solve;
use hclp::{
    c1_solve, generate as gen, pc_check, GenConfig, HclpModel, Instance, SearchConfig, Verdict,
};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn error(e: impl std::fmt::Display) -> String {
    json!({ "error": e.to_string() }).to_string()
}

fn finish(r: Result<Value, String>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => error(e),
    }
}

/// Decides consistency of the statements in `instance`.
///
/// `algorithm` is one of `c1`, `pc`, `pc-conflicts`, `oracle`; `t = 0`
/// means one level may hold every evaluation.
#[wasm_bindgen]
pub fn solve(instance: &str, algorithm: &str, t: u32, s: u32) -> String {
    finish(solve_inner(instance, algorithm, t as usize, s as usize))
}

fn solve_inner(text: &str, algorithm: &str, t: usize, s: usize) -> Result<Value, String> {
    let inst = Instance::parse(text).map_err(|e| e.to_string())?;
    let structure = inst.structure();
    let gamma = inst.statements();
    let t = if t == 0 { inst.n() } else { t };
    let r = match algorithm {
        "c1" => c1_solve(&structure, gamma),
        "pc" => pc_check(&structure, gamma, &SearchConfig::new(t)),
        "pc-conflicts" => pc_check(&structure, gamma, &SearchConfig::new(t).with_conflicts(s)),
        "oracle" => brute_force_solve(&structure, gamma, t),
        other => return Err(format!("unknown algorithm `{other}`")),
    }
    .map_err(|e| e.to_string())?;
    let (verdict, witness) = match &r.verdict {
        Verdict::Consistent(w) => (
            "consistent",
            Some(w.display_with(inst.evaluation_names()).to_string()),
        ),
        Verdict::Inconsistent => ("inconsistent", None),
        Verdict::TimedOut => ("timeout", None),
    };
    Ok(json!({
        "verdict": verdict,
        "witness": witness,
        "t": if algorithm == "c1" { 1 } else { t },
        "nodes": r.stats.nodes,
        "candidates": r.stats.candidates_enumerated,
        "skipped": r.stats.candidates_skipped,
        "learned": r.stats.learned,
        "time_ms": r.stats.elapsed.as_secs_f64() * 1e3,
    }))
}

/// A random instance in file format, under `"instance"`.
#[wasm_bindgen]
pub fn generate(n: u32, m: u32, g: u32, seed: u32) -> String {
    let cfg = GenConfig::new(n as usize, m as usize, g as usize, seed as u64);
    finish(
        gen(&cfg)
            .map(|inst| json!({ "instance": inst.serialize() }))
            .map_err(|e| e.to_string()),
    )
}

/// Compares alternatives `a` and `b` (names or indices) under `model`,
/// written like `[f,s] [c]`, and lists the combined values per level.
#[wasm_bindgen]
pub fn compare(instance: &str, model: &str, a: &str, b: &str) -> String {
    finish(compare_inner(instance, model, a, b))
}

fn compare_inner(text: &str, model: &str, a: &str, b: &str) -> Result<Value, String> {
    let inst = Instance::parse(text).map_err(|e| e.to_string())?;
    let structure = inst.structure();
    let h =
        HclpModel::parse_with_names(model, inst.evaluation_names()).map_err(|e| e.to_string())?;
    if let Err(violations) = h.validate(inst.n(), inst.n()) {
        let text: Vec<String> = violations.iter().map(ToString::to_string).collect();
        return Err(text.join("; "));
    }
    let alt = |token: &str| -> Result<usize, String> {
        let token = token.trim();
        token
            .parse::<usize>()
            .ok()
            .or_else(|| inst.alternative_names()?.iter().position(|x| x == token))
            .filter(|&k| k < inst.m())
            .ok_or_else(|| format!("unknown alternative `{token}`"))
    };
    let (ia, ib) = (alt(a)?, alt(b)?);
    let levels: Vec<Value> = h
        .levels()
        .iter()
        .map(|&level| {
            let va = structure.combine_level(level, ia).expect("validated");
            let vb = structure.combine_level(level, ib).expect("validated");
            json!([va, vb])
        })
        .collect();
    let relation = match structure
        .model_compare(&h, ia, ib)
        .map_err(|e| e.to_string())?
    {
        Ordering::Less => "<",
        Ordering::Equal => "=",
        Ordering::Greater => ">",
    };
    Ok(json!({
        "model": h.display_with(inst.evaluation_names()).to_string(),
        "relation": relation,
        "levels": levels,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    const DESSERT: &str = include_str!("../../../fixtures/dessert.hclp");
    const CHAIN: &str = include_str!("../../../fixtures/chain.hclp");

    fn parse(s: &str) -> Value {
        serde_json::from_str(s).unwrap()
    }

    #[test]
    fn solve_fixtures() {
        let r = parse(&solve(DESSERT, "c1", 0, 5));
        assert_eq!(r["verdict"], "consistent");
        assert_eq!(r["witness"], "[s] [f] [c]");
        let r = parse(&solve(CHAIN, "pc-conflicts", 3, 5));
        assert_eq!(r["verdict"], "inconsistent");
        assert_eq!(r["skipped"], 1);
        assert!(parse(&solve(CHAIN, "magic", 3, 5))["error"].is_string());
        assert!(parse(&solve("hclp 2", "pc", 3, 5))["error"].is_string());
    }

    #[test]
    fn generate_round_trips() {
        let r = parse(&generate(4, 6, 3, 11));
        let text = r["instance"].as_str().unwrap();
        assert_eq!(Instance::parse(text).unwrap().g(), 3);
        assert!(parse(&generate(4, 3, 9, 11))["error"].is_string());
    }

    #[test]
    fn compare_dessert() {
        let r = parse(&compare(DESSERT, "[f,s] [c]", "IC", "CC"));
        assert_eq!(r["relation"], "<");
        assert_eq!(r["levels"], json!([[40, 40], [11, 13]]));
        let r = parse(&compare(DESSERT, "[c]", "0", "2"));
        assert_eq!(r["relation"], "<");
        assert!(parse(&compare(DESSERT, "[c] [c]", "AP", "IC"))["error"].is_string());
        assert!(parse(&compare(DESSERT, "[c]", "XX", "IC"))["error"].is_string());
    }
}
