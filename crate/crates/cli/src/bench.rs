use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::time::Duration;

use anyhow::{bail, Context};
use hclp::oracle::ORACLE_LIMIT;
use hclp::{c1_solve, generate, GenConfig, Verdict};
use rayon::prelude::*;
use serde::Serialize;

use crate::report::{millis, print_json, verdict_name};
use crate::{run_algorithm, Algorithm};

pub const HEADER: [&str; 13] = [
    "instance_id",
    "n",
    "m",
    "g",
    "t",
    "s",
    "algorithm",
    "verdict",
    "class",
    "nodes",
    "skipped",
    "time_ms",
    "timeout",
];

#[derive(Debug, Clone, clap::Args)]
pub struct BenchArgs {
    /// Problem sizes as `n,g` pairs separated by `;`, e.g. "10,10;15,20".
    #[arg(long)]
    pub sizes: String,
    /// Instances per size.
    #[arg(long = "per-size", default_value_t = 50)]
    pub per_size: usize,
    /// Comma-separated algorithms.
    #[arg(long, value_delimiter = ',', default_value = "pc,pc-conflicts")]
    pub algorithms: Vec<Algorithm>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Number of alternatives per instance.
    #[arg(long, default_value_t = 25)]
    pub m: usize,
    /// Level size bound; defaults to n.
    #[arg(long)]
    pub t: Option<usize>,
    /// Conflict set size bound for pc-conflicts.
    #[arg(long, default_value_t = 5)]
    pub s: usize,
    #[arg(long = "timeout-ms")]
    pub timeout_ms: Option<u64>,
    /// Per-instance CSV; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Per-size aggregate CSV.
    #[arg(long = "summary-out")]
    pub summary_out: Option<PathBuf>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Row {
    pub instance_id: String,
    pub n: usize,
    pub m: usize,
    pub g: usize,
    pub t: usize,
    pub s: String,
    pub algorithm: &'static str,
    pub verdict: &'static str,
    pub class: &'static str,
    pub nodes: u64,
    pub skipped: u64,
    pub time_ms: f64,
    pub timeout: bool,
}

#[derive(Debug, Serialize)]
pub struct Summary {
    pub n: usize,
    pub g: usize,
    pub algorithm: &'static str,
    pub instances: usize,
    pub mean_ms: f64,
    pub median_ms: f64,
    pub inconsistent: usize,
    pub ct: usize,
    pub c1: usize,
    pub unknown: usize,
    pub timeouts: usize,
}

pub fn parse_sizes(text: &str) -> anyhow::Result<Vec<(usize, usize)>> {
    text.split(';')
        .map(str::trim)
        .filter(|part| !part.is_empty())
        .map(|part| {
            let (n, g) = part
                .split_once(',')
                .with_context(|| format!("size `{part}` is not of the form n,g"))?;
            Ok((
                n.trim()
                    .parse()
                    .with_context(|| format!("bad n in `{part}`"))?,
                g.trim()
                    .parse()
                    .with_context(|| format!("bad g in `{part}`"))?,
            ))
        })
        .collect()
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of instance `k` of size `(n, g)`: independent of thread count and
/// of which other sizes are in the run.
pub fn instance_seed(base: u64, n: usize, g: usize, k: usize) -> u64 {
    [n, g, k]
        .into_iter()
        .fold(splitmix(base), |z, v| splitmix(z ^ v as u64))
}

fn threads() -> anyhow::Result<usize> {
    match std::env::var("HCLP_THREADS") {
        Ok(v) => {
            let n: usize = v
                .trim()
                .parse()
                .with_context(|| format!("HCLP_THREADS=`{v}`"))?;
            Ok(n.max(1))
        }
        Err(_) => Ok(1),
    }
}

pub fn run(args: &BenchArgs) -> anyhow::Result<()> {
    let sizes = parse_sizes(&args.sizes)?;
    let mut jobs = Vec::new();
    for &(n, g) in &sizes {
        let probe = GenConfig::new(n, args.m, g, 0);
        probe.validate().with_context(|| format!("size {n},{g}"))?;
        let t = args.t.unwrap_or(n);
        if t == 0 {
            bail!("t must be at least 1");
        }
        if args.algorithms.contains(&Algorithm::Oracle) && n > ORACLE_LIMIT {
            bail!("the oracle is limited to {ORACLE_LIMIT} evaluations, size {n},{g} has {n}");
        }
        if args.algorithms.contains(&Algorithm::PcConflicts) && args.s < 2 {
            bail!("s must be at least 2");
        }
        for k in 0..args.per_size {
            jobs.push((n, g, t, k));
        }
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads()?)
        .build()?;
    let timeout = args.timeout_ms.map(Duration::from_millis);
    let mut rows: Vec<(usize, Vec<Row>)> = pool.install(|| {
        jobs.par_iter()
            .enumerate()
            .map(|(order, &(n, g, t, k))| {
                let cfg = GenConfig::new(n, args.m, g, instance_seed(args.seed, n, g, k));
                let inst = generate(&cfg)?;
                let structure = inst.structure();
                let c1 = c1_solve(&structure, inst.statements())?.is_consistent();
                let mut rows = Vec::new();
                for &alg in &args.algorithms {
                    let r = run_algorithm(alg, &structure, inst.statements(), t, args.s, timeout)?;
                    let class = match (&r.verdict, c1) {
                        (_, true) => "c1",
                        (Verdict::Consistent(_), false) => "ct",
                        (Verdict::Inconsistent, false) if alg != Algorithm::C1 => "inconsistent",
                        _ => "unknown",
                    };
                    rows.push(Row {
                        instance_id: format!("n{n}-g{g}-{k}"),
                        n,
                        m: args.m,
                        g,
                        t,
                        s: if alg == Algorithm::PcConflicts {
                            args.s.to_string()
                        } else {
                            String::new()
                        },
                        algorithm: alg.name(),
                        verdict: verdict_name(&r.verdict),
                        class,
                        nodes: r.stats.nodes,
                        skipped: r.stats.candidates_skipped,
                        time_ms: millis(r.stats.elapsed),
                        timeout: matches!(r.verdict, Verdict::TimedOut),
                    });
                }
                Ok((order, rows))
            })
            .collect::<anyhow::Result<Vec<_>>>()
    })?;
    rows.sort_by_key(|(order, _)| *order);
    let rows: Vec<Row> = rows.into_iter().flat_map(|(_, r)| r).collect();

    match &args.out {
        Some(path) => {
            let file = std::fs::File::create(path)
                .with_context(|| format!("creating {}", path.display()))?;
            write_rows(file, &rows)?;
        }
        None => write_rows(std::io::stdout().lock(), &rows)?,
    }

    let summary = summarize(&sizes, &args.algorithms, &rows);
    if let Some(path) = &args.summary_out {
        let mut w =
            csv::Writer::from_path(path).with_context(|| format!("creating {}", path.display()))?;
        for s in &summary {
            w.serialize(s)?;
        }
        w.flush()?;
    }
    if args.out.is_some() {
        print_json(&summary)?;
    } else {
        eprintln!("{}", serde_json::to_string_pretty(&summary)?);
    }
    Ok(())
}

pub fn write_rows<W: Write>(out: W, rows: &[Row]) -> anyhow::Result<()> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(out);
    w.write_record(HEADER)?;
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

fn summarize(sizes: &[(usize, usize)], algorithms: &[Algorithm], rows: &[Row]) -> Vec<Summary> {
    let mut groups: BTreeMap<(usize, usize, usize), Vec<&Row>> = BTreeMap::new();
    for row in rows {
        let alg = algorithms
            .iter()
            .position(|a| a.name() == row.algorithm)
            .unwrap_or(0);
        groups.entry((row.n, row.g, alg)).or_default().push(row);
    }
    let mut out = Vec::new();
    let mut seen = Vec::new();
    for &(n, g) in sizes {
        if seen.contains(&(n, g)) {
            continue;
        }
        seen.push((n, g));
        for (k, alg) in algorithms.iter().enumerate() {
            let Some(rows) = groups.get(&(n, g, k)) else {
                continue;
            };
            let mut times: Vec<f64> = rows.iter().map(|r| r.time_ms).collect();
            times.sort_by(f64::total_cmp);
            let mid = times.len() / 2;
            let median = if times.len() % 2 == 1 {
                times[mid]
            } else {
                (times[mid - 1] + times[mid]) / 2.0
            };
            let count = |class: &str| rows.iter().filter(|r| r.class == class).count();
            out.push(Summary {
                n,
                g,
                algorithm: alg.name(),
                instances: rows.len(),
                mean_ms: times.iter().sum::<f64>() / times.len() as f64,
                median_ms: median,
                inconsistent: count("inconsistent"),
                ct: count("ct"),
                c1: count("c1"),
                unknown: count("unknown"),
                timeouts: rows.iter().filter(|r| r.timeout).count(),
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        assert_eq!(
            parse_sizes("10,10; 15,20;").unwrap(),
            vec![(10, 10), (15, 20)]
        );
        assert!(parse_sizes("10").is_err());
        assert!(parse_sizes("a,1").is_err());
    }

    #[test]
    fn seeds_are_distinct_per_coordinate() {
        let a = instance_seed(1, 10, 10, 0);
        assert_ne!(a, instance_seed(1, 10, 10, 1));
        assert_ne!(a, instance_seed(1, 10, 11, 0));
        assert_ne!(a, instance_seed(2, 10, 10, 0));
        assert_eq!(a, instance_seed(1, 10, 10, 0));
    }
}
