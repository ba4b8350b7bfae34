//! `hclp`: consistency checking, deduction, instance generation, LP export
//! and benchmarking from the command line.
//!
//! Exit codes: 0 consistent / deduced / success, 1 inconsistent / not
//! deduced, 2 error or timeout.

mod bench;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use hclp::milp::{write_lp, MilpFormulation};
use hclp::oracle::brute_force_solve;
use hclp::{
    c1_solve, deduce, generate, pc_check, GenConfig, HclpStructure, Instance, PreferenceStatement,
    SearchConfig, SolveResult, Verdict,
};

use report::{
    millis, print_json, verdict_name, witness_text, DeduceReport, ExportReport, RunReport,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algorithm {
    C1,
    Pc,
    PcConflicts,
    Oracle,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::C1 => "c1",
            Algorithm::Pc => "pc",
            Algorithm::PcConflicts => "pc-conflicts",
            Algorithm::Oracle => "oracle",
        }
    }
}

pub fn run_algorithm(
    alg: Algorithm,
    structure: &HclpStructure,
    statements: &[PreferenceStatement],
    t: usize,
    s: usize,
    timeout: Option<Duration>,
) -> hclp::Result<SolveResult> {
    let mut cfg = SearchConfig::new(t);
    if let Some(timeout) = timeout {
        cfg = cfg.with_timeout(timeout);
    }
    match alg {
        Algorithm::C1 => c1_solve(structure, statements),
        Algorithm::Pc => pc_check(structure, statements, &cfg),
        Algorithm::PcConflicts => pc_check(structure, statements, &cfg.with_conflicts(s)),
        Algorithm::Oracle => brute_force_solve(structure, statements, t),
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "hclp",
    version,
    about = "Preference consistency under HCLP models"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide whether the statements of an instance are C(t)-consistent.
    Solve {
        path: PathBuf,
        #[arg(long, value_enum, default_value = "pc-conflicts")]
        algorithm: Algorithm,
        /// Level size bound; defaults to the number of evaluations.
        #[arg(long)]
        t: Option<usize>,
        /// Conflict set size bound (pc-conflicts only).
        #[arg(long, default_value_t = 5)]
        s: usize,
        #[arg(long = "timeout-ms")]
        timeout_ms: Option<u64>,
    },
    /// Decide whether every C(t) model of the instance satisfies a statement.
    Deduce {
        path: PathBuf,
        /// `a < b` or `a <= b`, by alternative index or name.
        #[arg(long)]
        statement: String,
        #[arg(long)]
        t: Option<usize>,
        /// Search used on the extended statement set.
        #[arg(long, value_enum, default_value = "pc-conflicts")]
        algorithm: Algorithm,
        #[arg(long, default_value_t = 5)]
        s: usize,
        #[arg(long = "timeout-ms")]
        timeout_ms: Option<u64>,
    },
    /// Write a random instance.
    Generate {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 25)]
        m: usize,
        #[arg(long)]
        g: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long = "domain-max", default_value_t = GenConfig::DEFAULT_DOMAIN_MAX)]
        domain_max: u32,
        /// Output file; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the MILP formulation of an instance in LP format.
    ExportLp {
        path: PathBuf,
        #[arg(long)]
        t: Option<usize>,
        /// Output file; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve seeded random instances and write per-instance timings as CSV.
    Bench(bench::BenchArgs),
}

fn load(path: &Path) -> anyhow::Result<(String, Instance)> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let inst = Instance::parse(&text).with_context(|| format!("parsing {}", path.display()))?;
    let id = inst.metadata().name.clone().unwrap_or_else(|| {
        path.file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default()
    });
    Ok((id, inst))
}

fn level_bound(t: Option<usize>, inst: &Instance) -> anyhow::Result<usize> {
    match t {
        Some(0) => anyhow::bail!("t must be at least 1"),
        Some(t) => Ok(t),
        None => Ok(inst.n()),
    }
}

fn write_output(out: &Option<PathBuf>, bytes: &[u8]) -> anyhow::Result<()> {
    match out {
        Some(path) => {
            std::fs::write(path, bytes).with_context(|| format!("writing {}", path.display()))
        }
        None => {
            use std::io::Write;
            std::io::stdout().lock().write_all(bytes)?;
            Ok(())
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Solve {
            path,
            algorithm,
            t,
            s,
            timeout_ms,
        } => {
            let (id, inst) = load(&path)?;
            let t = level_bound(t, &inst)?;
            let timeout = timeout_ms.map(Duration::from_millis);
            let r = run_algorithm(
                algorithm,
                &inst.structure(),
                inst.statements(),
                t,
                s,
                timeout,
            )?;
            let report = RunReport {
                instance: id,
                algorithm: algorithm.name(),
                t: if algorithm == Algorithm::C1 { 1 } else { t },
                s: (algorithm == Algorithm::PcConflicts).then_some(s),
                verdict: verdict_name(&r.verdict),
                witness: witness_text(&r.verdict, inst.evaluation_names()),
                stats: (&r.stats).into(),
                time_ms: millis(r.stats.elapsed),
            };
            print_json(&report)?;
            Ok(match r.verdict {
                Verdict::Consistent(_) => ExitCode::SUCCESS,
                Verdict::Inconsistent => ExitCode::from(1),
                Verdict::TimedOut => ExitCode::from(2),
            })
        }
        Command::Deduce {
            path,
            statement,
            t,
            algorithm,
            s,
            timeout_ms,
        } => {
            let (id, inst) = load(&path)?;
            let t = level_bound(t, &inst)?;
            let query = inst.parse_statement(&statement)?;
            let mut cfg = SearchConfig::new(t);
            if let Some(ms) = timeout_ms {
                cfg = cfg.with_timeout(Duration::from_millis(ms));
            }
            let cfg = match algorithm {
                Algorithm::Pc => cfg,
                Algorithm::PcConflicts => cfg.with_conflicts(s),
                other => anyhow::bail!("deduce supports pc and pc-conflicts, not {}", other.name()),
            };
            let start = std::time::Instant::now();
            let deduced = deduce(&inst.structure(), inst.statements(), &query, &cfg)?;
            let report = DeduceReport {
                instance: id,
                statement: query.display_with(inst.alternative_names()).to_string(),
                algorithm: algorithm.name(),
                t,
                s: (algorithm == Algorithm::PcConflicts).then_some(s),
                deduced,
                time_ms: millis(start.elapsed()),
            };
            print_json(&report)?;
            Ok(if deduced {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Generate {
            n,
            m,
            g,
            seed,
            domain_max,
            out,
        } => {
            let cfg = GenConfig {
                n,
                m,
                g,
                domain_max,
                seed,
            };
            let inst = generate(&cfg)?;
            write_output(&out, inst.serialize().as_bytes())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::ExportLp { path, t, out } => {
            let (id, inst) = load(&path)?;
            let t = level_bound(t, &inst)?;
            let f = MilpFormulation::build(&inst.structure(), inst.statements(), t)?;
            let mut buf = Vec::new();
            write_lp(&f, &mut buf)?;
            write_output(&out, &buf)?;
            if let Some(path) = out {
                print_json(&ExportReport {
                    instance: id,
                    t,
                    variables: f.variables().len(),
                    constraints: f.constraints().len(),
                    path: path.display().to_string(),
                })?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Bench(args) => {
            bench::run(&args)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
