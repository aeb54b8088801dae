use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use fptsub::harness::bench::{run_campaign, Campaign};
use fptsub::harness::generate::{generate, BMatchingGen, CoverGen, GenSpec, OwaGen, OwaPreset};
use fptsub::harness::solve::{solve, SolveRequest, SolverName};
use fptsub::harness::verify::verify_instance;
use fptsub::harness::{error_json, exit_code, InstanceFile};
use fptsub::separability::SeparabilityKind;
use fptsub::{Error, Result};

#[derive(Parser)]
#[command(name = "fptsub", version, about = "Separability-parameterized subset selection")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance file with one of the solvers.
    Solve(SolveArgs),
    /// Check a separability inequality on an instance file.
    Verify(VerifyArgs),
    /// Generate a seeded random instance.
    Gen(GenArgs),
    /// Run a benchmark campaign.
    Bench(BenchArgs),
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long)]
    instance: PathBuf,
    /// brute, alg1, greedy, ptas, alg3-min, min-or-max or best-subset.
    #[arg(long)]
    solver: SolverName,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long)]
    epsilon: Option<f64>,
    /// Override the instance's structural separability parameter.
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    gamma: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Largest number of subsets an enumeration may visit.
    #[arg(long)]
    budget_evals: Option<u128>,
    /// Largest number of restarts a randomized solver may perform.
    #[arg(long)]
    budget_runs: Option<u64>,
    /// Sample N states when checking declared parameters on large instances.
    #[arg(long, value_name = "N")]
    sampled_verify: Option<usize>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    instance: PathBuf,
    /// superseparable, at-least-subseparable or at-most-subseparable
    /// (or super, at-least, at-most).
    #[arg(long)]
    kind: SeparabilityKind,
    /// Defaults to the instance's structural parameter for `kind`.
    #[arg(long)]
    p: Option<f64>,
    /// Sample N states instead of enumerating (required above 14 elements).
    #[arg(long, value_name = "N")]
    sampled_verify: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GenArgs {
    #[command(subcommand)]
    kind: GenKind,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum GenKind {
    /// Weighted set cover; each element lies in min_freq..=max_freq sets.
    Cover {
        #[arg(long)]
        n_elements: usize,
        #[arg(long)]
        n_sets: usize,
        #[arg(long)]
        max_freq: usize,
        #[arg(long, default_value_t = 1)]
        min_freq: usize,
        #[arg(long, default_value_t = 1)]
        max_weight: u32,
    },
    /// k-approval election with an OWA objective.
    Owa {
        #[arg(long)]
        agents: usize,
        #[arg(long)]
        items: usize,
        #[arg(long)]
        k: usize,
        /// Length of the OWA vector (defaults to k).
        #[arg(long)]
        committee: Option<usize>,
        /// chamberlin-courant or pav.
        #[arg(long, default_value = "chamberlin-courant", value_parser = parse_preset)]
        preset: OwaPreset,
    },
    /// Capacitated bipartite b-matching.
    Bmatching {
        #[arg(long)]
        nx: usize,
        #[arg(long)]
        ny: usize,
        #[arg(long)]
        y_degree: usize,
        #[arg(long, default_value_t = 2)]
        max_capacity: u32,
        #[arg(long, default_value_t = 5)]
        max_weight: u32,
        /// Draw real-valued weights instead of integers.
        #[arg(long)]
        fractional: bool,
    },
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long)]
    campaign: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_preset(s: &str) -> std::result::Result<OwaPreset, String> {
    match s {
        "chamberlin-courant" | "cc" => Ok(OwaPreset::ChamberlinCourant),
        "pav" => Ok(OwaPreset::Pav),
        other => Err(format!("unknown OWA preset '{other}'")),
    }
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Solve(a) => {
            let file = InstanceFile::read(&a.instance)?;
            let req = SolveRequest {
                solver: a.solver,
                k: a.k,
                beta: a.beta,
                epsilon: a.epsilon,
                p: a.p,
                gamma: a.gamma,
                seed: a.seed,
                budget_evals: a.budget_evals,
                budget_runs: a.budget_runs,
                sampled_verify: a.sampled_verify,
            };
            emit(&solve(&file, &req)?.to_json(), a.out.as_deref())
        }
        Command::Verify(a) => {
            let file = InstanceFile::read(&a.instance)?;
            let report = verify_instance(&file, a.kind, a.p, a.sampled_verify, a.seed)?;
            emit(&report.to_json(), a.out.as_deref())
        }
        Command::Gen(a) => {
            let spec = match a.kind {
                GenKind::Cover { n_elements, n_sets, max_freq, min_freq, max_weight } => {
                    GenSpec::Cover(CoverGen { n_elements, n_sets, max_freq, min_freq, max_weight })
                }
                GenKind::Owa { agents, items, k, committee, preset } => GenSpec::Owa(OwaGen {
                    n_agents: agents,
                    m_items: items,
                    k,
                    committee: committee.unwrap_or(k),
                    preset,
                }),
                GenKind::Bmatching { nx, ny, y_degree, max_capacity, max_weight, fractional } => {
                    GenSpec::Bmatching(BMatchingGen { nx, ny, y_degree, max_capacity, max_weight, fractional })
                }
            };
            emit(&generate(&spec, a.seed)?.to_json(), a.out.as_deref())
        }
        Command::Bench(a) => {
            let campaign = Campaign::read(&a.campaign)?;
            emit(&run_campaign(&campaign).to_json(), a.out.as_deref())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", error_json(&e));
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
