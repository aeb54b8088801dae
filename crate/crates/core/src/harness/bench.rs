//! Benchmark campaigns: generated instances × solver configurations.
//!
//! ```json
//! {
//!   "schema_version": 1,
//!   "exact_cap": 12,
//!   "instances": [
//!     { "id": "cover-f2", "generator": { "kind": "cover", "n_sets": 9, "max_freq": 2 }, "seeds": { "start": 0, "count": 200 } }
//!   ],
//!   "solvers": [ { "solver": "alg1", "k": 3, "beta": 0.7 } ]
//! }
//! ```
//!
//! Each row solves one generated instance with one solver configuration; the
//! instance seed doubles as the solver seed, so a row is reproduced by
//! [`super::solve::solve`] on `generate(generator, seed)` with the recorded
//! request. Rows whose ground set is at most `exact_cap` are compared with
//! brute force.

use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::generate::{generate, GenSpec};
use super::solve::{solve, SolveRequest, SolverName};
use super::SCHEMA_VERSION;
use crate::error::{Error, Result};
use crate::oracle::{approx_eq, ValueOracle};
use crate::solvers::{brute_force, Budgets};
use crate::subset::Subset;

const DEFAULT_EXACT_CAP: usize = 12;
const SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedRange {
    pub start: u64,
    pub count: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceSpec {
    pub id: String,
    pub generator: GenSpec,
    pub seeds: SeedRange,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Campaign {
    pub schema_version: u32,
    /// Largest ground set for which brute-force references are computed.
    #[serde(default)]
    pub exact_cap: Option<usize>,
    #[serde(default)]
    pub instances: Vec<InstanceSpec>,
    /// Solver configurations; their `seed` is replaced by the row's seed.
    #[serde(default)]
    pub solvers: Vec<SolveRequest>,
}

impl Campaign {
    pub fn from_json(text: &str) -> Result<Self> {
        let campaign: Campaign = serde_json::from_str(text)?;
        if campaign.schema_version != SCHEMA_VERSION {
            return Err(Error::Parse(format!(
                "unsupported schema_version {} (expected {SCHEMA_VERSION})",
                campaign.schema_version
            )));
        }
        Ok(campaign)
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub instance_id: String,
    pub instance_seed: u64,
    pub solver_index: usize,
    pub request: SolveRequest,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chosen: Option<Subset>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
    /// Brute-force optimum at the same `K`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ratio: Option<f64>,
    /// Whether the solver's guarantee was violated; absent without a reference.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failed: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub evaluations: Option<u64>,
    pub wall_time_ms: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverSummary {
    pub solver_index: usize,
    pub solver: SolverName,
    pub rows: usize,
    pub errors: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub worst_ratio: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mean_ratio: Option<f64>,
    /// Rows with a reference that violated the guarantee.
    pub failures: usize,
    pub checked: usize,
    pub failure_rate: f64,
    /// ε for randomized solvers, 0 for deterministic ones.
    pub allowed_failure_rate: f64,
    /// `failure_rate ≤ ε + 3·sqrt(ε(1−ε)/checked)`.
    pub within_bound: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub schema_version: u32,
    pub records: Vec<BenchRecord>,
    pub summary: Vec<SolverSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub worst_ratio: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mean_ratio: Option<f64>,
}

impl BenchReport {
    pub fn to_json(&self) -> String {
        super::to_pretty(self)
    }
}

/// Runs every row, in parallel; records come back sorted by
/// `(instance id, instance seed, solver index)`.
pub fn run_campaign(campaign: &Campaign) -> BenchReport {
    let cap = campaign.exact_cap.unwrap_or(DEFAULT_EXACT_CAP);
    let mut rows = Vec::new();
    for spec in &campaign.instances {
        for seed in spec.seeds.start..spec.seeds.start + spec.seeds.count {
            for index in 0..campaign.solvers.len() {
                rows.push((spec, seed, index));
            }
        }
    }
    let mut records: Vec<BenchRecord> = rows
        .into_par_iter()
        .map(|(spec, seed, index)| {
            let request = SolveRequest { seed, ..campaign.solvers[index].clone() };
            run_row(spec, seed, index, request, cap)
        })
        .collect();
    records.sort_by(|a, b| {
        (&a.instance_id, a.instance_seed, a.solver_index).cmp(&(&b.instance_id, b.instance_seed, b.solver_index))
    });

    let summary = (0..campaign.solvers.len())
        .map(|i| summarize(i, campaign.solvers[i].solver, campaign.solvers[i].epsilon, &records))
        .collect();
    let ratios: Vec<f64> = records.iter().filter_map(|r| r.ratio).collect();
    BenchReport {
        schema_version: SCHEMA_VERSION,
        worst_ratio: ratios.iter().copied().reduce(f64::min),
        mean_ratio: (!ratios.is_empty()).then(|| ratios.iter().sum::<f64>() / ratios.len() as f64),
        records,
        summary,
    }
}

fn run_row(spec: &InstanceSpec, seed: u64, index: usize, request: SolveRequest, cap: usize) -> BenchRecord {
    let start = Instant::now();
    let mut record = BenchRecord {
        instance_id: spec.id.clone(),
        instance_seed: seed,
        solver_index: index,
        request,
        chosen: None,
        value: None,
        residual: None,
        exact: None,
        ratio: None,
        failed: None,
        evaluations: None,
        wall_time_ms: 0.0,
        error: None,
    };
    if let Err(e) = fill_row(spec, seed, cap, &mut record) {
        record.error = Some(e.to_string());
    }
    record.wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
    record
}

fn fill_row(spec: &InstanceSpec, seed: u64, cap: usize, record: &mut BenchRecord) -> Result<()> {
    let file = generate(&spec.generator, seed)?;
    let report = solve(&file, &record.request)?;
    let result = report.result;
    record.chosen = Some(result.chosen.clone());
    record.value = Some(result.value);
    record.residual = Some(result.residual);
    record.evaluations = Some(result.evaluations);

    if file.instance.ground_size() > cap {
        return Ok(());
    }
    let (oracle, _) = file.instance.oracle(Some(record.request.k))?;
    let k = record.request.k;
    let opt = brute_force(&oracle, k, &Budgets { enumeration: u128::MAX, ..Budgets::default() })?.value;
    let full = oracle.full_value()?;
    record.exact = Some(opt);
    record.ratio = Some(if opt > 0.0 { result.value / opt } else { 1.0 });

    let tol = |x: f64| SLACK * x.abs().max(1.0);
    let residual_star = full - opt;
    let failed = match record.request.solver {
        SolverName::Brute | SolverName::Alg1 | SolverName::Greedy | SolverName::Ptas => {
            let g = result.guarantee.unwrap_or(0.0);
            result.value < g * opt - tol(opt)
        }
        SolverName::Alg3Min => {
            let beta = report.params.beta.unwrap_or(1.0);
            result.residual > beta * residual_star + tol(full)
        }
        SolverName::MinOrMax => {
            let beta = report.params.beta.unwrap_or(1.0);
            let max_ok = result.value >= opt / beta - tol(opt);
            let min_ok = result.residual <= beta * residual_star + tol(full);
            !(max_ok || min_ok)
        }
        SolverName::BestSubset => {
            let smallest = smallest_exact_size(&oracle, k)?;
            match (report.found, smallest) {
                (Some(true), Some(size)) => result.chosen.len() != size,
                (Some(true), None) => true,
                (_, Some(_)) => true,
                (_, None) => false,
            }
        }
    };
    record.failed = Some(failed);
    Ok(())
}

/// Smallest `K' ≤ k_max` whose best subset reaches `v(X)`.
fn smallest_exact_size(oracle: &ValueOracle, k_max: usize) -> Result<Option<usize>> {
    let full = oracle.full_value()?;
    let budgets = Budgets { enumeration: u128::MAX, ..Budgets::default() };
    for k in 1..=k_max {
        if approx_eq(brute_force(oracle, k, &budgets)?.value, full) {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

fn summarize(index: usize, solver: SolverName, epsilon: Option<f64>, records: &[BenchRecord]) -> SolverSummary {
    let mine: Vec<&BenchRecord> = records.iter().filter(|r| r.solver_index == index).collect();
    let ratios: Vec<f64> = mine.iter().filter_map(|r| r.ratio).collect();
    let checked = mine.iter().filter(|r| r.failed.is_some()).count();
    let failures = mine.iter().filter(|r| r.failed == Some(true)).count();
    let failure_rate = if checked > 0 { failures as f64 / checked as f64 } else { 0.0 };
    let allowed = if solver.is_randomized() { epsilon.unwrap_or(0.0) } else { 0.0 };
    let slack = if checked > 0 { 3.0 * (allowed * (1.0 - allowed) / checked as f64).sqrt() } else { 0.0 };
    SolverSummary {
        solver_index: index,
        solver,
        rows: mine.len(),
        errors: mine.iter().filter(|r| r.error.is_some()).count(),
        worst_ratio: ratios.iter().copied().reduce(f64::min),
        mean_ratio: (!ratios.is_empty()).then(|| ratios.iter().sum::<f64>() / ratios.len() as f64),
        failures,
        checked,
        failure_rate,
        allowed_failure_rate: allowed,
        within_bound: failure_rate <= allowed + slack,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::generate::CoverGen;

    fn cover_campaign(solvers: Vec<SolveRequest>, count: u64) -> Campaign {
        Campaign {
            schema_version: 1,
            exact_cap: None,
            instances: vec![InstanceSpec {
                id: "cover".into(),
                generator: GenSpec::Cover(CoverGen { n_elements: 10, n_sets: 7, max_freq: 2, ..Default::default() }),
                seeds: SeedRange { start: 0, count },
            }],
            solvers,
        }
    }

    #[test]
    fn empty_campaign() {
        let report = run_campaign(&Campaign::from_json(r#"{"schema_version": 1}"#).unwrap());
        assert!(report.records.is_empty());
        assert!(report.summary.is_empty());
        assert_eq!(report.worst_ratio, None);
    }

    #[test]
    fn alg1_rows_meet_beta() {
        let alg1 = SolveRequest { beta: Some(0.7), ..SolveRequest::new(SolverName::Alg1, 3) };
        let report = run_campaign(&cover_campaign(vec![alg1], 20));
        assert_eq!(report.records.len(), 20);
        assert!(report.worst_ratio.unwrap() >= 0.7);
        assert_eq!(report.summary[0].failures, 0);
        assert!(report.summary[0].within_bound);
    }

    #[test]
    fn rows_are_sorted_and_errors_recorded() {
        let ok = SolveRequest::new(SolverName::Greedy, 2);
        let bad = SolveRequest::new(SolverName::Greedy, 50);
        let report = run_campaign(&cover_campaign(vec![ok, bad], 5));
        let keys: Vec<(u64, usize)> = report.records.iter().map(|r| (r.instance_seed, r.solver_index)).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        assert_eq!(report.summary[1].errors, 5);
        assert_eq!(report.summary[0].errors, 0);
    }

    #[test]
    fn row_reproduces_from_its_tuple() {
        let req = SolveRequest { beta: Some(2.0), epsilon: Some(0.2), ..SolveRequest::new(SolverName::Alg3Min, 3) };
        let campaign = cover_campaign(vec![req], 4);
        let report = run_campaign(&campaign);
        for record in &report.records {
            let file = generate(&campaign.instances[0].generator, record.instance_seed).unwrap();
            let again = solve(&file, &record.request).unwrap().result;
            assert_eq!(Some(again.value), record.value);
            assert_eq!(Some(again.chosen), record.chosen);
        }
    }
}
