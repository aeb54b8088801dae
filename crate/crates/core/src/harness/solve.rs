//! Solver dispatch and solve reports.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::format::InstanceFile;
use super::SCHEMA_VERSION;
use crate::error::{Error, Result};
use crate::oracle::ValueOracle;
use crate::problems::StructuralReport;
use crate::separability::{self, SeparabilityKind, SeparabilityReport, EXHAUSTIVE_LIMIT};
use crate::solvers::{self, Budgets, ExactOutcome, GreedyCertificate, SchemeParams, SolveResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolverName {
    Brute,
    Alg1,
    Greedy,
    Ptas,
    Alg3Min,
    MinOrMax,
    BestSubset,
}

impl SolverName {
    pub const ALL: [SolverName; 7] = [
        SolverName::Brute,
        SolverName::Alg1,
        SolverName::Greedy,
        SolverName::Ptas,
        SolverName::Alg3Min,
        SolverName::MinOrMax,
        SolverName::BestSubset,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SolverName::Brute => "brute",
            SolverName::Alg1 => "alg1",
            SolverName::Greedy => "greedy",
            SolverName::Ptas => "ptas",
            SolverName::Alg3Min => "alg3-min",
            SolverName::MinOrMax => "min-or-max",
            SolverName::BestSubset => "best-subset",
        }
    }

    pub fn is_randomized(self) -> bool {
        matches!(self, SolverName::Alg3Min | SolverName::MinOrMax | SolverName::BestSubset)
    }
}

impl fmt::Display for SolverName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SolverName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SolverName::ALL
            .into_iter()
            .find(|n| n.name() == s)
            .ok_or_else(|| Error::InvalidParams(format!("unknown solver '{s}'")))
    }
}

/// Everything a solve needs besides the instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveRequest {
    pub solver: SolverName,
    pub k: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub beta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub epsilon: Option<f64>,
    /// Overrides the structural parameter.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub p: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub gamma: Option<f64>,
    #[serde(default)]
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub budget_evals: Option<u128>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub budget_runs: Option<u64>,
    /// Sample this many states when certifying declared parameters on
    /// ground sets above the exhaustive limit.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub sampled_verify: Option<usize>,
}

impl SolveRequest {
    pub fn new(solver: SolverName, k: usize) -> Self {
        SolveRequest {
            solver,
            k,
            beta: None,
            epsilon: None,
            p: None,
            gamma: None,
            seed: 0,
            budget_evals: None,
            budget_runs: None,
            sampled_verify: None,
        }
    }

    pub fn budgets(&self) -> Budgets {
        let d = Budgets::default();
        Budgets { enumeration: self.budget_evals.unwrap_or(d.enumeration), runs: self.budget_runs.unwrap_or(d.runs) }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PSource {
    Structural,
    Override,
    Computed,
}

/// Parameters after defaults were filled in.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResolvedParams {
    pub k: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p_source: Option<PSource>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub schema_version: u32,
    pub solver: SolverName,
    pub instance_kind: String,
    pub ground_size: usize,
    pub params: ResolvedParams,
    pub structural_p: StructuralReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub declared_p: Option<StructuralReport>,
    /// Checks of `declared_p` against the oracle.
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub declared_p_checks: Vec<SeparabilityReport>,
    /// Set for `best-subset`: whether a set with `v(S) = v(X)` was found.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub found: Option<bool>,
    pub result: SolveResult,
}

impl SolveReport {
    /// Canonical text of the report; identical inputs give identical bytes.
    pub fn to_json(&self) -> String {
        super::to_pretty(self)
    }
}

fn need<T>(value: Option<T>, what: &str, solver: SolverName) -> Result<T> {
    value.ok_or_else(|| Error::InvalidParams(format!("solver {solver} needs {what}")))
}

fn resolve_p(
    req: &SolveRequest,
    structural: &StructuralReport,
    kind: SeparabilityKind,
) -> Result<(f64, PSource)> {
    match (req.p, structural.get(kind)) {
        (Some(p), _) => Ok((p, PSource::Override)),
        (None, Some(p)) => Ok((p, PSource::Structural)),
        (None, None) => Err(Error::InvalidParams(format!(
            "solver {} needs a {kind} parameter; the instance certifies none, pass --p",
            req.solver
        ))),
    }
}

/// Runs `req.solver` on the instance and assembles the report.
pub fn solve(file: &InstanceFile, req: &SolveRequest) -> Result<SolveReport> {
    let instance = &file.instance;
    // OWA utilities are truncated at the committee size, which is K here.
    let (oracle, structural) = instance.oracle(Some(req.k))?;
    let budgets = req.budgets();
    let mut params = ResolvedParams { k: req.k, beta: None, epsilon: None, p: None, p_source: None, gamma: None };
    let mut found = None;

    let result = match req.solver {
        SolverName::Brute => solvers::brute_force(&oracle, req.k, &budgets)?,
        SolverName::Alg1 => {
            let beta = need(req.beta, "--beta", req.solver)?;
            let (p, source) = resolve_p(req, &structural, SeparabilityKind::Superseparable)?;
            params.beta = Some(beta);
            params.p = Some(p);
            params.p_source = Some(source);
            solvers::preselect_enumerate(&oracle, &SchemeParams::max(req.k, beta, p)?, &budgets)?
        }
        SolverName::Greedy => {
            let at_least = match resolve_p(req, &structural, SeparabilityKind::AtLeastSubseparable) {
                Ok((p, source)) => {
                    params.p = Some(p);
                    params.p_source = Some(source);
                    Some(p)
                }
                Err(_) => None,
            };
            let cert = GreedyCertificate { at_least_p: at_least, submodular: instance.submodular() };
            solvers::greedy(&oracle, req.k, &cert)?
        }
        SolverName::Ptas => {
            let epsilon = need(req.epsilon, "--epsilon", req.solver)?;
            let gamma = match req.gamma {
                Some(g) => g,
                None => {
                    let (p, source) = resolve_p(req, &structural, SeparabilityKind::AtLeastSubseparable)?;
                    params.p = Some(p);
                    params.p_source = Some(source);
                    p / oracle.size() as f64
                }
            };
            params.epsilon = Some(epsilon);
            params.gamma = Some(gamma);
            solvers::ptas(&oracle, req.k, gamma, epsilon, &budgets)?
        }
        SolverName::Alg3Min => {
            let beta = need(req.beta, "--beta", req.solver)?;
            let epsilon = need(req.epsilon, "--epsilon", req.solver)?;
            let (p, source) = resolve_p(req, &structural, SeparabilityKind::AtMostSubseparable)?;
            params.beta = Some(beta);
            params.epsilon = Some(epsilon);
            params.p = Some(p);
            params.p_source = Some(source);
            solvers::randomized_min(&oracle, &SchemeParams::min(req.k, beta, epsilon, p)?, req.seed, &budgets)?
        }
        SolverName::MinOrMax => {
            let beta = need(req.beta, "--beta", req.solver)?;
            let epsilon = need(req.epsilon, "--epsilon", req.solver)?;
            params.beta = Some(beta);
            params.epsilon = Some(epsilon);
            params.p = Some(solvers::min_or_max_p(&oracle, beta)?);
            params.p_source = Some(PSource::Computed);
            solvers::min_or_max(&oracle, req.k, beta, epsilon, req.seed, &budgets)?
        }
        SolverName::BestSubset => {
            let epsilon = need(req.epsilon, "--epsilon", req.solver)?;
            let (p, source) = resolve_p(req, &structural, SeparabilityKind::AtMostSubseparable)?;
            params.epsilon = Some(epsilon);
            params.p = Some(p);
            params.p_source = Some(source);
            let outcome = solvers::best_subset_exact(&oracle, p, epsilon, req.seed, req.k, &budgets)?;
            found = Some(matches!(outcome, ExactOutcome::Found(_)));
            outcome.into_result()
        }
    };

    let declared_p_checks = match &file.declared_p {
        Some(declared) => certify(&oracle.fresh(), declared, req.sampled_verify, req.seed)?,
        None => Vec::new(),
    };

    Ok(SolveReport {
        schema_version: SCHEMA_VERSION,
        solver: req.solver,
        instance_kind: instance.kind().to_string(),
        ground_size: oracle.size(),
        params,
        structural_p: structural,
        declared_p: file.declared_p,
        declared_p_checks,
        found,
        result,
    })
}

/// Exhaustive checks of each declared parameter when the ground set is small
/// enough, sampled ones when asked, nothing otherwise.
pub fn certify(
    oracle: &ValueOracle,
    declared: &StructuralReport,
    sampled: Option<usize>,
    seed: u64,
) -> Result<Vec<SeparabilityReport>> {
    if oracle.size() <= EXHAUSTIVE_LIMIT {
        let table = separability::ValueTable::build(oracle)?;
        Ok(declared.entries().into_iter().map(|(kind, p)| separability::verify_table(&table, kind, p)).collect())
    } else if let Some(trials) = sampled {
        declared
            .entries()
            .into_iter()
            .map(|(kind, p)| separability::verify_sampled(oracle, kind, p, trials, seed))
            .collect()
    } else {
        Ok(Vec::new())
    }
}
