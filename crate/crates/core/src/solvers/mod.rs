//! Solvers for choosing at most `K` elements that maximize a set function.
//!
//! | solver                  | target                     | needs                         |
//! |-------------------------|----------------------------|-------------------------------|
//! | [`brute_force`]         | exact                      | `C(m, K)` within budget       |
//! | [`preselect_enumerate`] | `v(S) ≥ β·OPT`             | superseparable at `p`         |
//! | [`greedy`]              | `v(S) ≥ (1 − e^{−pK/m})·OPT` | at-least-subseparable at `p` |
//! | [`ptas`]                | `v(S) ≥ (1 − ε)·OPT`       | at-least-subseparable at `γm` |
//! | [`randomized_min`]      | residual ≤ β·residual*, w.p. 1 − ε | at-most-subseparable at `p` |
//! | [`min_or_max`]          | either of the two above, w.p. 1 − ε | submodular               |
//! | [`best_subset_exact`]   | smallest `S` with `v(S) = v(X)`, w.p. 1 − ε | at-most-subseparable |
//!
//! The separability parameter is always trusted as given; see
//! [`crate::separability`] for certifying it on small ground sets.

mod brute;
mod greedy;
mod preselect;
mod randomized;
pub mod rng;

use serde::{Deserialize, Serialize};

pub use brute::brute_force;
pub use greedy::{greedy, greedy_guarantee, ptas, ptas_threshold, GreedyCertificate};
pub use preselect::{pool_size, preselect_enumerate};
pub use randomized::{
    best_subset_exact, exact_run_count, min_or_max, min_or_max_p, randomized_min, run_count, sample_step,
    single_run, ExactOutcome,
};

use crate::error::{Error, Result};
use crate::oracle::ValueOracle;
use crate::subset::Subset;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Max,
    Min,
    MinOrMax,
    Exact,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveResult {
    pub chosen: Subset,
    pub value: f64,
    /// `v(X) − value`.
    pub residual: f64,
    pub mode: Mode,
    /// Approximation ratio certified by the solver, when it has one.
    pub guarantee: Option<f64>,
    /// Set-function invocations charged to this solve.
    pub evaluations: u64,
    pub seed: Option<u64>,
    /// Restarts performed (randomized solvers), zero otherwise.
    pub runs: u64,
}

/// `K`, `β`, `ε` and the separability parameter `p`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SchemeParams {
    pub k: usize,
    pub beta: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub epsilon: Option<f64>,
    pub p: f64,
}

impl SchemeParams {
    /// Parameters for the maximization variant: `0 ≤ β < 1`.
    pub fn max(k: usize, beta: f64, p: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&beta) {
            return Err(Error::InvalidParams(format!("maximization needs 0 ≤ β < 1, got β={beta}")));
        }
        check_p(p)?;
        Ok(SchemeParams { k, beta, epsilon: None, p })
    }

    /// Parameters for the minimization variants: `β > 1`, `0 < ε < 1`.
    pub fn min(k: usize, beta: f64, epsilon: f64, p: f64) -> Result<Self> {
        check_min_ratio(beta)?;
        check_epsilon(epsilon)?;
        check_p(p)?;
        Ok(SchemeParams { k, beta, epsilon: Some(epsilon), p })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budgets {
    /// Largest number of subsets an enumeration may visit.
    pub enumeration: u128,
    /// Largest number of single runs a restart loop may perform.
    pub runs: u64,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets { enumeration: 2_000_000, runs: 10_000_000 }
    }
}

/// `⌈x⌉`, snapping to the nearest integer when `x` is within floating-point
/// noise of it (so `ln(1/e^{-3})/1` gives 3, not 4).
pub fn ceil_tol(x: f64) -> f64 {
    let r = x.round();
    if (x - r).abs() <= 1e-9 * x.abs().max(1.0) {
        r
    } else {
        x.ceil()
    }
}

fn check_p(p: f64) -> Result<()> {
    if p.is_finite() && p > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParams(format!("separability parameter must be positive, got p={p}")))
    }
}

fn check_min_ratio(beta: f64) -> Result<()> {
    if beta.is_finite() && beta > 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParams(format!("minimization needs β > 1, got β={beta}")))
    }
}

fn check_epsilon(epsilon: f64) -> Result<()> {
    if epsilon > 0.0 && epsilon < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParams(format!("failure probability needs 0 < ε < 1, got ε={epsilon}")))
    }
}

fn check_k(oracle: &ValueOracle, k: usize) -> Result<()> {
    if k > oracle.size() {
        Err(Error::InvalidK { k, size: oracle.size() })
    } else {
        Ok(())
    }
}

struct Finish {
    mode: Mode,
    guarantee: Option<f64>,
    seed: Option<u64>,
    runs: u64,
    start_evaluations: u64,
}

impl Finish {
    fn new(oracle: &ValueOracle, mode: Mode) -> Self {
        Finish { mode, guarantee: None, seed: None, runs: 0, start_evaluations: oracle.evaluations() }
    }

    fn build(self, oracle: &ValueOracle, chosen: Subset) -> Result<SolveResult> {
        let value = oracle.evaluate(&chosen)?;
        let residual = oracle.full_value()? - value;
        Ok(SolveResult {
            chosen,
            value,
            residual,
            mode: self.mode,
            guarantee: self.guarantee,
            evaluations: oracle.evaluations() - self.start_evaluations,
            seed: self.seed,
            runs: self.runs,
        })
    }
}
