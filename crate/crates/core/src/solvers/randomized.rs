use rand::Rng;

use super::rng::{stream_id, stream_rng};
use super::{
    ceil_tol, check_epsilon, check_k, check_min_ratio, check_p, Budgets, Finish, Mode, SchemeParams, SolveResult,
};
use crate::error::{Error, Result};
use crate::oracle::{approx_eq, ValueOracle, ABS_TOL, REL_TOL};
use crate::subset::{ElementId, Subset};

/// `⌈−ln ε · (pβ/(β − 1))^K⌉`, restarts needed by [`randomized_min`].
pub fn run_count(p: f64, beta: f64, k: usize, epsilon: f64) -> f64 {
    ceil_tol(-epsilon.ln() * (p * beta / (beta - 1.0)).powi(k as i32)).max(1.0)
}

/// `⌈−ln ε · p^K⌉`, restarts spent on size `K` by [`best_subset_exact`].
pub fn exact_run_count(p: f64, k: usize, epsilon: f64) -> f64 {
    ceil_tol(-epsilon.ln() * p.powi(k as i32)).max(1.0)
}

/// One draw of an element outside `s`, with probability proportional to its
/// marginal gain. `None` when no marginal is above tolerance.
pub fn sample_step<R: Rng + ?Sized>(oracle: &ValueOracle, s: &Subset, rng: &mut R) -> Result<Option<ElementId>> {
    let base = oracle.evaluate(s)?;
    let mut gains = Vec::new();
    let mut total = 0.0;
    for x in (0..oracle.size()).filter(|&x| !s.contains(x)) {
        let with = oracle.evaluate(&s.with(x))?;
        let gain = with - base;
        if gain > ABS_TOL.max(REL_TOL * base.abs().max(with.abs())) {
            total += gain;
            gains.push((x, total));
        }
    }
    let Some(&(last, _)) = gains.last() else {
        return Ok(None);
    };
    let u = rng.gen::<f64>() * total;
    Ok(Some(gains.iter().find(|&&(_, cum)| u < cum).map_or(last, |&(x, _)| x)))
}

/// `K` marginal-proportional selection steps starting from the empty set.
///
/// When every remaining marginal is zero the set is padded to `K` with
/// uniformly random unused elements.
pub fn single_run<R: Rng + ?Sized>(oracle: &ValueOracle, k: usize, rng: &mut R) -> Result<Subset> {
    check_k(oracle, k)?;
    let mut s = Subset::empty();
    while s.len() < k {
        match sample_step(oracle, &s, rng)? {
            Some(x) => s.insert(x),
            None => {
                let mut unused: Vec<ElementId> = (0..oracle.size()).filter(|&x| !s.contains(x)).collect();
                while s.len() < k {
                    let i = rng.gen_range(0..unused.len());
                    s.insert(unused.swap_remove(i));
                }
            }
        }
    }
    Ok(s)
}

struct Best {
    value: f64,
    chosen: Subset,
}

impl Best {
    fn offer(slot: &mut Option<Best>, value: f64, chosen: Subset) {
        if slot.as_ref().is_none_or(|b| value > b.value) {
            *slot = Some(Best { value, chosen });
        }
    }
}

/// Restarts of [`single_run`], keeping the largest value.
///
/// Runs draw from independent streams of `master_seed`; ties keep the lowest
/// run index. The loop stops early once a run reaches `v(X)`, since no later
/// run can do strictly better on a monotone function.
pub fn randomized_min(
    oracle: &ValueOracle,
    params: &SchemeParams,
    master_seed: u64,
    budgets: &Budgets,
) -> Result<SolveResult> {
    let epsilon = params
        .epsilon
        .ok_or_else(|| Error::InvalidParams("minimization needs a failure probability ε".into()))?;
    check_min_ratio(params.beta)?;
    check_epsilon(epsilon)?;
    check_p(params.p)?;
    check_k(oracle, params.k)?;

    let required = run_count(params.p, params.beta, params.k, epsilon);
    if required > budgets.runs as f64 {
        return Err(Error::RunBudget { required, budget: budgets.runs });
    }
    let mut finish = Finish {
        guarantee: Some(params.beta),
        seed: Some(master_seed),
        ..Finish::new(oracle, Mode::Min)
    };
    let full = oracle.full_value()?;
    let mut best = None;
    for run in 0..required as u64 {
        let mut rng = stream_rng(master_seed, stream_id(0, run));
        let s = single_run(oracle, params.k, &mut rng)?;
        let v = oracle.evaluate(&s)?;
        Best::offer(&mut best, v, s);
        finish.runs = run + 1;
        if v >= full {
            break;
        }
    }
    let chosen = best.map(|b| b.chosen).unwrap_or_default();
    finish.build(oracle, chosen)
}

/// `(β/(β − 1)) · Σ v({x}) / v(X)`, the parameter [`min_or_max`] hands to
/// [`randomized_min`].
pub fn min_or_max_p(oracle: &ValueOracle, beta: f64) -> Result<f64> {
    check_min_ratio(beta)?;
    let full = oracle.full_value()?;
    if full <= ABS_TOL {
        return Err(Error::DegenerateInstance);
    }
    Ok(beta / (beta - 1.0) * oracle.singleton_sum()? / full)
}

/// For submodular `v`: with probability `1 − ε`, either `v(S) ≥ OPT/β` or
/// the residual is within `β` of the best residual.
pub fn min_or_max(
    oracle: &ValueOracle,
    k: usize,
    beta: f64,
    epsilon: f64,
    master_seed: u64,
    budgets: &Budgets,
) -> Result<SolveResult> {
    let start = oracle.evaluations();
    let p = min_or_max_p(oracle, beta)?;
    let params = SchemeParams::min(k, beta, epsilon, p)?;
    let mut result = randomized_min(oracle, &params, master_seed, budgets)?;
    result.mode = Mode::MinOrMax;
    result.evaluations = oracle.evaluations() - start;
    Ok(result)
}

#[derive(Debug, Clone, PartialEq)]
pub enum ExactOutcome {
    /// A set with `v(S) = v(X)` at the smallest size tried successfully.
    Found(SolveResult),
    /// No size up to the limit succeeded; carries the best run seen.
    NotFound(SolveResult),
}

impl ExactOutcome {
    pub fn result(&self) -> &SolveResult {
        match self {
            ExactOutcome::Found(r) | ExactOutcome::NotFound(r) => r,
        }
    }

    pub fn into_result(self) -> SolveResult {
        match self {
            ExactOutcome::Found(r) | ExactOutcome::NotFound(r) => r,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, ExactOutcome::Found(_))
    }
}

/// Smallest `S` with `v(S) = v(X)` for at-most-`p`-subseparable `v`.
///
/// Tries `K = 1, 2, …, k_max` in turn, spending [`exact_run_count`] restarts
/// on each. `runs` in the result counts restarts across all sizes.
pub fn best_subset_exact(
    oracle: &ValueOracle,
    p: f64,
    epsilon: f64,
    master_seed: u64,
    k_max: usize,
    budgets: &Budgets,
) -> Result<ExactOutcome> {
    check_p(p)?;
    check_epsilon(epsilon)?;
    check_k(oracle, k_max)?;
    let mut finish = Finish { seed: Some(master_seed), ..Finish::new(oracle, Mode::Exact) };
    let full = oracle.full_value()?;
    let mut best = None;
    for k in 1..=k_max {
        let required = exact_run_count(p, k, epsilon);
        if required > budgets.runs as f64 {
            return Err(Error::RunBudget { required, budget: budgets.runs });
        }
        for run in 0..required as u64 {
            let mut rng = stream_rng(master_seed, stream_id(k as u64, run));
            let s = single_run(oracle, k, &mut rng)?;
            let v = oracle.evaluate(&s)?;
            finish.runs += 1;
            if approx_eq(v, full) {
                return finish.build(oracle, s).map(ExactOutcome::Found);
            }
            Best::offer(&mut best, v, s);
        }
    }
    let chosen = best.map(|b| b.chosen).unwrap_or_default();
    finish.build(oracle, chosen).map(ExactOutcome::NotFound)
}
