use super::brute::best_k_subset;
use super::{ceil_tol, check_p, Budgets, Finish, Mode, SchemeParams, SolveResult};
use crate::error::{Error, Result};
use crate::oracle::ValueOracle;
use crate::subset::{ElementId, Subset};

/// `⌈pK/(1 − β) + K⌉`, the number of top singletons kept.
pub fn pool_size(p: f64, k: usize, beta: f64) -> f64 {
    ceil_tol(p * k as f64 / (1.0 - beta) + k as f64)
}

/// Keep the elements with the largest singleton values, then enumerate.
///
/// With `v` superseparable at `params.p`, the best `K`-subset of the pool
/// is within a factor `β` of the optimum. Ties in singleton value prefer the
/// lower index.
pub fn preselect_enumerate(oracle: &ValueOracle, params: &SchemeParams, budgets: &Budgets) -> Result<SolveResult> {
    if !(0.0..1.0).contains(&params.beta) {
        return Err(Error::InvalidParams(format!("maximization needs 0 ≤ β < 1, got β={}", params.beta)));
    }
    check_p(params.p)?;
    let finish = Finish { guarantee: Some(params.beta), ..Finish::new(oracle, Mode::Max) };
    let m = oracle.size();
    let size = pool_size(params.p, params.k, params.beta).min(m as f64) as usize;

    let mut ranked: Vec<(f64, ElementId)> = (0..m)
        .map(|x| Ok((oracle.evaluate(&Subset::singleton(x))?, x)))
        .collect::<Result<_>>()?;
    ranked.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
    let mut pool: Vec<ElementId> = ranked.into_iter().take(size).map(|(_, x)| x).collect();
    pool.sort_unstable();

    let chosen = best_k_subset(oracle, &pool, params.k, budgets)?;
    finish.build(oracle, chosen)
}
