use super::{Budgets, Finish, Mode, SolveResult};
use crate::error::{Error, Result};
use crate::oracle::ValueOracle;
use crate::subset::{binomial, Combinations, ElementId, Subset};

/// Exact maximizer over all `min(K, m)`-element subsets.
///
/// Monotone objectives never lose value by growing a set, so only subsets of
/// exactly `min(K, m)` elements are visited. Ties go to the first subset in
/// lexicographic order of sorted indices.
pub fn brute_force(oracle: &ValueOracle, k: usize, budgets: &Budgets) -> Result<SolveResult> {
    let finish = Finish { guarantee: Some(1.0), ..Finish::new(oracle, Mode::Max) };
    let pool: Vec<ElementId> = (0..oracle.size()).collect();
    let chosen = best_k_subset(oracle, &pool, k, budgets)?;
    finish.build(oracle, chosen)
}

/// Best `min(k, |pool|)`-subset of `pool` (sorted ascending).
pub(super) fn best_k_subset(
    oracle: &ValueOracle,
    pool: &[ElementId],
    k: usize,
    budgets: &Budgets,
) -> Result<Subset> {
    let k = k.min(pool.len());
    let required = binomial(pool.len(), k);
    if required > budgets.enumeration {
        return Err(Error::EnumerationBudget { required, budget: budgets.enumeration });
    }
    let mut best: Option<(f64, Subset)> = None;
    for s in Combinations::new(pool, k) {
        let v = oracle.evaluate(&s)?;
        if best.as_ref().is_none_or(|(b, _)| v > *b) {
            best = Some((v, s));
        }
    }
    Ok(best.map(|(_, s)| s).unwrap_or_default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::fixtures::{inst_a, inst_b};

    #[test]
    fn inst_a_pairs() {
        let (o, _) = inst_a().oracle().unwrap();
        let r = brute_force(&o, 2, &Budgets::default()).unwrap();
        assert_eq!(r.chosen, Subset::from_iter([0, 2]));
        assert_eq!(r.value, 4.0);
        assert_eq!(r.residual, 0.0);
    }

    #[test]
    fn inst_b_single() {
        let (o, _) = inst_b().oracle(2).unwrap();
        let r = brute_force(&o, 1, &Budgets::default()).unwrap();
        assert_eq!(r.chosen, Subset::singleton(1));
        assert_eq!(r.value, 2.0);
    }

    #[test]
    fn large_k_returns_everything() {
        let (o, _) = inst_a().oracle().unwrap();
        let r = brute_force(&o, 10, &Budgets::default()).unwrap();
        assert_eq!(r.chosen, Subset::full(3));
    }

    #[test]
    fn k_zero_is_empty() {
        let (o, _) = inst_a().oracle().unwrap();
        let r = brute_force(&o, 0, &Budgets::default()).unwrap();
        assert!(r.chosen.is_empty());
        assert_eq!(r.value, 0.0);
    }

    #[test]
    fn budget_exceeded() {
        let o = ValueOracle::from_fn(30, |s| s.len() as f64).unwrap();
        let err = brute_force(&o, 15, &Budgets::default()).unwrap_err();
        assert_eq!(err, Error::EnumerationBudget { required: 155_117_520, budget: 2_000_000 });
    }

    #[test]
    fn ties_prefer_lexicographically_first() {
        let o = ValueOracle::from_fn(4, |s| s.len() as f64).unwrap();
        let r = brute_force(&o, 2, &Budgets::default()).unwrap();
        assert_eq!(r.chosen, Subset::from_iter([0, 1]));
    }
}
