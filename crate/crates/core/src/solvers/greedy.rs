use super::brute::best_k_subset;
use super::{ceil_tol, check_k, Budgets, Finish, Mode, SolveResult};
use crate::error::{Error, Result};
use crate::oracle::ValueOracle;
use crate::subset::{ElementId, Subset};

/// What the caller vouches for when asking greedy for a guarantee.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct GreedyCertificate {
    /// `v` is at-least-`p`-subseparable.
    pub at_least_p: Option<f64>,
    /// `v` is submodular.
    pub submodular: bool,
}

/// Ratio certified for greedy with `k` picks out of `m` elements.
///
/// `1 − e^{−pK/m}` from at-least-subseparability, lifted to at least
/// `1 − 1/e` when the function is also submodular.
pub fn greedy_guarantee(cert: &GreedyCertificate, k: usize, m: usize) -> Option<f64> {
    let separable = cert.at_least_p.map(|p| 1.0 - (-p * k as f64 / m as f64).exp());
    let submodular = cert.submodular.then(|| 1.0 - (-1f64).exp());
    match (separable, submodular) {
        (Some(a), Some(b)) => Some(a.max(b)),
        (a, b) => a.or(b),
    }
}

/// `K` rounds of adding the element with the largest marginal gain; ties
/// prefer the lower index.
pub fn greedy(oracle: &ValueOracle, k: usize, cert: &GreedyCertificate) -> Result<SolveResult> {
    check_k(oracle, k)?;
    let finish = Finish {
        guarantee: greedy_guarantee(cert, k, oracle.size()),
        ..Finish::new(oracle, Mode::Max)
    };
    let mut chosen = Subset::empty();
    for _ in 0..k {
        let base = oracle.evaluate(&chosen)?;
        let mut best: Option<(f64, ElementId)> = None;
        for x in (0..oracle.size()).filter(|&x| !chosen.contains(x)) {
            let gain = oracle.evaluate(&chosen.with(x))? - base;
            if best.is_none_or(|(g, _)| gain > g) {
                best = Some((gain, x));
            }
        }
        let Some((_, x)) = best else { break };
        chosen.insert(x);
    }
    finish.build(oracle, chosen)
}

/// Smallest `c` with `1 − e^{−γK} ≥ 1 − ε` for every `K > c`: `⌈ln(1/ε)/γ⌉`.
pub fn ptas_threshold(gamma: f64, epsilon: f64) -> Result<usize> {
    if !(gamma.is_finite() && gamma > 0.0) {
        return Err(Error::InvalidParams(format!("γ must be positive, got γ={gamma}")));
    }
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::InvalidParams(format!("ratio slack needs 0 < ε < 1, got ε={epsilon}")));
    }
    Ok(ceil_tol((1.0 / epsilon).ln() / gamma) as usize)
}

/// `(1 − ε)`-approximation for functions that are at-least-`γm`-subseparable:
/// brute force for `K ≤ c`, greedy beyond.
pub fn ptas(oracle: &ValueOracle, k: usize, gamma: f64, epsilon: f64, budgets: &Budgets) -> Result<SolveResult> {
    let threshold = ptas_threshold(gamma, epsilon)?;
    let mut result = if k <= threshold {
        let finish = Finish::new(oracle, Mode::Max);
        let pool: Vec<ElementId> = (0..oracle.size()).collect();
        let chosen = best_k_subset(oracle, &pool, k, budgets)?;
        finish.build(oracle, chosen)?
    } else {
        greedy(oracle, k, &GreedyCertificate::default())?
    };
    result.guarantee = Some(1.0 - epsilon);
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::fixtures::{inst_a, inst_b};

    #[test]
    fn inst_a_greedy() {
        let (o, _) = inst_a().oracle().unwrap();
        let r = greedy(&o, 2, &GreedyCertificate::default()).unwrap();
        assert_eq!(r.chosen, Subset::from_iter([0, 2]));
        assert_eq!(r.value, 4.0);
        assert_eq!(r.guarantee, None);
    }

    #[test]
    fn inst_b_greedy() {
        let (o, _) = inst_b().oracle(2).unwrap();
        let r = greedy(&o, 1, &GreedyCertificate::default()).unwrap();
        assert_eq!(r.chosen, Subset::singleton(1));
        assert_eq!(r.value, 2.0);
    }

    #[test]
    fn zero_rounds() {
        let (o, _) = inst_a().oracle().unwrap();
        let r = greedy(&o, 0, &GreedyCertificate::default()).unwrap();
        assert!(r.chosen.is_empty());
        assert_eq!(r.value, 0.0);
    }

    #[test]
    fn k_above_m_is_invalid() {
        let (o, _) = inst_a().oracle().unwrap();
        assert_eq!(greedy(&o, 4, &GreedyCertificate::default()).unwrap_err(), Error::InvalidK { k: 4, size: 3 });
    }

    #[test]
    fn guarantees() {
        let e1 = 1.0 - (-1f64).exp();
        let only_p = GreedyCertificate { at_least_p: Some(1.0), submodular: false };
        assert!((greedy_guarantee(&only_p, 2, 3).unwrap() - (1.0 - (-2f64 / 3.0).exp())).abs() < 1e-15);
        let both = GreedyCertificate { at_least_p: Some(1.0), submodular: true };
        assert_eq!(greedy_guarantee(&both, 2, 3), Some(e1));
        let strong = GreedyCertificate { at_least_p: Some(3.0), submodular: true };
        assert_eq!(greedy_guarantee(&strong, 2, 3), Some(1.0 - (-2f64).exp()));
        assert_eq!(greedy_guarantee(&GreedyCertificate::default(), 2, 3), None);
    }

    #[test]
    fn thresholds() {
        assert_eq!(ptas_threshold(0.5, 0.1).unwrap(), 5);
        assert_eq!(ptas_threshold(1.0, (-3f64).exp()).unwrap(), 3);
        assert_eq!(ptas_threshold(1.0 / 3.0, 0.5).unwrap(), 3);
        assert!(ptas_threshold(0.0, 0.5).is_err());
        assert!(ptas_threshold(1.0, 1.0).is_err());
    }

    #[test]
    fn ptas_branches() {
        let (o, _) = inst_a().oracle().unwrap();
        let r = ptas(&o, 2, 1.0 / 3.0, 0.5, &Budgets::default()).unwrap();
        assert_eq!(r.value, 4.0);
        assert_eq!(r.guarantee, Some(0.5));
        // γ = 10 makes c = 1, so K = 2 takes the greedy branch
        let g = ptas(&o, 2, 10.0, 0.5, &Budgets::default()).unwrap();
        assert_eq!(g.chosen, Subset::from_iter([0, 2]));
    }
}
