use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::StructuralReport;
use crate::error::{Error, Result};
use crate::oracle::{SetFunction, ValueOracle};
use crate::subset::Subset;

/// OWA-based item selection with k-approval utilities.
///
/// Each agent approves exactly `k` items. An agent's satisfaction from `S`
/// is the OWA vector dotted with its utilities over `S`, sorted descending
/// and truncated at the committee size.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OwaInstance {
    pub n_agents: usize,
    pub m_items: usize,
    pub k: usize,
    pub approvals: Vec<Vec<usize>>,
    pub owa: Vec<f64>,
}

/// Chamberlin–Courant weights `(1, 0, …, 0)`.
pub fn chamberlin_courant(len: usize) -> Vec<f64> {
    (0..len).map(|j| if j == 0 { 1.0 } else { 0.0 }).collect()
}

/// Proportional Approval Voting weights `(1, 1/2, …, 1/len)`.
pub fn pav(len: usize) -> Vec<f64> {
    (1..=len).map(|j| 1.0 / j as f64).collect()
}

impl OwaInstance {
    pub fn new(m_items: usize, k: usize, approvals: Vec<Vec<usize>>, owa: Vec<f64>) -> Result<Self> {
        let inst = OwaInstance { n_agents: approvals.len(), m_items, k, approvals, owa };
        inst.validate()?;
        Ok(inst)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidInstance(msg));
        if self.m_items == 0 {
            return bad("OWA instance needs at least one item".into());
        }
        if self.approvals.len() != self.n_agents {
            return bad(format!("{} approval sets for {} agents", self.approvals.len(), self.n_agents));
        }
        if self.k > self.m_items {
            return bad(format!("k={} approvals exceed {} items", self.k, self.m_items));
        }
        if self.owa.is_empty() {
            return bad("OWA vector is empty".into());
        }
        if let Some(a) = self.owa.iter().find(|a| !(a.is_finite() && **a >= 0.0)) {
            return bad(format!("OWA weight {a} is not a finite non-negative number"));
        }
        for (i, ballot) in self.approvals.iter().enumerate() {
            if ballot.len() != self.k {
                return bad(format!("agent {i} approves {} items, expected exactly k={}", ballot.len(), self.k));
            }
            let mut seen = vec![false; self.m_items];
            for &x in ballot {
                if x >= self.m_items {
                    return bad(format!("agent {i} approves item {x} of {}", self.m_items));
                }
                if std::mem::replace(&mut seen[x], true) {
                    return bad(format!("agent {i} approves item {x} twice"));
                }
            }
        }
        Ok(())
    }

    /// Whether α is sorted non-increasingly, the shape under which the
    /// objective is submodular.
    pub fn is_non_increasing(&self) -> bool {
        self.owa.windows(2).all(|w| w[0] >= w[1])
    }

    pub fn structural(&self) -> StructuralReport {
        StructuralReport {
            superseparable: Some(self.k as f64),
            at_most_subseparable: Some(self.k as f64),
            at_least_subseparable: None,
        }
    }

    /// Objective for committees of size at most `committee`.
    pub fn function(&self, committee: usize) -> Result<OwaFunction> {
        if self.owa.len() < committee {
            return Err(Error::InvalidParams(format!(
                "OWA vector has {} entries, committee size is {committee}",
                self.owa.len()
            )));
        }
        let mut prefix = Vec::with_capacity(committee + 1);
        prefix.push(0.0);
        for j in 0..committee {
            prefix.push(prefix[j] + self.owa[j]);
        }
        Ok(OwaFunction {
            m_items: self.m_items,
            ballots: self.approvals.iter().map(|b| b.iter().copied().collect()).collect(),
            prefix,
        })
    }

    pub fn oracle(&self, committee: usize) -> Result<(ValueOracle, StructuralReport)> {
        self.validate()?;
        Ok((ValueOracle::new(Arc::new(self.function(committee)?))?, self.structural()))
    }
}

/// `v(S) = Σᵢ Σ_{j ≤ min(K, |Aᵢ ∩ S|)} αⱼ`.
pub struct OwaFunction {
    m_items: usize,
    ballots: Vec<Subset>,
    /// `prefix[j] = α₁ + … + αⱼ`, for `j ≤ K`.
    prefix: Vec<f64>,
}

impl SetFunction for OwaFunction {
    fn ground_size(&self) -> usize {
        self.m_items
    }

    fn value(&self, s: &Subset) -> f64 {
        let cap = self.prefix.len() - 1;
        self.ballots.iter().map(|b| self.prefix[b.intersection_len(s).min(cap)]).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::fixtures::inst_b;

    #[test]
    fn inst_b_values() {
        let (o, r) = inst_b().oracle(2).unwrap();
        assert_eq!(o.evaluate(&Subset::singleton(1)).unwrap(), 2.0);
        assert_eq!(o.evaluate(&Subset::from_iter([0, 2])).unwrap(), 2.0);
        assert_eq!(r.superseparable, Some(2.0));
        assert_eq!(r.at_most_subseparable, Some(2.0));
    }

    #[test]
    fn identity_owa_counts_truncated_approvals() {
        let inst = OwaInstance::new(5, 3, vec![vec![0, 1, 2], vec![2, 3, 4], vec![0, 3, 4]], vec![1.0; 2]).unwrap();
        let (o, _) = inst.oracle(2).unwrap();
        for mask in 0u64..32 {
            let s = Subset::from_mask(mask);
            let expect: usize = inst
                .approvals
                .iter()
                .map(|b| b.iter().filter(|x| s.contains(**x)).count().min(2))
                .sum();
            assert_eq!(o.evaluate(&s).unwrap(), expect as f64);
        }
    }

    #[test]
    fn presets() {
        assert_eq!(chamberlin_courant(3), vec![1.0, 0.0, 0.0]);
        assert_eq!(pav(3), vec![1.0, 0.5, 1.0 / 3.0]);
    }

    #[test]
    fn short_owa_vector_is_config_error() {
        assert!(matches!(inst_b().oracle(3), Err(Error::InvalidParams(_))));
    }

    #[test]
    fn rejects_non_k_approval() {
        assert!(OwaInstance::new(3, 2, vec![vec![0]], vec![1.0]).is_err());
        assert!(OwaInstance::new(3, 2, vec![vec![0, 0]], vec![1.0]).is_err());
        assert!(OwaInstance::new(3, 2, vec![vec![0, 5]], vec![1.0]).is_err());
        assert!(OwaInstance::new(3, 2, vec![vec![0, 1]], vec![-1.0]).is_err());
        assert!(!OwaInstance::new(3, 2, vec![vec![0, 1]], vec![0.0, 1.0]).unwrap().is_non_increasing());
    }
}
