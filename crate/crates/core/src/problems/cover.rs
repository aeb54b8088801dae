use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::StructuralReport;
use crate::error::{Error, Result};
use crate::oracle::{SetFunction, ValueOracle};
use crate::subset::Subset;

/// Weighted maximum coverage: pick sets, score the weight of covered elements.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoverInstance {
    pub n_elements: usize,
    pub weights: Vec<f64>,
    pub sets: Vec<Vec<usize>>,
}

impl CoverInstance {
    pub fn new(n_elements: usize, weights: Vec<f64>, sets: Vec<Vec<usize>>) -> Result<Self> {
        let inst = CoverInstance { n_elements, weights, sets };
        inst.validate()?;
        Ok(inst)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidInstance(msg));
        if self.sets.is_empty() {
            return bad("cover instance needs at least one set".into());
        }
        if self.weights.len() != self.n_elements {
            return bad(format!("{} weights for {} elements", self.weights.len(), self.n_elements));
        }
        if let Some(w) = self.weights.iter().find(|w| !(w.is_finite() && **w >= 0.0)) {
            return bad(format!("element weight {w} is not a finite non-negative number"));
        }
        for (i, set) in self.sets.iter().enumerate() {
            let mut seen = vec![false; self.n_elements];
            for &e in set {
                if e >= self.n_elements {
                    return bad(format!("set {i} references element {e} of {}", self.n_elements));
                }
                if std::mem::replace(&mut seen[e], true) {
                    return bad(format!("set {i} lists element {e} twice"));
                }
            }
        }
        Ok(())
    }

    pub fn n_sets(&self) -> usize {
        self.sets.len()
    }

    /// Number of sets containing each element.
    pub fn frequencies(&self) -> Vec<usize> {
        let mut freq = vec![0; self.n_elements];
        for &e in self.sets.iter().flatten() {
            freq[e] += 1;
        }
        freq
    }

    fn weighted_frequencies(&self) -> impl Iterator<Item = usize> + '_ {
        let freq = self.frequencies();
        (0..self.n_elements).filter(|&e| self.weights[e] > 0.0).map(move |e| freq[e])
    }

    /// Largest frequency over elements with positive weight (0 if there are none).
    pub fn max_freq(&self) -> usize {
        self.weighted_frequencies().max().unwrap_or(0)
    }

    /// Smallest frequency over elements with positive weight (0 if there are none).
    pub fn min_freq(&self) -> usize {
        self.weighted_frequencies().min().unwrap_or(0)
    }

    pub fn structural(&self) -> StructuralReport {
        StructuralReport {
            superseparable: Some(self.max_freq() as f64),
            at_most_subseparable: Some(self.max_freq() as f64),
            at_least_subseparable: Some(self.min_freq() as f64),
        }
    }

    pub fn function(&self) -> CoverFunction {
        CoverFunction {
            sets: self.sets.iter().map(|s| s.iter().copied().collect()).collect(),
            weights: self.weights.clone(),
        }
    }

    pub fn oracle(&self) -> Result<(ValueOracle, StructuralReport)> {
        self.validate()?;
        Ok((ValueOracle::new(Arc::new(self.function()))?, self.structural()))
    }
}

/// `v(𝒞) = Σ { wₑ : e ∈ ⋃𝒞 }`, over the collection of sets.
pub struct CoverFunction {
    sets: Vec<Subset>,
    weights: Vec<f64>,
}

impl SetFunction for CoverFunction {
    fn ground_size(&self) -> usize {
        self.sets.len()
    }

    fn value(&self, s: &Subset) -> f64 {
        let covered = s.iter().fold(Subset::empty(), |acc, i| acc.union(&self.sets[i]));
        covered.iter().map(|e| self.weights[e]).sum()
    }
}
