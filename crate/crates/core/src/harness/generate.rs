//! Seeded random instances whose structural parameters hold by construction.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::format::{Instance, InstanceFile};
use crate::error::{Error, Result};
use crate::problems::{chamberlin_courant, pav, BMatchingInstance, CoverInstance, Edge, OwaInstance, StructuralReport};

/// Each element joins between `min_freq` and `max_freq` distinct sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct CoverGen {
    pub n_elements: usize,
    pub n_sets: usize,
    pub max_freq: usize,
    pub min_freq: usize,
    /// Element weights are integers drawn from `1..=max_weight`.
    pub max_weight: u32,
}

impl Default for CoverGen {
    fn default() -> Self {
        CoverGen { n_elements: 8, n_sets: 6, max_freq: 2, min_freq: 1, max_weight: 1 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OwaPreset {
    #[default]
    ChamberlinCourant,
    Pav,
}

/// Every agent approves exactly `k` items; the OWA vector has length
/// `committee`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct OwaGen {
    pub n_agents: usize,
    pub m_items: usize,
    pub k: usize,
    pub committee: usize,
    pub preset: OwaPreset,
}

impl Default for OwaGen {
    fn default() -> Self {
        OwaGen { n_agents: 5, m_items: 6, k: 3, committee: 3, preset: OwaPreset::ChamberlinCourant }
    }
}

/// Every Y-vertex gets between 1 and `y_degree` edges (capped at `nx`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct BMatchingGen {
    pub nx: usize,
    pub ny: usize,
    pub y_degree: usize,
    /// Capacities are drawn from `1..=max_capacity`.
    pub max_capacity: u32,
    /// Weights are integers in `1..=max_weight`, or reals in
    /// `[0, max_weight)` when `fractional` is set.
    pub max_weight: u32,
    pub fractional: bool,
}

impl Default for BMatchingGen {
    fn default() -> Self {
        BMatchingGen { nx: 4, ny: 6, y_degree: 2, max_capacity: 2, max_weight: 5, fractional: false }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GenSpec {
    Cover(CoverGen),
    Owa(OwaGen),
    Bmatching(BMatchingGen),
}

impl GenSpec {
    /// The bounds the generator guarantees.
    pub fn declared(&self) -> StructuralReport {
        match *self {
            GenSpec::Cover(g) => StructuralReport {
                superseparable: Some(g.max_freq as f64),
                at_most_subseparable: Some(g.max_freq as f64),
                at_least_subseparable: (g.min_freq > 0).then_some(g.min_freq as f64),
            },
            GenSpec::Owa(g) => StructuralReport {
                superseparable: Some(g.k as f64),
                at_most_subseparable: Some(g.k as f64),
                at_least_subseparable: None,
            },
            GenSpec::Bmatching(g) => {
                StructuralReport { superseparable: Some(g.y_degree as f64), ..Default::default() }
            }
        }
    }
}

/// A file holding a freshly generated instance with its declared bounds.
pub fn generate(spec: &GenSpec, seed: u64) -> Result<InstanceFile> {
    let instance = match spec {
        GenSpec::Cover(g) => Instance::Cover(cover(g, seed)?),
        GenSpec::Owa(g) => Instance::Owa(owa(g, seed)?),
        GenSpec::Bmatching(g) => Instance::Bmatching(bmatching(g, seed)?),
    };
    Ok(InstanceFile::new(instance).with_declared_p(spec.declared()))
}

fn infeasible(msg: String) -> Result<()> {
    Err(Error::Infeasible(msg))
}

pub fn cover(g: &CoverGen, seed: u64) -> Result<CoverInstance> {
    if g.n_elements == 0 || g.n_sets == 0 {
        infeasible("cover instances need at least one element and one set".into())?;
    }
    if g.min_freq > g.max_freq {
        infeasible(format!("min_freq {} exceeds max_freq {}", g.min_freq, g.max_freq))?;
    }
    if g.max_freq > g.n_sets {
        infeasible(format!("max_freq {} exceeds the number of sets {}", g.max_freq, g.n_sets))?;
    }
    if g.max_weight == 0 {
        infeasible("max_weight must be positive".into())?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sets = vec![Vec::new(); g.n_sets];
    let mut weights = Vec::with_capacity(g.n_elements);
    for e in 0..g.n_elements {
        weights.push(rng.gen_range(1..=g.max_weight) as f64);
        let freq = rng.gen_range(g.min_freq..=g.max_freq);
        for s in sample(&mut rng, g.n_sets, freq) {
            sets[s].push(e);
        }
    }
    CoverInstance::new(g.n_elements, weights, sets)
}

pub fn owa(g: &OwaGen, seed: u64) -> Result<OwaInstance> {
    if g.n_agents == 0 || g.m_items == 0 {
        infeasible("OWA instances need at least one agent and one item".into())?;
    }
    if g.k == 0 || g.k > g.m_items {
        infeasible(format!("k={} approvals is not possible with {} items", g.k, g.m_items))?;
    }
    if g.committee == 0 {
        infeasible("the OWA vector needs at least one entry".into())?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let approvals = (0..g.n_agents)
        .map(|_| {
            let mut ballot = sample(&mut rng, g.m_items, g.k).into_vec();
            ballot.sort_unstable();
            ballot
        })
        .collect();
    let alpha = match g.preset {
        OwaPreset::ChamberlinCourant => chamberlin_courant(g.committee),
        OwaPreset::Pav => pav(g.committee),
    };
    OwaInstance::new(g.m_items, g.k, approvals, alpha)
}

pub fn bmatching(g: &BMatchingGen, seed: u64) -> Result<BMatchingInstance> {
    if g.nx == 0 {
        infeasible("b-matching instances need at least one X-vertex".into())?;
    }
    if g.max_capacity == 0 || g.max_weight == 0 {
        infeasible("max_capacity and max_weight must be positive".into())?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let capacities = (0..g.nx).map(|_| rng.gen_range(1..=g.max_capacity)).collect();
    let mut edges = Vec::new();
    let top = g.y_degree.min(g.nx);
    for y in 0..g.ny {
        if top == 0 {
            break;
        }
        let degree = rng.gen_range(1..=top);
        let mut xs = sample(&mut rng, g.nx, degree).into_vec();
        xs.sort_unstable();
        for x in xs {
            let weight = if g.fractional {
                rng.gen_range(0.0..g.max_weight as f64)
            } else {
                rng.gen_range(1..=g.max_weight) as f64
            };
            edges.push(Edge::new(x, y, weight));
        }
    }
    BMatchingInstance::new(g.nx, g.ny, edges, capacities)
}
