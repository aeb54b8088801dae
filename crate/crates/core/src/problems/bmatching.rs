use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::flow::{Cost, FlowGraph};
use super::StructuralReport;
use crate::error::{Error, Result};
use crate::oracle::{SetFunction, ValueOracle};
use crate::subset::Subset;

/// An edge `(x, y, weight)` between the capacitated side X and the unit side Y.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "(usize, usize, f64)", into = "(usize, usize, f64)")]
pub struct Edge {
    pub x: usize,
    pub y: usize,
    pub weight: f64,
}

impl Edge {
    pub fn new(x: usize, y: usize, weight: f64) -> Self {
        Edge { x, y, weight }
    }
}

impl From<(usize, usize, f64)> for Edge {
    fn from((x, y, weight): (usize, usize, f64)) -> Self {
        Edge { x, y, weight }
    }
}

impl From<Edge> for (usize, usize, f64) {
    fn from(e: Edge) -> Self {
        (e.x, e.y, e.weight)
    }
}

/// Weighted b-matching: X-vertex `x` takes at most `capacities[x]` edges,
/// every Y-vertex at most one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BMatchingInstance {
    pub nx: usize,
    pub ny: usize,
    pub edges: Vec<Edge>,
    pub capacities: Vec<u32>,
}

impl BMatchingInstance {
    pub fn new(nx: usize, ny: usize, edges: Vec<Edge>, capacities: Vec<u32>) -> Result<Self> {
        let inst = BMatchingInstance { nx, ny, edges, capacities };
        inst.validate()?;
        Ok(inst)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidInstance(msg));
        if self.nx == 0 {
            return bad("b-matching instance needs at least one X-vertex".into());
        }
        if self.capacities.len() != self.nx {
            return bad(format!("{} capacities for {} X-vertices", self.capacities.len(), self.nx));
        }
        if self.capacities.contains(&0) {
            return bad("capacities must be positive".into());
        }
        let mut seen = std::collections::HashSet::new();
        for e in &self.edges {
            if e.x >= self.nx || e.y >= self.ny {
                return bad(format!("edge ({}, {}) out of range", e.x, e.y));
            }
            if !(e.weight.is_finite() && e.weight >= 0.0) {
                return bad(format!("edge ({}, {}) has weight {}", e.x, e.y, e.weight));
            }
            if !seen.insert((e.x, e.y)) {
                return bad(format!("duplicate edge ({}, {})", e.x, e.y));
            }
        }
        Ok(())
    }

    /// Largest number of edges incident to a single Y-vertex.
    pub fn y_degree_bound(&self) -> usize {
        let mut deg = vec![0usize; self.ny];
        for e in &self.edges {
            deg[e.y] += 1;
        }
        deg.into_iter().max().unwrap_or(0)
    }

    pub fn structural(&self) -> StructuralReport {
        StructuralReport {
            superseparable: Some(self.y_degree_bound() as f64),
            ..Default::default()
        }
    }

    fn integral(&self) -> bool {
        let limit = (1u64 << 50) as f64 / (self.ny as f64 + 1.0);
        self.edges.iter().all(|e| e.weight.fract() == 0.0 && e.weight <= limit)
    }

    /// Maximum total weight of a b-matching that only uses X-vertices in `s`.
    pub fn max_weight_b_matching(&self, s: &Subset) -> f64 {
        if self.integral() {
            -(self.solve(s, |w| w as i64) as f64)
        } else {
            -self.solve(s, |w| w)
        }
    }

    fn solve<C: Cost>(&self, s: &Subset, cost: impl Fn(f64) -> C) -> C {
        let (source, sink) = (0, 1 + self.nx + self.ny);
        let x_node = |x: usize| 1 + x;
        let y_node = |y: usize| 1 + self.nx + y;
        let mut g = FlowGraph::new(sink + 1);
        for x in s.iter() {
            g.add_edge(source, x_node(x), i64::from(self.capacities[x]), C::ZERO);
        }
        let mut used_y = vec![false; self.ny];
        for e in self.edges.iter().filter(|e| s.contains(e.x) && e.weight > 0.0) {
            g.add_edge(x_node(e.x), y_node(e.y), 1, -cost(e.weight));
            used_y[e.y] = true;
        }
        for (y, _) in used_y.iter().enumerate().filter(|(_, u)| **u) {
            g.add_edge(y_node(y), sink, 1, C::ZERO);
        }
        g.min_cost_any_flow(source, sink)
    }

    pub fn function(&self) -> BMatchingFunction {
        BMatchingFunction { inst: self.clone() }
    }

    pub fn oracle(&self) -> Result<(ValueOracle, StructuralReport)> {
        self.validate()?;
        Ok((ValueOracle::new(Arc::new(self.function()))?, self.structural()))
    }
}

/// `v(S)` = max-weight b-matching in the graph induced by `S ∪ Y`.
pub struct BMatchingFunction {
    inst: BMatchingInstance,
}

impl SetFunction for BMatchingFunction {
    fn ground_size(&self) -> usize {
        self.inst.nx
    }

    fn value(&self, s: &Subset) -> f64 {
        self.inst.max_weight_b_matching(s)
    }
}
