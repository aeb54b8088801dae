//! Successive-shortest-path min-cost flow, used for max-weight b-matching.
//!
//! Costs are generic so integral instances run on `i64` and stay exact,
//! while real-weighted instances run on `f64` with a small optimality slack.

use std::ops::{Add, Neg};

pub(crate) trait Cost: Copy + Add<Output = Self> + Neg<Output = Self> {
    const ZERO: Self;
    const INF: Self;
    fn scale(self, k: i64) -> Self;
    /// `self < other` beyond numerical noise.
    fn less(self, other: Self) -> bool;
}

impl Cost for i64 {
    const ZERO: Self = 0;
    const INF: Self = i64::MAX / 4;
    fn scale(self, k: i64) -> Self {
        self * k
    }
    fn less(self, other: Self) -> bool {
        self < other
    }
}

impl Cost for f64 {
    const ZERO: Self = 0.0;
    const INF: Self = f64::INFINITY;
    fn scale(self, k: i64) -> Self {
        self * k as f64
    }
    fn less(self, other: Self) -> bool {
        if other == f64::INFINITY {
            return self < other;
        }
        self < other - 1e-9 * 1f64.max(self.abs()).max(other.abs())
    }
}

struct Arc<C> {
    to: usize,
    cap: i64,
    cost: C,
    rev: usize,
}

pub(crate) struct FlowGraph<C> {
    adj: Vec<Vec<Arc<C>>>,
}

impl<C: Cost> FlowGraph<C> {
    pub fn new(nodes: usize) -> Self {
        FlowGraph { adj: (0..nodes).map(|_| Vec::new()).collect() }
    }

    pub fn add_edge(&mut self, from: usize, to: usize, cap: i64, cost: C) {
        let rev_from = self.adj[to].len() + usize::from(from == to);
        let rev_to = self.adj[from].len();
        self.adj[from].push(Arc { to, cap, cost, rev: rev_from });
        self.adj[to].push(Arc { to: from, cap: 0, cost: -cost, rev: rev_to });
    }

    /// Pushes flow from `source` to `sink` along cheapest paths while they
    /// have negative cost, returning the total (negative) cost.
    ///
    /// Every path cost the procedure sees is non-decreasing, so stopping at
    /// the first non-negative path yields the minimum cost over all flow
    /// values, which is the maximum-profit flow.
    pub fn min_cost_any_flow(&mut self, source: usize, sink: usize) -> C {
        let n = self.adj.len();
        let mut total = C::ZERO;
        loop {
            // Bellman–Ford: residual costs can be negative.
            let mut dist = vec![C::INF; n];
            let mut prev: Vec<Option<(usize, usize)>> = vec![None; n];
            dist[source] = C::ZERO;
            for _ in 0..n {
                let mut changed = false;
                for u in 0..n {
                    if let Some(du) = finite(dist[u]) {
                        for (i, a) in self.adj[u].iter().enumerate() {
                            let cand = du + a.cost;
                            if a.cap > 0 && cand.less(dist[a.to]) {
                                dist[a.to] = cand;
                                prev[a.to] = Some((u, i));
                                changed = true;
                            }
                        }
                    }
                }
                if !changed {
                    break;
                }
            }
            if prev[sink].is_none() || !dist[sink].less(C::ZERO) {
                return total;
            }
            let mut push = i64::MAX;
            let mut v = sink;
            while let Some((u, i)) = prev[v] {
                push = push.min(self.adj[u][i].cap);
                v = u;
            }
            let mut v = sink;
            while let Some((u, i)) = prev[v] {
                self.adj[u][i].cap -= push;
                let rev = self.adj[u][i].rev;
                self.adj[v][rev].cap += push;
                v = u;
            }
            total = total + dist[sink].scale(push);
        }
    }
}

fn finite<C: Cost>(d: C) -> Option<C> {
    if d.less(C::INF) {
        Some(d)
    } else {
        None
    }
}
