//! Reference computations that share no code with the library's solvers.
#![allow(dead_code)]

use fptsub::problems::{BMatchingInstance, CoverInstance};
use fptsub::Subset;

/// Best value over all subsets of size at most `k`, scanning every bitmask.
pub fn brute_max(m: usize, k: usize, value: impl Fn(&Subset) -> f64) -> f64 {
    (0u64..1 << m)
        .filter(|mask| mask.count_ones() as usize <= k)
        .map(|mask| value(&Subset::from_mask(mask)))
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Smallest `k` whose best subset reaches the value of the full set.
pub fn min_exact_size(m: usize, value: impl Fn(&Subset) -> f64) -> usize {
    let full = value(&Subset::from_mask((1u64 << m) - 1));
    (0..=m)
        .find(|&k| (brute_max(m, k, &value) - full).abs() <= 1e-9 * full.abs().max(1.0))
        .unwrap()
}

/// Total weight of the elements covered by the chosen sets.
pub fn cover_value(inst: &CoverInstance, s: &Subset) -> f64 {
    let mut covered = vec![false; inst.n_elements];
    for i in s.iter() {
        for &e in &inst.sets[i] {
            covered[e] = true;
        }
    }
    covered.iter().zip(&inst.weights).filter(|(c, _)| **c).map(|(_, w)| w).sum()
}

/// Best b-matching restricted to X-vertices in `s`, found by trying every
/// assignment of each Y-vertex to nothing or to one of its eligible
/// neighbours.
pub fn exhaustive_bmatching(inst: &BMatchingInstance, s: &Subset) -> f64 {
    let mut by_y: Vec<Vec<(usize, f64)>> = vec![Vec::new(); inst.ny];
    for e in &inst.edges {
        if s.contains(e.x) {
            by_y[e.y].push((e.x, e.weight));
        }
    }
    let mut remaining: Vec<u32> = inst.capacities.clone();
    fn go(y: usize, by_y: &[Vec<(usize, f64)>], remaining: &mut [u32]) -> f64 {
        if y == by_y.len() {
            return 0.0;
        }
        let mut best = go(y + 1, by_y, remaining);
        for &(x, w) in &by_y[y] {
            if remaining[x] > 0 {
                remaining[x] -= 1;
                best = best.max(w + go(y + 1, by_y, remaining));
                remaining[x] += 1;
            }
        }
        best
    }
    go(0, &by_y, &mut remaining)
}

/// Approval-counting utility of one agent: α dotted with its top `committee`
/// approved items inside `s` (all utilities are 1).
pub fn owa_value(approvals: &[Vec<usize>], alpha: &[f64], committee: usize, s: &Subset) -> f64 {
    approvals
        .iter()
        .map(|ballot| {
            let hits = ballot.iter().filter(|&&i| s.contains(i)).count().min(committee);
            alpha[..hits].iter().sum::<f64>()
        })
        .sum()
}

/// Normal-approximation band for an empirical frequency over `n` draws.
pub fn within_sigmas(count: usize, n: usize, p: f64, sigmas: f64) -> bool {
    let expected = n as f64 * p;
    let sd = (n as f64 * p * (1.0 - p)).sqrt();
    (count as f64 - expected).abs() <= sigmas * sd
}
