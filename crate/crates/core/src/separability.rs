//! Exhaustive certification of set-function structure.
//!
//! For a ground set `X` and a state `S ⊆ X`, write `Σ∂(S)` for the sum of all
//! singleton marginals `Σ_{x∈X} v(S ∪ {x}) − v(S)`. The three separability
//! properties bound `Σ∂(S)` for every `S`:
//!
//! * superseparable at `p`:        `Σ∂(S) ≥ Σ_x v({x}) − p·v(S)`
//! * at-least-subseparable at `p`: `Σ∂(S) ≥ p·(v(X) − v(S))`
//! * at-most-subseparable at `p`:  `Σ∂(S) ≤ p·(v(X) − v(S))`
//!
//! Exhaustive checks tabulate all `2^m` values once, so they are limited to
//! [`EXHAUSTIVE_LIMIT`] elements. Sampled variants exist for larger ground
//! sets; their reports carry `certified: false`.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracle::{ValueOracle, ABS_TOL, REL_TOL};
use crate::subset::{ElementId, Subset};

pub const EXHAUSTIVE_LIMIT: usize = 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SeparabilityKind {
    Superseparable,
    AtLeastSubseparable,
    AtMostSubseparable,
}

impl SeparabilityKind {
    pub const ALL: [SeparabilityKind; 3] = [
        SeparabilityKind::Superseparable,
        SeparabilityKind::AtLeastSubseparable,
        SeparabilityKind::AtMostSubseparable,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SeparabilityKind::Superseparable => "superseparable",
            SeparabilityKind::AtLeastSubseparable => "at-least-subseparable",
            SeparabilityKind::AtMostSubseparable => "at-most-subseparable",
        }
    }
}

impl fmt::Display for SeparabilityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SeparabilityKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "superseparable" | "super" => Ok(SeparabilityKind::Superseparable),
            "at-least-subseparable" | "at-least" => Ok(SeparabilityKind::AtLeastSubseparable),
            "at-most-subseparable" | "at-most" => Ok(SeparabilityKind::AtMostSubseparable),
            other => Err(Error::InvalidParams(format!("unknown separability kind '{other}'"))),
        }
    }
}

/// Tightest parameter for which a separability inequality holds.
///
/// For superseparability and at-most-subseparability this is the smallest
/// valid `p`; for at-least-subseparability the largest.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "bound", content = "p")]
pub enum ExtremalP {
    Finite(f64),
    /// Every `p ≥ 0` satisfies the inequality (at-least kind only).
    Unbounded,
    /// No finite `p ≥ 0` satisfies the inequality.
    Unattainable,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeparabilityReport {
    pub kind: SeparabilityKind,
    pub p_tested: f64,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Subset>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub extremal_p: Option<ExtremalP>,
    /// False when the report comes from random sampling rather than full enumeration.
    pub certified: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubmodularityWitness {
    pub a: Subset,
    pub b: Subset,
    pub x: ElementId,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StructureReport {
    pub nonneg: bool,
    pub monotone: bool,
    pub submodular: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub nonneg_witness: Option<Subset>,
    /// `(A, B)` with `A ⊆ B` and `v(A) > v(B)`.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub monotone_witness: Option<(Subset, Subset)>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub submodular_witness: Option<SubmodularityWitness>,
    pub certified: bool,
}

fn violated(lhs: f64, rhs: f64, scale: f64) -> bool {
    lhs < rhs - REL_TOL * scale.max(1.0)
}

fn is_zero(x: f64, scale: f64) -> bool {
    x.abs() <= ABS_TOL.max(REL_TOL * scale)
}

/// All `2^m` values of a set function, indexed by bitmask.
pub struct ValueTable {
    m: usize,
    values: Vec<f64>,
}

impl ValueTable {
    pub fn build(oracle: &ValueOracle) -> Result<Self> {
        let m = oracle.size();
        if m > EXHAUSTIVE_LIMIT {
            return Err(Error::ExhaustiveLimit { size: m, limit: EXHAUSTIVE_LIMIT });
        }
        let values = (0u64..1 << m)
            .into_par_iter()
            .map(|mask| oracle.raw_value(&Subset::from_mask(mask)))
            .collect::<Result<Vec<_>>>()?;
        Ok(ValueTable { m, values })
    }

    pub fn size(&self) -> usize {
        self.m
    }

    pub fn value(&self, mask: u64) -> f64 {
        self.values[mask as usize]
    }

    pub fn full(&self) -> f64 {
        self.values[self.values.len() - 1]
    }

    pub fn singleton_sum(&self) -> f64 {
        (0..self.m).map(|x| self.values[1 << x]).sum()
    }

    /// `Σ_{x∈X} v(S ∪ {x}) − v(S)`; members of `S` contribute zero.
    pub fn marginal_sum(&self, mask: u64) -> f64 {
        let base = self.value(mask);
        (0..self.m).filter(|x| mask & (1 << x) == 0).map(|x| self.value(mask | 1 << x) - base).sum()
    }

    fn masks(&self) -> std::ops::Range<u64> {
        0..1u64 << self.m
    }
}

/// The separability inequality evaluated at one state.
struct Terms {
    lhs: f64,
    rhs: f64,
    scale: f64,
    at_least: bool,
}

impl Terms {
    fn new(kind: SeparabilityKind, p: f64, lhs: f64, v_s: f64, v_full: f64, singles: f64) -> Self {
        let (rhs, scale) = match kind {
            SeparabilityKind::Superseparable => {
                (singles - p * v_s, lhs.abs().max(singles.abs()).max((p * v_s).abs()))
            }
            _ => (p * (v_full - v_s), lhs.abs().max((p * v_full).abs()).max((p * v_s).abs())),
        };
        Terms { lhs, rhs, scale, at_least: kind != SeparabilityKind::AtMostSubseparable }
    }

    fn holds(&self) -> bool {
        if self.at_least {
            !violated(self.lhs, self.rhs, self.scale)
        } else {
            !violated(self.rhs, self.lhs, self.scale)
        }
    }
}

fn check_p(p: f64) -> Result<()> {
    if p.is_finite() && p >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParams(format!("separability parameter p={p} must be finite and non-negative")))
    }
}

/// Exhaustively checks the `kind` inequality at `p` over every `S ⊆ X`.
///
/// The witness, if any, is the violating subset with the smallest bitmask.
pub fn verify(oracle: &ValueOracle, kind: SeparabilityKind, p: f64) -> Result<SeparabilityReport> {
    check_p(p)?;
    Ok(verify_table(&ValueTable::build(oracle)?, kind, p))
}

pub fn verify_table(table: &ValueTable, kind: SeparabilityKind, p: f64) -> SeparabilityReport {
    let (v_full, singles) = (table.full(), table.singleton_sum());
    let witness = table
        .masks()
        .find(|&mask| !Terms::new(kind, p, table.marginal_sum(mask), table.value(mask), v_full, singles).holds())
        .map(Subset::from_mask);
    SeparabilityReport { kind, p_tested: p, holds: witness.is_none(), witness, extremal_p: None, certified: true }
}

/// [`verify`] plus the extremal parameter, as reported by the CLI.
pub fn verify_with_extremal(oracle: &ValueOracle, kind: SeparabilityKind, p: f64) -> Result<SeparabilityReport> {
    check_p(p)?;
    let table = ValueTable::build(oracle)?;
    let mut report = verify_table(&table, kind, p);
    report.extremal_p = Some(extremal_p_table(&table, kind));
    Ok(report)
}

/// Checks the `kind` inequality at `trials` random states.
///
/// States include each element independently with probability 1/2. A
/// passing report is evidence, not a certificate.
pub fn verify_sampled(
    oracle: &ValueOracle,
    kind: SeparabilityKind,
    p: f64,
    trials: usize,
    seed: u64,
) -> Result<SeparabilityReport> {
    check_p(p)?;
    let m = oracle.size();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let v_full = oracle.raw_value(&Subset::full(m))?;
    let singles = (0..m).map(|x| oracle.raw_value(&Subset::singleton(x))).sum::<Result<f64>>()?;
    let mut witness = None;
    for _ in 0..trials {
        let s: Subset = (0..m).filter(|_| rng.gen_bool(0.5)).collect();
        let v_s = oracle.raw_value(&s)?;
        let mut lhs = 0.0;
        for x in (0..m).filter(|&x| !s.contains(x)) {
            lhs += oracle.raw_value(&s.with(x))? - v_s;
        }
        if !Terms::new(kind, p, lhs, v_s, v_full, singles).holds() {
            witness = Some(s);
            break;
        }
    }
    Ok(SeparabilityReport { kind, p_tested: p, holds: witness.is_none(), witness, extremal_p: None, certified: false })
}

/// Tightest `p` for `kind`, by enumeration of all states.
///
/// States where the ratio form is undefined (`v(S) = 0` for the
/// superseparable kind, `v(S) = v(X)` for the subseparable kinds) are
/// excluded from the extremum but still checked as raw inequalities.
pub fn extremal_p(oracle: &ValueOracle, kind: SeparabilityKind) -> Result<ExtremalP> {
    Ok(extremal_p_table(&ValueTable::build(oracle)?, kind))
}

pub fn extremal_p_table(table: &ValueTable, kind: SeparabilityKind) -> ExtremalP {
    let (v_full, singles) = (table.full(), table.singleton_sum());
    let mut best: Option<f64> = None;
    for mask in table.masks() {
        let (lhs, v_s) = (table.marginal_sum(mask), table.value(mask));
        match kind {
            SeparabilityKind::Superseparable => {
                if is_zero(v_s, singles.abs().max(lhs.abs())) {
                    if violated(lhs, singles, lhs.abs().max(singles.abs())) {
                        return ExtremalP::Unattainable;
                    }
                } else {
                    let r = (singles - lhs) / v_s;
                    best = Some(best.map_or(r, |b| b.max(r)));
                }
            }
            SeparabilityKind::AtMostSubseparable | SeparabilityKind::AtLeastSubseparable => {
                let gap = v_full - v_s;
                let at_most = kind == SeparabilityKind::AtMostSubseparable;
                if is_zero(gap, v_full.abs().max(v_s.abs())) {
                    let broken = if at_most { violated(0.0, lhs, lhs.abs()) } else { violated(lhs, 0.0, lhs.abs()) };
                    if broken {
                        return ExtremalP::Unattainable;
                    }
                } else {
                    let r = lhs / gap;
                    best = Some(match best {
                        None => r,
                        Some(b) if at_most => b.max(r),
                        Some(b) => b.min(r),
                    });
                }
            }
        }
    }
    match (kind, best) {
        (SeparabilityKind::AtLeastSubseparable, None) => ExtremalP::Unbounded,
        (SeparabilityKind::AtLeastSubseparable, Some(b)) if b < 0.0 => ExtremalP::Unattainable,
        (_, Some(b)) => ExtremalP::Finite(b.max(0.0)),
        (_, None) => ExtremalP::Finite(0.0),
    }
}

/// Exhaustively checks non-negativity, monotonicity and submodularity.
///
/// Uses the local characterizations, which are equivalent to the pairwise
/// definitions: monotone iff `v(S ∪ {x}) ≥ v(S)` for all `S, x`, and
/// submodular iff `v(S+x) − v(S) ≥ v(S+y+x) − v(S+y)` for all `S` and distinct
/// `x, y ∉ S`. Witnesses are reported in the `(A, B, x)` shape of the pairwise
/// definitions, with `B = S ∪ {y}`.
pub fn check_structure(oracle: &ValueOracle) -> Result<StructureReport> {
    let table = ValueTable::build(oracle)?;
    Ok(check_structure_table(&table))
}

pub fn check_structure_table(table: &ValueTable) -> StructureReport {
    let m = table.size();
    let scale = table.values.iter().fold(0f64, |a, v| a.max(v.abs()));
    let mut report = StructureReport {
        nonneg: true,
        monotone: true,
        submodular: true,
        nonneg_witness: None,
        monotone_witness: None,
        submodular_witness: None,
        certified: true,
    };
    for mask in table.masks() {
        let v_s = table.value(mask);
        if report.nonneg && violated(v_s, 0.0, scale) {
            report.nonneg = false;
            report.nonneg_witness = Some(Subset::from_mask(mask));
        }
        let outside: Vec<usize> = (0..m).filter(|x| mask & (1 << x) == 0).collect();
        for &y in &outside {
            let with_y = mask | 1 << y;
            if report.monotone && violated(table.value(with_y), v_s, scale) {
                report.monotone = false;
                report.monotone_witness = Some((Subset::from_mask(mask), Subset::from_mask(with_y)));
            }
            if !report.submodular {
                continue;
            }
            for &x in outside.iter().filter(|&&x| x != y) {
                let small = table.value(mask | 1 << x) - v_s;
                let large = table.value(with_y | 1 << x) - table.value(with_y);
                if violated(small, large, scale) {
                    report.submodular = false;
                    report.submodular_witness = Some(SubmodularityWitness {
                        a: Subset::from_mask(mask),
                        b: Subset::from_mask(with_y),
                        x,
                    });
                    break;
                }
            }
        }
    }
    report
}

/// Random-triple version of [`check_structure`] for large ground sets.
///
/// Each trial draws `A`, extends it to `B ⊇ A`, and picks `x ∉ B`.
pub fn check_structure_sampled(oracle: &ValueOracle, trials: usize, seed: u64) -> Result<StructureReport> {
    let m = oracle.size();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = StructureReport {
        nonneg: true,
        monotone: true,
        submodular: true,
        nonneg_witness: None,
        monotone_witness: None,
        submodular_witness: None,
        certified: false,
    };
    for _ in 0..trials {
        let a: Subset = (0..m).filter(|_| rng.gen_bool(0.3)).collect();
        let b: Subset = (0..m).filter(|&x| a.contains(x) || rng.gen_bool(0.3)).collect();
        let (va, vb) = (oracle.raw_value(&a)?, oracle.raw_value(&b)?);
        let scale = va.abs().max(vb.abs());
        if report.nonneg {
            for (s, v) in [(&a, va), (&b, vb)] {
                if violated(v, 0.0, scale) {
                    report.nonneg = false;
                    report.nonneg_witness = Some(s.clone());
                    break;
                }
            }
        }
        if report.monotone && violated(vb, va, scale) {
            report.monotone = false;
            report.monotone_witness = Some((a.clone(), b.clone()));
        }
        let free: Vec<usize> = (0..m).filter(|&x| !b.contains(x)).collect();
        if report.submodular && !free.is_empty() {
            let x = free[rng.gen_range(0..free.len())];
            let small = oracle.raw_value(&a.with(x))? - va;
            let large = oracle.raw_value(&b.with(x))? - vb;
            if violated(small, large, scale.max(small.abs()).max(large.abs())) {
                report.submodular = false;
                report.submodular_witness = Some(SubmodularityWitness { a, b, x });
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::fixtures::{inst_a, inst_b};
    use SeparabilityKind::*;

    fn a() -> ValueOracle {
        inst_a().oracle().unwrap().0
    }

    #[test]
    fn inst_a_structure() {
        let r = check_structure(&a()).unwrap();
        assert!(r.nonneg && r.monotone && r.submodular);
    }

    #[test]
    fn squared_cardinality_is_not_submodular() {
        let o = ValueOracle::from_fn(3, |s| (s.len() * s.len()) as f64).unwrap();
        let r = check_structure(&o).unwrap();
        assert!(r.nonneg && r.monotone);
        assert!(!r.submodular);
        assert_eq!(
            r.submodular_witness,
            Some(SubmodularityWitness { a: Subset::empty(), b: Subset::singleton(0), x: 1 })
        );
    }

    #[test]
    fn zero_function_structure() {
        let o = ValueOracle::from_fn(4, |_| 0.0).unwrap();
        let r = check_structure(&o).unwrap();
        assert!(r.nonneg && r.monotone && r.submodular);
        assert_eq!(extremal_p(&o, Superseparable).unwrap(), ExtremalP::Finite(0.0));
    }

    #[test]
    fn detects_negative_and_decreasing() {
        let o = ValueOracle::from_fn(2, |s| 1.0 - s.len() as f64).unwrap();
        let r = check_structure(&o).unwrap();
        assert!(!r.nonneg && !r.monotone);
        assert_eq!(r.nonneg_witness, Some(Subset::from_mask(0b11)));
        assert_eq!(r.monotone_witness, Some((Subset::empty(), Subset::singleton(0))));
    }

    #[test]
    fn exhaustive_limit() {
        let o = ValueOracle::from_fn(EXHAUSTIVE_LIMIT + 1, |s| s.len() as f64).unwrap();
        assert_eq!(check_structure(&o).unwrap_err(), Error::ExhaustiveLimit { size: 15, limit: 14 });
        assert!(verify(&o, Superseparable, 1.0).is_err());
        // sampled mode works, flagged as non-certifying
        let r = check_structure_sampled(&o, 200, 1).unwrap();
        assert!(r.submodular && !r.certified);
        let v = verify_sampled(&o, Superseparable, 1.0, 200, 1).unwrap();
        assert!(v.holds && !v.certified);
    }

    #[test]
    fn inst_a_separability() {
        assert!(verify(&a(), Superseparable, 2.0).unwrap().holds);
        assert!(verify(&a(), AtMostSubseparable, 2.0).unwrap().holds);
        assert!(verify(&a(), AtLeastSubseparable, 1.0).unwrap().holds);
    }

    #[test]
    fn inst_a_superseparable_p0_fails_at_first_set() {
        // At S = ∅ both sides equal Σ v({x}) = 6; the first violation is S = {S1},
        // where the marginals sum to 3 < 6.
        let r = verify(&a(), Superseparable, 0.0).unwrap();
        assert!(!r.holds);
        assert_eq!(r.witness, Some(Subset::singleton(0)));
    }

    #[test]
    fn inst_b_separability() {
        let (o, _) = inst_b().oracle(2).unwrap();
        assert!(verify(&o, Superseparable, 2.0).unwrap().holds);
        assert!(verify(&o, AtMostSubseparable, 2.0).unwrap().holds);
    }

    #[test]
    fn inst_a_extremal() {
        // Ratios Σ∂(S)/(v(X)-v(S)) over the 8 subsets: ∅ 6/4, {S1} 3/2, {S2} 2/2,
        // {S3} 3/2, {S1,S2} 1/1, {S2,S3} 1/1; {S1,S3} and X have v(S)=v(X).
        let o = a();
        assert_eq!(extremal_p(&o, AtLeastSubseparable).unwrap(), ExtremalP::Finite(1.0));
        assert_eq!(extremal_p(&o, AtMostSubseparable).unwrap(), ExtremalP::Finite(1.5));
        // (Σ v({x}) − Σ∂(S))/v(S): maximized at {S2}: (6 − 2)/2
        assert_eq!(extremal_p(&o, Superseparable).unwrap(), ExtremalP::Finite(2.0));
        let r = verify_with_extremal(&o, AtMostSubseparable, 2.0).unwrap();
        assert!(r.holds);
        assert_eq!(r.extremal_p, Some(ExtremalP::Finite(1.5)));
    }

    #[test]
    fn extremal_special_cases() {
        let constant = ValueOracle::from_fn(3, |_| 1.0).unwrap();
        assert_eq!(extremal_p(&constant, AtLeastSubseparable).unwrap(), ExtremalP::Unbounded);
        assert_eq!(extremal_p(&constant, AtMostSubseparable).unwrap(), ExtremalP::Finite(0.0));
        // (Σ v({x}) − Σ∂(S))/v(S) = 2 at every non-empty S
        let gapped = ValueOracle::from_fn(2, |s| if s.is_empty() { 0.0 } else { 1.0 }).unwrap();
        assert_eq!(extremal_p(&gapped, Superseparable).unwrap(), ExtremalP::Finite(2.0));
        // v({0}) = 0 but the marginal sum there (0.5) falls short of Σ v({x}) = 1
        let warped = ValueOracle::from_fn(2, |s| match s.to_mask().unwrap() {
            0b10 => 1.0,
            0b11 => 0.5,
            _ => 0.0,
        })
        .unwrap();
        assert_eq!(extremal_p(&warped, Superseparable).unwrap(), ExtremalP::Unattainable);
    }

    #[test]
    fn invalid_p() {
        assert!(verify(&a(), Superseparable, -1.0).is_err());
        assert!(verify(&a(), Superseparable, f64::NAN).is_err());
    }

    #[test]
    fn kind_parsing() {
        for k in SeparabilityKind::ALL {
            assert_eq!(k.name().parse::<SeparabilityKind>().unwrap(), k);
        }
        assert_eq!("at-most".parse::<SeparabilityKind>().unwrap(), AtMostSubseparable);
        assert!("sideways".parse::<SeparabilityKind>().is_err());
    }
}
