mod common;

use fptsub::harness::generate::{cover, CoverGen};
use fptsub::problems::fixtures::{inst_a, inst_b};
use fptsub::solvers::rng::stream_rng;
use fptsub::solvers::*;
use fptsub::{Subset, ValueOracle};
use proptest::prelude::*;

#[test]
fn inst_a_examples_across_solvers() {
    let (o, _) = inst_a().oracle().unwrap();
    let b = Budgets::default();
    assert_eq!(brute_force(&o, 2, &b).unwrap().value, 4.0);
    assert_eq!(preselect_enumerate(&o, &SchemeParams::max(2, 0.5, 2.0).unwrap(), &b).unwrap().value, 4.0);
    assert_eq!(greedy(&o, 2, &GreedyCertificate::default()).unwrap().value, 4.0);
    assert_eq!(ptas(&o, 2, 1.0 / 3.0, 0.5, &b).unwrap().value, 4.0);
    let r = min_or_max(&o, 2, 2.0, 0.05, 11, &b).unwrap();
    assert_eq!(r.mode, Mode::MinOrMax);
    assert!(r.runs <= run_count(3.0, 2.0, 2, 0.05) as u64);
}

#[test]
fn run_count_and_pool_arithmetic() {
    assert_eq!(run_count(2.0, 2.0, 2, 0.05), 48.0);
    assert_eq!(run_count(3.0, 2.0, 2, 0.05), 108.0);
    assert_eq!(pool_size(2.0, 2, 0.5), 10.0);
    assert_eq!(pool_size(1.0, 1, 0.99), 101.0);
    assert_eq!(ptas_threshold(0.5, 0.1).unwrap(), 5);
    assert_eq!(ptas_threshold(1.0, (-3f64).exp()).unwrap(), 3);
    assert_eq!(ptas_threshold(1.0 / 3.0, 0.5).unwrap(), 3);
}

#[test]
fn min_or_max_parameter_examples() {
    let (a, _) = inst_a().oracle().unwrap();
    assert_eq!(min_or_max_p(&a, 2.0).unwrap(), 3.0);
    let (b, _) = inst_b().oracle(2).unwrap();
    assert_eq!(min_or_max_p(&b, 2.0).unwrap(), 4.0);
    let zero = ValueOracle::from_fn(3, |_| 0.0).unwrap();
    assert_eq!(min_or_max(&zero, 1, 2.0, 0.1, 0, &Budgets::default()).unwrap_err(), fptsub::Error::DegenerateInstance);
}

/// Frequencies of the first pick of `single_run` on fixture A from `s`.
fn step_counts(s: &Subset, draws: usize) -> [usize; 3] {
    let (o, _) = inst_a().oracle().unwrap();
    let mut rng = stream_rng(2024, 0);
    let mut counts = [0; 3];
    for _ in 0..draws {
        counts[sample_step(&o, s, &mut rng).unwrap().unwrap()] += 1;
    }
    counts
}

#[test]
fn first_step_is_uniform_on_equal_marginals() {
    let n = 100_000;
    let counts = step_counts(&Subset::empty(), n);
    for c in counts {
        assert!(common::within_sigmas(c, n, 1.0 / 3.0, 3.0), "{counts:?}");
    }
}

#[test]
fn step_follows_marginals() {
    let n = 100_000;
    let counts = step_counts(&Subset::singleton(0), n);
    assert_eq!(counts[0], 0);
    assert!(common::within_sigmas(counts[1], n, 1.0 / 3.0, 3.0), "{counts:?}");
    assert!(common::within_sigmas(counts[2], n, 2.0 / 3.0, 3.0), "{counts:?}");
}

#[test]
fn zero_oracle_pads_uniformly() {
    let zero = ValueOracle::from_fn(4, |_| 0.0).unwrap();
    let n = 40_000;
    let mut counts = [0usize; 4];
    let mut rng = stream_rng(5, 0);
    for _ in 0..n {
        let s = single_run(&zero, 1, &mut rng).unwrap();
        counts[s.iter().next().unwrap()] += 1;
    }
    for c in counts {
        assert!(common::within_sigmas(c, n, 0.25, 3.0), "{counts:?}");
    }
}

#[test]
fn randomized_min_hits_optimum_on_inst_a() {
    let (o, _) = inst_a().oracle().unwrap();
    let params = SchemeParams::min(2, 2.0, 0.05, 2.0).unwrap();
    let seeds = 300;
    let hits = (0..seeds)
        .filter(|&seed| randomized_min(&o.fresh(), &params, seed, &Budgets::default()).unwrap().value == 4.0)
        .count();
    assert!(hits as f64 >= 0.95 * seeds as f64, "{hits}/{seeds}");
}

#[test]
fn randomized_results_depend_only_on_inputs() {
    let g = CoverGen { n_elements: 12, n_sets: 9, max_freq: 2, ..Default::default() };
    let inst = cover(&g, 4).unwrap();
    let params = SchemeParams::min(3, 2.0, 0.2, 2.0).unwrap();
    for seed in 0..5 {
        let (a, _) = inst.oracle().unwrap();
        let (b, _) = inst.oracle().unwrap();
        let ra = randomized_min(&a, &params, seed, &Budgets::default()).unwrap();
        let rb = randomized_min(&b, &params, seed, &Budgets::default()).unwrap();
        assert_eq!(ra, rb);
        let ea = best_subset_exact(&a.fresh(), 2.0, 0.1, seed, 9, &Budgets::default()).unwrap();
        let eb = best_subset_exact(&b.fresh(), 2.0, 0.1, seed, 9, &Budgets::default()).unwrap();
        assert_eq!(ea, eb);
    }
}

#[test]
fn exact_examples() {
    let (b, _) = inst_b().oracle(2).unwrap();
    let r = best_subset_exact(&b, 2.0, 0.1, 0, 3, &Budgets::default()).unwrap();
    assert!(r.is_found());
    assert_eq!(r.result().chosen, Subset::singleton(1));
    let (a, _) = inst_a().oracle().unwrap();
    let r = best_subset_exact(&a, 2.0, 0.1, 0, 3, &Budgets::default()).unwrap();
    assert!(r.is_found());
    assert_eq!(r.result().chosen, Subset::from_iter([0, 2]));
}

fn small_cover() -> impl Strategy<Value = (fptsub::problems::CoverInstance, usize)> {
    (4usize..=10, 3usize..=8, 1usize..=3, any::<u64>(), 1usize..=4).prop_filter_map(
        "generator parameters",
        |(n, m, f, seed, k)| {
            let g = CoverGen { n_elements: n, n_sets: m, max_freq: f.min(m), min_freq: 1, max_weight: 4 };
            cover(&g, seed).ok().map(|c| (c, k.min(m)))
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn preselect_meets_beta((inst, k) in small_cover(), beta in prop::sample::select(vec![0.5, 0.7, 0.9])) {
        let (o, report) = inst.oracle().unwrap();
        let opt = common::brute_max(inst.n_sets(), k, |s| common::cover_value(&inst, s));
        let params = SchemeParams::max(k, beta, report.superseparable.unwrap()).unwrap();
        let r = preselect_enumerate(&o, &params, &Budgets::default()).unwrap();
        prop_assert!(r.value >= beta * opt - 1e-9);
        prop_assert!(r.chosen.len() <= k);
        prop_assert_eq!(r.value, o.evaluate(&r.chosen).unwrap());
    }

    #[test]
    fn greedy_meets_bounds((inst, k) in small_cover()) {
        let (o, report) = inst.oracle().unwrap();
        let m = inst.n_sets();
        let opt = common::brute_max(m, k, |s| common::cover_value(&inst, s));
        let cert = GreedyCertificate { at_least_p: report.at_least_subseparable, submodular: true };
        let r = greedy(&o, k, &cert).unwrap();
        let p = report.at_least_subseparable.unwrap();
        prop_assert!(r.value >= (1.0 - (-p * k as f64 / m as f64).exp()) * opt - 1e-9);
        prop_assert!(r.value >= (1.0 - (-1f64).exp()) * opt - 1e-9);
        prop_assert!(r.value >= r.guarantee.unwrap() * opt - 1e-9);
    }

    #[test]
    fn brute_force_matches_reference((inst, k) in small_cover()) {
        let (o, _) = inst.oracle().unwrap();
        let opt = common::brute_max(inst.n_sets(), k, |s| common::cover_value(&inst, s));
        let r = brute_force(&o, k, &Budgets::default()).unwrap();
        prop_assert_eq!(r.value, opt);
        prop_assert_eq!(r.chosen.len(), k);
    }

    #[test]
    fn single_run_is_feasible((inst, k) in small_cover(), seed in any::<u64>()) {
        let (o, _) = inst.oracle().unwrap();
        let mut rng = stream_rng(seed, 0);
        let s = single_run(&o, k, &mut rng).unwrap();
        prop_assert_eq!(s.len(), k);
        prop_assert!(s.iter().all(|x| x < inst.n_sets()));
    }

    #[test]
    fn evaluation_counts_are_deterministic((inst, k) in small_cover()) {
        let (a, _) = inst.oracle().unwrap();
        let (b, _) = inst.oracle().unwrap();
        let cert = GreedyCertificate::default();
        prop_assert_eq!(greedy(&a, k, &cert).unwrap(), greedy(&b, k, &cert).unwrap());
    }
}
