//! Property-based and exhaustive invariants tying the analytic machinery to
//! independently known mathematics and to brute-force enumeration.

use evenset_core::census::BruteCode;
use evenset_core::combin::{
    binomial, krawtchouk, krawtchouk_by_sum, macwilliams, WeightDistribution,
};
use evenset_core::gate::{
    bound_quantity, feasibility_verdict, GateVerdict, Mode, Quantity,
};
use evenset_core::geometry::chi_double_cover;
use evenset_core::lp::{verify_optimal, LpOutcome, Sense};
use evenset_core::rat::Rat;
use evenset_core::spec::CodeSpec;
use num_bigint::BigInt;
use proptest::prelude::*;
use std::collections::BTreeSet;

#[test]
fn krawtchouk_table_matches_the_defining_sum() {
    for n in 0..=20 {
        for m in 0..=n {
            for i in 0..=n {
                assert_eq!(
                    krawtchouk(n, m, i),
                    krawtchouk_by_sum(n, m, i),
                    "n={n}, m={m}, i={i}"
                );
            }
        }
    }
}

#[test]
fn krawtchouk_rows_sum_to_a_point_mass() {
    // Summing K_m(i) over all degrees m detects i = 0: the total is 2^n
    // there and zero everywhere else.
    for n in 0..=20usize {
        for i in 0..=n {
            let sum: BigInt = (0..=n).map(|m| krawtchouk(n, m, i)).sum();
            let expected = if i == 0 {
                BigInt::from(1) << n
            } else {
                BigInt::from(0)
            };
            assert_eq!(sum, expected, "n={n}, i={i}");
        }
    }
}

#[test]
fn macwilliams_of_parity_check_codes() {
    // The even-weight code of length n has dimension n - 1 and counts
    // binom(n, m) words at every even weight m; its dual is the repetition
    // code {0, 1}.
    for n in 2..=16usize {
        let evens = WeightDistribution::from_integer_counts(
            n,
            (0..=n)
                .filter(|m| m % 2 == 0)
                .map(|m| (m, u64::try_from(binomial(n as u64, m as i64)).unwrap())),
        )
        .unwrap();
        let dual = macwilliams(&evens, (n - 1) as u32).unwrap();
        let repetition =
            WeightDistribution::from_integer_counts(n, [(0, 1), (n, 1)]).unwrap();
        assert_eq!(dual, repetition, "n={n}");
        let back = macwilliams(&dual, 1).unwrap();
        assert_eq!(back, evens, "n={n} round trip");
    }
}

/// A random systematic code small enough to enumerate.
fn small_code() -> impl Strategy<Value = BruteCode> {
    (3usize..=12)
        .prop_flat_map(|n| (Just(n), 1usize..=3.min(n)))
        .prop_flat_map(|(n, k)| {
            let rows = n - k;
            (
                Just(n),
                Just(k),
                prop::collection::vec(0u64..(1u64 << rows), k),
            )
        })
        .prop_map(|(n, k, parity)| BruteCode::new(n, k, parity))
}

/// True dual weight counts of a brute-force code.
fn dual_counts(code: &BruteCode) -> Vec<u64> {
    let mut counts = vec![0u64; code.n() + 1];
    for d in code.dual_words() {
        counts[d.count_ones() as usize] += 1;
    }
    counts
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// The gate never contradicts a real code, and every value it pins is
    /// the code's true count: a pin asserts that every point of the
    /// relaxation has that value, and the truth is one such point.
    #[test]
    fn gate_pins_match_brute_force_truth(code in small_code()) {
        let report = feasibility_verdict(&code.spec(), Mode::Full).unwrap();
        prop_assert!(
            !report.verdict.is_contradiction(),
            "real code {} was refuted: {}",
            code.spec(),
            report.verdict.headline()
        );
        let counts = code.weight_counts();
        let duals = dual_counts(&code);
        for pin in &report.pins {
            let truth = match pin.quantity {
                Quantity::Count(j) => counts[j],
                Quantity::Dual(m) => duals[m],
            };
            prop_assert!(
                pin.value == Rat::from(truth),
                "pinned {} = {}, but the code has {truth}",
                pin.quantity,
                pin.value
            );
        }
    }

    /// Optimizing any tracked quantity over a real code's relaxation yields
    /// a finite optimum whose certificate passes independent verification,
    /// and the true value lies inside the window.
    #[test]
    fn optimization_certificates_verify(code in small_code(), pick_dual in any::<bool>(), index in 0usize..8) {
        let spec = code.spec();
        let counts = code.weight_counts();
        let duals = dual_counts(&code);
        let (quantity, truth) = if pick_dual {
            let m = index % (spec.n / 2 + 1);
            (Quantity::Dual(m), duals[m])
        } else {
            let weights: Vec<usize> = spec.weights.iter().copied().collect();
            let j = weights[index % weights.len()];
            (Quantity::Count(j), counts[j])
        };
        let problem = evenset_core::gate::build_lp(&spec, Mode::Half).unwrap();
        let mut window = Vec::new();
        for sense in [Sense::Minimize, Sense::Maximize] {
            match bound_quantity(&spec, quantity, sense, Mode::Half).unwrap() {
                LpOutcome::Optimal(sol) => {
                    let mut check_problem = problem.clone();
                    check_problem.objective =
                        evenset_core::gate::quantity_objective(&spec, quantity, Mode::Half)
                            .unwrap();
                    prop_assert!(
                        verify_optimal(&check_problem, sense, &sol),
                        "certificate for {sense:?} {quantity} failed on {spec}"
                    );
                    window.push(sol.value);
                }
                other => prop_assert!(false, "expected an optimum, got {other:?}"),
            }
        }
        let truth = Rat::from(truth);
        prop_assert!(
            window[0] <= truth && truth <= window[1],
            "true value {truth} of {quantity} escapes the window [{}, {}]",
            window[0],
            window[1]
        );
    }

    /// Adding dual rows only sharpens the gate: a profile that is clean
    /// under the full row range is clean under the half range.
    #[test]
    fn full_mode_clearance_implies_half_mode_clearance(
        n in 4usize..=14,
        k in 1usize..=5,
        weights in prop::collection::btree_set(1usize..=14, 1..=4),
    ) {
        let weights: BTreeSet<usize> = weights.into_iter().filter(|&w| w <= n).collect();
        prop_assume!(!weights.is_empty());
        prop_assume!(k <= n);
        let spec = CodeSpec::new(n, k, weights);
        let full = feasibility_verdict(&spec, Mode::Full).unwrap();
        if !full.verdict.is_contradiction() {
            let half = feasibility_verdict(&spec, Mode::Half).unwrap();
            prop_assert!(
                !half.verdict.is_contradiction(),
                "{spec}: clean under full rows but refuted under half: {}",
                half.verdict.headline()
            );
        }
    }

    /// The gate's verdict is a pure function of its inputs.
    #[test]
    fn gate_is_deterministic(code in small_code()) {
        let spec = code.spec();
        let first = feasibility_verdict(&spec, Mode::Half).unwrap();
        let second = feasibility_verdict(&spec, Mode::Half).unwrap();
        prop_assert!(first == second, "two runs disagreed on {spec}");
    }

    /// Four extra nodes cost exactly one unit of the twisted Euler
    /// characteristic, for any degree and twist.
    #[test]
    fn chi_drops_by_one_per_four_nodes(s in 1u64..=9, twist in -2i64..=3, p in 0u64..=120) {
        let here = chi_double_cover(s, twist, p);
        let there = chi_double_cover(s, twist, p + 4);
        prop_assert!(here - there == Rat::from(1u64));
    }
}

#[test]
fn half_mode_rows_never_exceed_full_mode_rows() {
    for n in 1..=20usize {
        assert!(Mode::Half.max_dual(n) <= Mode::Full.max_dual(n));
        assert_eq!(Mode::Half.max_dual(n), n / 2);
        assert_eq!(Mode::Full.max_dual(n), n);
    }
}

#[test]
fn verdict_headlines_are_stable() {
    // Downstream tooling matches on these strings.
    let refuted = feasibility_verdict(
        &CodeSpec::new(21, 10, [4, 8, 12, 16, 20]),
        Mode::Half,
    )
    .unwrap();
    assert_eq!(refuted.verdict.headline(), "INFEASIBLE (LP)");
    assert!(matches!(
        refuted.verdict,
        GateVerdict::InfeasibleLp { .. }
    ));
    let clean = feasibility_verdict(&CodeSpec::new(8, 1, [4, 8]), Mode::Full).unwrap();
    assert_eq!(clean.verdict.headline(), "NO CONTRADICTION");
}
