//! End-to-end acceptance battery.
//!
//! Each test covers one numbered criterion, prints exactly one
//! `criterion NN <label>: PASS|FAIL` line, and pins every expected value
//! exactly (rational comparisons have tolerance zero; wall-clock limits are
//! stated per criterion).

use evenset_core::bounds::{griesmer_check, griesmer_min_length, GriesmerVerdict};
use evenset_core::census::{run_census, CensusConfig, CensusReport};
use evenset_core::combin::{binomial, krawtchouk};
use evenset_core::gate::{bound_quantity, feasibility_verdict, GateVerdict, Mode, Quantity};
use evenset_core::geometry::{
    admissible_even_weights, castelnuovo_genus_bound, chi_double_cover, code_dim_lower_bound,
};
use evenset_core::lp::{LpOutcome, Sense};
use evenset_core::prover::{
    check_log, run_script, sextic66_script, sextic_corollary, Claim, CorollaryInputs, ProofLog,
    RunOptions, StepStatus,
};
use evenset_core::rat::Rat;
use evenset_core::reductions::{pair_interaction, residual_spec};
use evenset_core::spec::CodeSpec;
use num_bigint::BigInt;
use once_cell::sync::Lazy;
use std::time::{Duration, Instant};

/// One full proof replay, shared by the criteria that consume the log.
static SEXTIC_LOG: Lazy<ProofLog> = Lazy::new(|| {
    run_script(&sextic66_script(), &RunOptions::default()).expect("the bundled script is valid")
});

/// One full census sweep, shared by the criteria that consume the report.
static CENSUS: Lazy<(CensusReport, Duration)> = Lazy::new(|| {
    let start = Instant::now();
    let report = run_census(&CensusConfig::default());
    (report, start.elapsed())
});

macro_rules! check {
    ($failures:ident, $cond:expr, $($msg:tt)+) => {
        if !$cond {
            $failures.push(format!($($msg)+));
        }
    };
}

fn conclude(number: u8, label: &str, failures: Vec<String>) {
    if failures.is_empty() {
        println!("criterion {number:02} {label}: PASS");
    } else {
        println!("criterion {number:02} {label}: FAIL");
        panic!(
            "criterion {number:02} {label} failed:\n  - {}",
            failures.join("\n  - ")
        );
    }
}

fn rat(s: &str) -> Rat {
    s.parse().expect("literal rational")
}

fn fifths(n: usize, k: usize) -> CodeSpec {
    CodeSpec::new(n, k, [4, 8, 12, 16, 20])
}

fn heavy(n: usize, k: usize) -> CodeSpec {
    CodeSpec::new(n, k, [24, 32, 40, 56])
}

fn light(n: usize, k: usize) -> CodeSpec {
    CodeSpec::new(n, k, [24, 32, 56])
}

#[test]
fn criterion_01_lp_refutations() {
    let mut failures = Vec::new();
    for spec in [fifths(21, 10), fifths(22, 11)] {
        let start = Instant::now();
        let report = feasibility_verdict(&spec, Mode::Half).expect("valid spec");
        let elapsed = start.elapsed();
        check!(
            failures,
            matches!(report.verdict, GateVerdict::InfeasibleLp { .. }),
            "{spec} should be LP-infeasible, got {}",
            report.verdict.headline()
        );
        check!(
            failures,
            report.verdict.headline() == "INFEASIBLE (LP)",
            "unexpected headline {}",
            report.verdict.headline()
        );
        check!(
            failures,
            elapsed < Duration::from_secs(5),
            "{spec} took {elapsed:?}, limit 5 s"
        );
    }
    conclude(1, "lp refutations", failures);
}

#[test]
fn criterion_02_tightening_contradictions() {
    let mut failures = Vec::new();

    let start = Instant::now();
    let report = feasibility_verdict(&light(58, 11), Mode::Half).expect("valid spec");
    check!(
        failures,
        start.elapsed() < Duration::from_secs(10),
        "[58,11] run exceeded 10 s"
    );
    let expected_pins = [
        (Quantity::Count(56), rat("1")),
        (Quantity::Dual(0), rat("1")),
        (Quantity::Dual(1), rat("2")),
    ];
    for (quantity, value) in &expected_pins {
        check!(
            failures,
            report
                .pins
                .iter()
                .any(|p| p.quantity == *quantity && p.value == *value),
            "[58,11] pin trail lacks {quantity} = {value}; trail: {:?}",
            report
                .pins
                .iter()
                .map(|p| format!("{} = {}", p.quantity, p.value))
                .collect::<Vec<_>>()
        );
    }
    match &report.verdict {
        GateVerdict::ForcedNonInteger {
            quantity, value, ..
        } => {
            check!(
                failures,
                *quantity == Quantity::Dual(2) && *value == rat("13/2"),
                "[58,11] forced {quantity} = {value}, expected mu2 = 13/2"
            );
        }
        other => failures.push(format!(
            "[58,11] expected a forced non-integer, got {}",
            other.headline()
        )),
    }

    let start = Instant::now();
    let spec64 = heavy(64, 13)
        .with_dual_fixed(1, rat("0"))
        .with_dual_fixed(2, rat("0"))
        .with_dual_fixed(3, rat("0"));
    let report = feasibility_verdict(&spec64, Mode::Half).expect("valid spec");
    check!(
        failures,
        start.elapsed() < Duration::from_secs(10),
        "[64,13] run exceeded 10 s"
    );
    match &report.verdict {
        GateVerdict::ForcedNonInteger {
            quantity, value, ..
        } => {
            check!(
                failures,
                *quantity == Quantity::Count(56) && *value == rat("5/2"),
                "[64,13] forced {quantity} = {value}, expected a56 = 5/2"
            );
        }
        other => failures.push(format!(
            "[64,13] expected a forced non-integer, got {}",
            other.headline()
        )),
    }

    for n in [59, 60] {
        let start = Instant::now();
        let spec = light(n, 11).with_dual_fixed(1, rat("0"));
        let report = feasibility_verdict(&spec, Mode::Half).expect("valid spec");
        check!(
            failures,
            start.elapsed() < Duration::from_secs(10),
            "[{n},11] run exceeded 10 s"
        );
        check!(
            failures,
            report.verdict.is_contradiction(),
            "[{n},11] with no weight-1 duals should be contradictory, got {}",
            report.verdict.headline()
        );
    }

    conclude(2, "tightening contradictions", failures);
}

#[test]
fn criterion_03_dual_count_lower_bounds() {
    let mut failures = Vec::new();

    let spec65 = heavy(65, 13).with_dual_fixed(1, rat("0"));
    match bound_quantity(&spec65, Quantity::Dual(2), Sense::Minimize, Mode::Half)
        .expect("valid spec")
    {
        LpOutcome::Optimal(sol) => {
            check!(
                failures,
                sol.value == rat("5"),
                "[65,13] min mu2 is {}, expected exactly 5",
                sol.value
            );
        }
        other => failures.push(format!("[65,13] expected an optimum, got {other:?}")),
    }

    let spec66 = heavy(66, 13).with_dual_fixed(1, rat("0"));
    match bound_quantity(&spec66, Quantity::Dual(2), Sense::Minimize, Mode::Half)
        .expect("valid spec")
    {
        LpOutcome::Optimal(sol) => {
            check!(
                failures,
                sol.value == rat("13/2"),
                "[66,13] min mu2 is {}, expected exactly 13/2",
                sol.value
            );
            check!(
                failures,
                sol.value.ceil_int() == BigInt::from(7),
                "[66,13] integer dual count should round up to 7, got {}",
                sol.value.ceil_int()
            );
        }
        other => failures.push(format!("[66,13] expected an optimum, got {other:?}")),
    }

    conclude(3, "dual count lower bounds", failures);
}

#[test]
fn criterion_04_griesmer_refutation() {
    let mut failures = Vec::new();
    check!(
        failures,
        griesmer_min_length(7, 24) == 49,
        "minimum length for dimension 7, distance 24 is {}, expected 49",
        griesmer_min_length(7, 24)
    );
    let verdict = griesmer_check(&CodeSpec::new(48, 7, [24, 48])).expect("valid spec");
    check!(
        failures,
        verdict
            == GriesmerVerdict::Refuted {
                min_distance: 24,
                required_length: 49
            },
        "[48,7,{{24,48}}] should be refuted by length 49 > 48, got {verdict:?}"
    );
    conclude(4, "griesmer refutation", failures);
}

#[test]
fn criterion_05_residual_derivation() {
    let mut failures = Vec::new();
    let residual = residual_spec(&heavy(61, 11), 40).expect("40 splits no weight");
    let expected = fifths(21, 10);
    check!(
        failures,
        residual == expected,
        "residual of [61,11,{{24,32,40,56}}] at 40 is {residual}, expected {expected}"
    );
    conclude(5, "residual derivation", failures);
}

#[test]
fn criterion_06_full_replay_and_recheck() {
    let mut failures = Vec::new();
    let log = &*SEXTIC_LOG;

    check!(failures, log.verified, "the replay reports failed steps");
    check!(
        failures,
        log.verified_claim(&Claim::NoCode { spec: heavy(66, 13) }).is_some(),
        "the log does not establish that no [66,13,{{24,32,40,56}}] code exists"
    );
    check!(
        failures,
        log.records
            .iter()
            .all(|r| r.status != StepStatus::Failed),
        "failed steps: {:?}",
        log.records
            .iter()
            .filter(|r| r.status == StepStatus::Failed)
            .map(|r| r.step.id.clone())
            .collect::<Vec<_>>()
    );
    check!(
        failures,
        log.total_wall_ms < 60_000,
        "replay took {} ms, limit 60 s",
        log.total_wall_ms
    );

    let start = Instant::now();
    let recheck = check_log(log);
    let elapsed = start.elapsed();
    check!(
        failures,
        recheck.verified && recheck.failures.is_empty(),
        "independent recheck failed: {:?}",
        recheck.failures
    );
    check!(
        failures,
        recheck.steps_checked == log.records.len(),
        "recheck covered {} of {} records",
        recheck.steps_checked,
        log.records.len()
    );
    check!(
        failures,
        elapsed < Duration::from_secs(60),
        "recheck took {elapsed:?}, limit 60 s"
    );

    conclude(6, "full replay and recheck", failures);
}

#[test]
fn criterion_07_negative_control() {
    let mut failures = Vec::new();
    let mut control = CodeSpec::new(66, 13, [24, 32, 40, 64]);
    control.forced.insert(64);
    for mode in [Mode::Half, Mode::Full] {
        let report = feasibility_verdict(&control, mode).expect("valid spec");
        check!(
            failures,
            !report.verdict.is_contradiction(),
            "{control} must not be refuted (such a code exists); {mode:?} gave {}",
            report.verdict.headline()
        );
        check!(
            failures,
            report.verdict.headline() == "NO CONTRADICTION",
            "unexpected headline {}",
            report.verdict.headline()
        );
    }
    conclude(7, "negative control", failures);
}

#[test]
fn criterion_08_geometry_values() {
    let mut failures = Vec::new();
    let chi_cases = [
        ((6, 1, 24), "10"),
        ((6, 0, 48), "10"),
        ((6, 1, 16), "12"),
    ];
    for ((s, n, p), expected) in chi_cases {
        let value = chi_double_cover(s, n, p);
        check!(
            failures,
            value == rat(expected),
            "chi({s},{n},{p}) = {value}, expected {expected}"
        );
    }
    let c3 = castelnuovo_genus_bound(12, 3).expect("valid curve parameters");
    check!(failures, c3 == rat("25"), "castelnuovo(12,3) = {c3}, expected 25");
    check!(failures, c3 >= rat("19"), "castelnuovo(12,3) must admit genus 19");
    let c4 = castelnuovo_genus_bound(12, 4).expect("valid curve parameters");
    check!(failures, c4 == rat("15"), "castelnuovo(12,4) = {c4}, expected 15");
    check!(failures, c4 < rat("19"), "castelnuovo(12,4) must exclude genus 19");
    check!(
        failures,
        code_dim_lower_bound(66) == 13,
        "dimension bound for 66 nodes is {}, expected 13",
        code_dim_lower_bound(66)
    );
    let admissible = admissible_even_weights(66).expect("66 is within range");
    check!(
        failures,
        admissible == vec![24, 32, 40, 56, 64],
        "admissible sizes {admissible:?}, expected [24, 32, 40, 56, 64]"
    );
    conclude(8, "geometry values", failures);
}

#[test]
fn criterion_09_corollary_report() {
    let mut failures = Vec::new();
    let report =
        sextic_corollary(&SEXTIC_LOG, &CorollaryInputs::default()).expect("log verifies");

    check!(failures, report.asserted, "the corollary did not assert");
    check!(failures, report.nodes == 66, "nodes = {}", report.nodes);
    check!(
        failures,
        report.dim_lower_bound == Some(13),
        "dimension bound {:?}, expected Some(13)",
        report.dim_lower_bound
    );
    check!(
        failures,
        report.admissible_weights == vec![24, 32, 40, 56, 64],
        "admissible {:?}",
        report.admissible_weights
    );
    check!(
        failures,
        report.conclusion.contains("exactly one even set of size 64")
            && report.conclusion.contains("none of size 56"),
        "conclusion does not state the 64/56 dichotomy: {}",
        report.conclusion
    );
    check!(
        failures,
        report.details.iter().any(|d| d.contains("pair-56-64")),
        "the 56/64 exclusion step is not cited in {:?}",
        report.details
    );

    // The cited step's content, recomputed: a size-56 and a size-64 set
    // admit no intersection size compatible with the admissible weights.
    let ambient = CodeSpec::new(66, 13, [24, 32, 40, 56, 64]);
    let overlaps = pair_interaction(&ambient, 56, 64).expect("weights in spec");
    check!(
        failures,
        overlaps.is_empty(),
        "56/64 overlaps should be empty, got {overlaps:?}"
    );
    check!(
        failures,
        SEXTIC_LOG
            .verified_claim(&Claim::PairExcluded {
                spec: ambient,
                j1: 56,
                j2: 64,
            })
            .is_some(),
        "the log does not verify the 56/64 exclusion claim"
    );

    conclude(9, "corollary report", failures);
}

#[test]
fn criterion_10_brute_force_census() {
    let mut failures = Vec::new();
    let (report, elapsed) = &*CENSUS;

    // Exhaustive part: every systematic parity block for n <= 10, k <= 3,
    // which is sum over n, k of 2^(k (n - k)) generator matrices.
    let expected_enumerated: u64 = (1..=10u32)
        .flat_map(|n| (1..=3.min(n)).map(move |k| 1u64 << (k * (n - k))))
        .sum();
    check!(
        failures,
        report.codes_enumerated == expected_enumerated,
        "enumerated {} codes, expected {expected_enumerated}",
        report.codes_enumerated
    );
    check!(
        failures,
        report.codes_sampled == 1000,
        "sampled {} codes, expected 1000",
        report.codes_sampled
    );
    check!(
        failures,
        report.is_clean(),
        "census violations: {:?}",
        report.violations
    );
    for (count, what) in [
        (report.profiles_gated, "feasibility profiles"),
        (report.macwilliams_checks, "MacWilliams transforms"),
        (report.residual_checks, "residual projections"),
        (report.shorten_checks, "dual-word shortenings"),
        (report.pair_checks, "pair overlaps"),
        (report.adjoin_checks, "extensions"),
    ] {
        check!(failures, count > 0, "no {what} were checked");
    }
    check!(
        failures,
        *elapsed < Duration::from_secs(300),
        "census took {elapsed:?}, limit 5 min"
    );

    conclude(10, "brute force census", failures);
}

#[test]
fn criterion_11_combinatorial_identities() {
    let mut failures = Vec::new();
    let big = |n: u64, k: i64| BigInt::from(binomial(n, k));

    'outer: for n in 0..=16usize {
        // Three-term recurrence in the degree.
        for i in 0..=n {
            for m in 1..n {
                let lhs = BigInt::from((m + 1) as i64) * krawtchouk(n, m + 1, i);
                let rhs = BigInt::from(n as i64 - 2 * i as i64) * krawtchouk(n, m, i)
                    - BigInt::from((n - m + 1) as i64) * krawtchouk(n, m - 1, i);
                if lhs != rhs {
                    failures.push(format!("recurrence fails at n={n}, m={m}, i={i}"));
                    break 'outer;
                }
            }
        }
        // Reciprocity across the two arguments.
        for m in 0..=n {
            for i in 0..=n {
                let lhs = big(n as u64, i as i64) * krawtchouk(n, m, i);
                let rhs = big(n as u64, m as i64) * krawtchouk(n, i, m);
                if lhs != rhs {
                    failures.push(format!("reciprocity fails at n={n}, m={m}, i={i}"));
                    break 'outer;
                }
            }
        }
        // Orthogonality with binomial weights.
        for m in 0..=n {
            for l in 0..=n {
                let sum: BigInt = (0..=n)
                    .map(|i| big(n as u64, i as i64) * krawtchouk(n, m, i) * krawtchouk(n, l, i))
                    .sum();
                let expected = if m == l {
                    BigInt::from(1u64) << n
                } else {
                    BigInt::from(0)
                } * big(n as u64, m as i64);
                if sum != expected {
                    failures.push(format!("orthogonality fails at n={n}, m={m}, l={l}"));
                    break 'outer;
                }
            }
        }
    }

    // The MacWilliams double transform is checked as an identity on every
    // census representative; reuse that run.
    let (report, _) = &*CENSUS;
    check!(
        failures,
        report.macwilliams_checks > 0 && report.is_clean(),
        "census MacWilliams involution checks did not come back clean"
    );

    conclude(11, "combinatorial identities", failures);
}
