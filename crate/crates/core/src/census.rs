//! Brute-force ground truth for the analytic machinery.
//!
//! Small binary linear codes are enumerated (exhaustively in systematic
//! form, then by seeded random sampling at larger sizes) and every claim the
//! rest of the crate makes about *all* codes of a given shape is checked
//! against them: the MacWilliams identity, the feasibility gate never
//! contradicting a code that exists, and the reduction contracts (residual
//! projections, dual-word shortenings, pair overlaps, adjoining the
//! full-support word).

use crate::combin::{macwilliams, WeightDistribution};
use crate::gate::{build_lp, feasibility_verdict, Mode};
use crate::lp::verify_feasible_point;
use crate::rat::Rat;
use crate::reductions::{
    adjoin_complement, dual_word_shorten, pair_interaction, residual_spec, ReductionError,
};
use crate::spec::CodeSpec;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashSet};

/// A binary linear code with a systematic generator `[I | P]`, small enough
/// to enumerate word by word. Coordinates `0..k` carry the identity block,
/// coordinates `k..n` the parity block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruteCode {
    n: usize,
    k: usize,
    /// Row `i` holds the parity bits of the `i`-th unit message.
    parity: Vec<u64>,
}

impl BruteCode {
    pub fn new(n: usize, k: usize, parity: Vec<u64>) -> BruteCode {
        assert!(k >= 1 && k <= n && n <= 32, "need 1 <= k <= n <= 32");
        assert_eq!(parity.len(), k, "one parity row per dimension");
        let row_mask = mask(n - k);
        assert!(
            parity.iter().all(|&row| row & !row_mask == 0),
            "parity rows must fit in n - k bits"
        );
        BruteCode { n, k, parity }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// The codeword encoding a message bitmask.
    pub fn encode(&self, msg: u64) -> u64 {
        let mut parity_bits = 0u64;
        for (i, row) in self.parity.iter().enumerate() {
            if msg >> i & 1 == 1 {
                parity_bits ^= row;
            }
        }
        (msg & mask(self.k)) | parity_bits << self.k
    }

    pub fn generators(&self) -> Vec<u64> {
        (0..self.k).map(|i| self.encode(1 << i)).collect()
    }

    pub fn words(&self) -> impl Iterator<Item = u64> + '_ {
        (0..1u64 << self.k).map(|msg| self.encode(msg))
    }

    /// All words of the dual code, as masks over the same `n` coordinates.
    pub fn dual_words(&self) -> Vec<u64> {
        let r = self.n - self.k;
        // Column c of the parity block, read as a k-bit mask.
        let columns: Vec<u64> = (0..r)
            .map(|c| {
                self.parity
                    .iter()
                    .enumerate()
                    .filter(|(_, row)| *row >> c & 1 == 1)
                    .fold(0u64, |acc, (i, _)| acc | 1 << i)
            })
            .collect();
        (0..1u64 << r)
            .map(|msg| {
                let mut head = 0u64;
                for (c, column) in columns.iter().enumerate() {
                    if msg >> c & 1 == 1 {
                        head ^= column;
                    }
                }
                head | msg << self.k
            })
            .collect()
    }

    /// Count of words per weight, indexed by weight.
    pub fn weight_counts(&self) -> Vec<u64> {
        let mut counts = vec![0u64; self.n + 1];
        for word in self.words() {
            counts[word.count_ones() as usize] += 1;
        }
        counts
    }

    /// Weights of the nonzero words.
    pub fn observed_weights(&self) -> BTreeSet<usize> {
        self.words()
            .filter(|&w| w != 0)
            .map(|w| w.count_ones() as usize)
            .collect()
    }

    /// The tightest plain spec this code matches, with every observed weight
    /// forced.
    pub fn spec(&self) -> CodeSpec {
        let weights = self.observed_weights();
        let mut spec = CodeSpec::new(self.n, self.k, weights.iter().copied());
        spec.forced = weights;
        spec
    }
}

fn mask(bits: usize) -> u64 {
    if bits >= 64 {
        u64::MAX
    } else {
        (1u64 << bits) - 1
    }
}

/// Rank of a set of F2 row vectors given as bitmasks.
fn rank_f2(rows: &[u64]) -> usize {
    let mut basis: Vec<u64> = Vec::new();
    for &row in rows {
        let mut v = row;
        for &b in &basis {
            v = v.min(v ^ b);
        }
        if v != 0 {
            basis.push(v);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis.len()
}

/// What to sweep.
#[derive(Debug, Clone)]
pub struct CensusConfig {
    /// Exhaustive sweep: all systematic codes with `n <= max_n`.
    pub max_n: usize,
    /// Exhaustive sweep: dimensions up to `max_k`.
    pub max_k: usize,
    /// Number of randomly sampled larger codes.
    pub samples: usize,
    pub sample_max_n: usize,
    pub sample_max_k: usize,
    pub seed: u64,
}

impl Default for CensusConfig {
    fn default() -> Self {
        CensusConfig {
            max_n: 10,
            max_k: 3,
            samples: 1000,
            sample_max_n: 16,
            sample_max_k: 5,
            seed: 0x5EED_C0DE,
        }
    }
}

/// Tally of a census run. Any violated contract lands in `violations` with
/// enough context to reproduce it.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusReport {
    pub codes_enumerated: u64,
    pub codes_sampled: u64,
    pub representatives_checked: u64,
    pub profiles_gated: u64,
    pub macwilliams_checks: u64,
    pub residual_checks: u64,
    pub shorten_checks: u64,
    pub pair_checks: u64,
    pub adjoin_checks: u64,
    pub violations: Vec<String>,
}

impl CensusReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Sweeps small codes and checks every analytic contract against them.
pub fn run_census(config: &CensusConfig) -> CensusReport {
    let worst_exponent = (1..=config.max_n.min(32))
        .flat_map(|n| (1..=config.max_k.min(n)).map(move |k| k * (n - k)))
        .max()
        .unwrap_or(0);
    assert!(
        worst_exponent <= 24,
        "exhaustive sweep of 2^{worst_exponent} parity blocks is unreasonable"
    );

    let mut report = CensusReport::default();
    // Representatives are deduplicated by full weight distribution: the
    // contracts under test depend on nothing finer.
    let mut seen_distributions: HashSet<(usize, usize, Vec<u64>)> = HashSet::new();
    let mut seen_specs: HashSet<CodeSpec> = HashSet::new();

    for n in 1..=config.max_n {
        for k in 1..=config.max_k.min(n) {
            let rows = n - k;
            for stamp in 0..1u64 << (k * rows) {
                let parity: Vec<u64> = (0..k)
                    .map(|i| stamp >> (i * rows) & mask(rows))
                    .collect();
                let code = BruteCode::new(n, k, parity);
                report.codes_enumerated += 1;
                let key = (n, k, code.weight_counts());
                if seen_distributions.insert(key) {
                    check_representative(&code, &mut report, &mut seen_specs);
                }
            }
        }
    }

    let mut rng = ChaCha12Rng::seed_from_u64(config.seed);
    for _ in 0..config.samples {
        let n = rng.gen_range(2..=config.sample_max_n);
        let k = rng.gen_range(1..=config.sample_max_k.min(n));
        let rows = n - k;
        let parity: Vec<u64> = (0..k).map(|_| rng.gen::<u64>() & mask(rows)).collect();
        let code = BruteCode::new(n, k, parity);
        report.codes_sampled += 1;
        let key = (n, k, code.weight_counts());
        if seen_distributions.insert(key) {
            check_representative(&code, &mut report, &mut seen_specs);
        }
    }

    report
}

fn check_representative(
    code: &BruteCode,
    report: &mut CensusReport,
    seen_specs: &mut HashSet<CodeSpec>,
) {
    report.representatives_checked += 1;
    let words: Vec<u64> = code.words().collect();
    let dual_words = code.dual_words();
    let spec = code.spec();

    check_duality(code, &words, &dual_words, report);
    check_macwilliams(code, &dual_words, report);
    if seen_specs.insert(spec.clone()) {
        check_gate(code, &dual_words, report);
    }
    check_residuals(code, &words, report);
    check_shortenings(code, &words, &dual_words, report);
    check_pairs(code, &words, report);
    check_adjoin(code, &words, &dual_words, report);
}

/// Every dual word must be orthogonal to every codeword, and there must be
/// exactly `2^(n-k)` of them.
fn check_duality(code: &BruteCode, words: &[u64], dual_words: &[u64], report: &mut CensusReport) {
    let distinct: HashSet<u64> = dual_words.iter().copied().collect();
    if distinct.len() != 1 << (code.n - code.k) {
        report.violations.push(format!(
            "dual of [{},{}] has {} distinct words, expected 2^{}",
            code.n,
            code.k,
            distinct.len(),
            code.n - code.k
        ));
    }
    for &d in dual_words {
        for &w in words {
            if (d & w).count_ones() % 2 != 0 {
                report.violations.push(format!(
                    "dual word {d:#b} of [{},{}] is not orthogonal to {w:#b}",
                    code.n, code.k
                ));
                return;
            }
        }
    }
}

/// The MacWilliams transform of the primal distribution must equal the dual
/// code's actual distribution, and transforming back must recover the
/// primal.
fn check_macwilliams(code: &BruteCode, dual_words: &[u64], report: &mut CensusReport) {
    report.macwilliams_checks += 1;
    let primal_counts = code.weight_counts();
    let mut dual_counts = vec![0u64; code.n + 1];
    for &d in dual_words {
        dual_counts[d.count_ones() as usize] += 1;
    }
    let to_dist = |counts: &[u64]| {
        WeightDistribution::from_integer_counts(
            code.n,
            counts
                .iter()
                .enumerate()
                .filter(|(_, &c)| c > 0)
                .map(|(w, &c)| (w, c)),
        )
        .expect("weights stay within the length")
    };
    let primal = to_dist(&primal_counts);
    let dual_true = to_dist(&dual_counts);
    match macwilliams(&primal, code.k as u32) {
        Ok(transformed) => {
            if transformed != dual_true {
                report.violations.push(format!(
                    "MacWilliams mismatch for [{},{}]: transform gives {transformed:?}, \
                     dual enumerates to {dual_true:?}",
                    code.n, code.k
                ));
            }
            match macwilliams(&transformed, (code.n - code.k) as u32) {
                Ok(back) if back == primal => {}
                Ok(back) => report.violations.push(format!(
                    "MacWilliams involution broken for [{},{}]: got {back:?}",
                    code.n, code.k
                )),
                Err(e) => report
                    .violations
                    .push(format!("MacWilliams inverse failed for [{},{}]: {e}", code.n, code.k)),
            }
        }
        Err(e) => report
            .violations
            .push(format!("MacWilliams failed for [{},{}]: {e}", code.n, code.k)),
    }
}

/// The gate must not contradict the observed profile of a code that
/// demonstrably exists, and the code's true count vector must be a feasible
/// point of the relaxation built from the fully pinned truth — every primal
/// and dual count fixed to its actual value.
fn check_gate(code: &BruteCode, dual_words: &[u64], report: &mut CensusReport) {
    report.profiles_gated += 1;
    let spec = code.spec();
    match feasibility_verdict(&spec, Mode::Full) {
        Ok(gate_report) => {
            if gate_report.verdict.is_contradiction() {
                report.violations.push(format!(
                    "the gate contradicts {spec}, which a real code matches: {}",
                    gate_report.verdict.headline()
                ));
            }
        }
        Err(e) => report
            .violations
            .push(format!("gate failed on {spec}: {e}")),
    }

    let counts = code.weight_counts();
    let mut pinned = spec;
    for (w, &count) in counts.iter().enumerate() {
        if w > 0 && count > 0 {
            pinned = pinned.with_fixed_count(w, Rat::from(count));
        }
    }
    let mut dual_counts = vec![0u64; code.n + 1];
    for &d in dual_words {
        dual_counts[d.count_ones() as usize] += 1;
    }
    for (m, &count) in dual_counts.iter().enumerate() {
        pinned = pinned.with_dual_fixed(m, Rat::from(count));
    }
    let point: Vec<Rat> = pinned
        .weights
        .iter()
        .map(|&j| Rat::from(counts[j]))
        .collect();
    match build_lp(&pinned, Mode::Full) {
        Ok(problem) => {
            if !verify_feasible_point(&problem, &point) {
                report.violations.push(format!(
                    "the true count vector of [{},{}] violates the pinned relaxation {pinned}",
                    code.n, code.k
                ));
            }
        }
        Err(e) => report
            .violations
            .push(format!("relaxation failed on the pinned {pinned}: {e}")),
    }
}

/// Wherever the residual reduction accepts a weight, the actual projection
/// away from any word of that weight must drop exactly one dimension and
/// stay inside the predicted weight set.
fn check_residuals(code: &BruteCode, words: &[u64], report: &mut CensusReport) {
    let spec = CodeSpec::new(code.n, code.k, code.observed_weights());
    for &w in &spec.weights.clone() {
        let residual = match residual_spec(&spec, w) {
            Ok(residual) => residual,
            Err(
                ReductionError::DimensionExhausted
                | ReductionError::LengthExhausted
                | ReductionError::SubwordSplit { .. }
                | ReductionError::EmptyResidual,
            ) => continue,
            Err(e) => {
                report
                    .violations
                    .push(format!("residual of {spec} at {w} failed: {e}"));
                continue;
            }
        };
        for &v in words.iter().filter(|&&v| v.count_ones() as usize == w) {
            report.residual_checks += 1;
            let outside = !v;
            let projected: Vec<u64> = code.generators().iter().map(|&g| g & outside).collect();
            let rank = rank_f2(&projected);
            if rank != code.k - 1 {
                report.violations.push(format!(
                    "projection of [{},{}] away from a weight-{w} word has rank {rank}, \
                     expected {}",
                    code.n,
                    code.k,
                    code.k - 1
                ));
            }
            for &word in words {
                let weight = (word & outside).count_ones() as usize;
                if weight != 0 && !residual.weights.contains(&weight) {
                    report.violations.push(format!(
                        "residual weight {weight} of [{},{}] at w={w} escapes the \
                         predicted set {:?}",
                        code.n, code.k, residual.weights
                    ));
                }
            }
        }
    }
}

/// Shortening on a low-weight dual word must leave at least the predicted
/// dimension and stay inside the predicted weight set.
fn check_shortenings(
    code: &BruteCode,
    words: &[u64],
    dual_words: &[u64],
    report: &mut CensusReport,
) {
    let spec = CodeSpec::new(code.n, code.k, code.observed_weights());
    for &d in dual_words
        .iter()
        .filter(|&&d| (1..=3).contains(&d.count_ones()))
    {
        let m = d.count_ones() as usize;
        let Ok(short) = dual_word_shorten(&spec, m) else {
            continue;
        };
        report.shorten_checks += 1;
        let vanishing: Vec<u64> = words.iter().copied().filter(|&w| w & d == 0).collect();
        // The vanishing words form a subgroup, so their count is a power of
        // two; its exponent is the subcode dimension.
        if !vanishing.len().is_power_of_two() {
            report.violations.push(format!(
                "vanishing set of [{},{}] under a weight-{m} dual word has size {}",
                code.n,
                code.k,
                vanishing.len()
            ));
            continue;
        }
        let dim = vanishing.len().trailing_zeros() as usize;
        if dim < short.k {
            report.violations.push(format!(
                "shortening [{},{}] on a weight-{m} dual word leaves dimension {dim}, \
                 predicted at least {}",
                code.n, code.k, short.k
            ));
        }
        for &w in vanishing.iter().filter(|&&w| w != 0) {
            let weight = w.count_ones() as usize;
            if !short.weights.contains(&weight) {
                report.violations.push(format!(
                    "shortened weight {weight} of [{},{}] escapes the predicted set {:?}",
                    code.n, code.k, short.weights
                ));
            }
        }
    }
}

/// Every pair of nonzero words must overlap in one of the predicted sizes.
fn check_pairs(code: &BruteCode, words: &[u64], report: &mut CensusReport) {
    let spec = CodeSpec::new(code.n, code.k, code.observed_weights());
    for &u in words.iter().filter(|&&u| u != 0) {
        for &v in words.iter().filter(|&&v| v != 0) {
            report.pair_checks += 1;
            let j1 = u.count_ones() as usize;
            let j2 = v.count_ones() as usize;
            let overlap = (u & v).count_ones() as usize;
            match pair_interaction(&spec, j1, j2) {
                Ok(allowed) if allowed.contains(&overlap) => {}
                Ok(allowed) => report.violations.push(format!(
                    "words of weights {j1}, {j2} in [{},{}] overlap in {overlap}, \
                     outside the predicted {allowed:?}",
                    code.n, code.k
                )),
                Err(e) => report
                    .violations
                    .push(format!("pair interaction failed on {spec}: {e}")),
            }
        }
    }
}

/// Adjoining the all-ones word must produce a code matching the predicted
/// spec, including the carried dual-count lower bound.
fn check_adjoin(code: &BruteCode, words: &[u64], dual_words: &[u64], report: &mut CensusReport) {
    let full = mask(code.n);
    let deuces = dual_words
        .iter()
        .filter(|&&d| d.count_ones() == 2)
        .count() as u64;
    let mut spec = CodeSpec::new(code.n, code.k, code.observed_weights());
    if deuces > 0 {
        spec = spec.with_dual_lower(2, Rat::from(deuces));
    }
    let Ok(extended) = adjoin_complement(&spec) else {
        return;
    };
    report.adjoin_checks += 1;

    let mut big: BTreeSet<u64> = words.iter().copied().collect();
    big.extend(words.iter().map(|&w| w ^ full));
    if big.len() != 2 << code.k {
        report.violations.push(format!(
            "adjoining the full-support word to [{},{}] gives {} words, expected 2^{}",
            code.n,
            code.k,
            big.len(),
            code.k + 1
        ));
        return;
    }
    for &w in big.iter().filter(|&&w| w != 0) {
        let weight = w.count_ones() as usize;
        if !extended.weights.contains(&weight) {
            report.violations.push(format!(
                "extended weight {weight} of [{},{}] escapes the predicted set {:?}",
                code.n, code.k, extended.weights
            ));
        }
    }
    for &w in &extended.forced {
        if !big.iter().any(|&b| b.count_ones() as usize == w) {
            report.violations.push(format!(
                "forced weight {w} of the extension of [{},{}] does not occur",
                code.n, code.k
            ));
        }
    }
    // Even-weight dual words survive the extension; the carried lower bound
    // must be met by the extension's actual dual.
    if let Some(bound) = extended.dual_lower.get(&2) {
        let surviving = dual_words
            .iter()
            .filter(|&&d| d.count_ones() == 2)
            .filter(|&&d| big.iter().all(|&b| (d & b).count_ones() % 2 == 0))
            .count() as u64;
        if Rat::from(surviving) < *bound {
            report.violations.push(format!(
                "only {surviving} deuces survive adjoining on [{},{}], bound was {bound}",
                code.n, code.k
            ));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn encoding_matches_hand_computation() {
        // [4, 2] with parity rows 11, 01: messages 01, 10, 11 encode to
        // 01|11, 10|01, 11|10 (identity bits low).
        let code = BruteCode::new(4, 2, vec![0b11, 0b01]);
        assert_eq!(code.encode(0b00), 0b0000);
        assert_eq!(code.encode(0b01), 0b1101);
        assert_eq!(code.encode(0b10), 0b0110);
        assert_eq!(code.encode(0b11), 0b1011);
        assert_eq!(code.observed_weights(), BTreeSet::from([2, 3]));
        assert_eq!(code.weight_counts(), vec![1, 0, 1, 2, 0]);
    }

    #[test]
    fn dual_words_are_orthogonal_and_complete() {
        let code = BruteCode::new(5, 2, vec![0b101, 0b011]);
        let duals = code.dual_words();
        assert_eq!(duals.len(), 8);
        let distinct: HashSet<u64> = duals.iter().copied().collect();
        assert_eq!(distinct.len(), 8);
        for d in duals {
            for w in code.words() {
                assert_eq!((d & w).count_ones() % 2, 0);
            }
        }
    }

    #[test]
    fn rank_of_bitmask_rows() {
        assert_eq!(rank_f2(&[]), 0);
        assert_eq!(rank_f2(&[0b1, 0b10, 0b11]), 2);
        assert_eq!(rank_f2(&[0b111, 0b011, 0b100]), 2);
        assert_eq!(rank_f2(&[0b1000, 0b0100, 0b0010, 0b0001]), 4);
    }

    #[test]
    fn tiny_census_is_clean() {
        let config = CensusConfig {
            max_n: 6,
            max_k: 2,
            samples: 25,
            sample_max_n: 8,
            sample_max_k: 3,
            seed: 7,
        };
        let report = run_census(&config);
        assert!(report.is_clean(), "{:#?}", report.violations);
        assert!(report.codes_enumerated > 0);
        assert_eq!(report.codes_sampled, 25);
        assert!(report.macwilliams_checks > 0);
        assert!(report.residual_checks > 0);
        assert!(report.pair_checks > 0);
    }
}
